#pragma once

#include <stdexcept>
#include <string>

namespace replimap {

// Error kinds map onto CLI exit codes: domain/precondition -> 1, convergence -> 2.
// Messages start with a stable token ("monotone-regime: ...") so callers and the
// CLI can name the violated condition without parsing prose.
class error : public std::runtime_error {
 public:
  enum class kind_t { domain, convergence };
  error(kind_t k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind_t kind() const noexcept { return kind_; }

 private:
  kind_t kind_;
};

class domain_error : public error {
 public:
  explicit domain_error(const std::string& msg) : error(kind_t::domain, msg) {}
};

class convergence_error : public error {
 public:
  explicit convergence_error(const std::string& msg) : error(kind_t::convergence, msg) {}
};

class monotone_regime_error : public domain_error {
 public:
  explicit monotone_regime_error(const std::string& detail)
      : domain_error("monotone-regime: " + detail) {}
};

class critical_point_singularity : public domain_error {
 public:
  explicit critical_point_singularity(const std::string& detail)
      : domain_error("critical-point-singularity: " + detail) {}
};

class precondition_failed : public domain_error {
 public:
  // token supplied by the caller, e.g. "eq9-inequality-1-failed, margin=-0.42"
  explicit precondition_failed(const std::string& msg) : domain_error(msg) {}
};

class certificate_required : public domain_error {
 public:
  explicit certificate_required(const std::string& detail)
      : domain_error("certificate-required: " + detail) {}
};

class escaped_set : public domain_error {
 public:
  explicit escaped_set(const std::string& detail) : domain_error("escaped-set: " + detail) {}
};

class not_periodic : public domain_error {
 public:
  explicit not_periodic(const std::string& detail) : domain_error("not-periodic: " + detail) {}
};

class not_close : public domain_error {
 public:
  explicit not_close(const std::string& detail) : domain_error("not-close: " + detail) {}
};

class domain_escape : public domain_error {
 public:
  explicit domain_escape(const std::string& detail) : domain_error("domain-escape: " + detail) {}
};

class not_found : public convergence_error {
 public:
  explicit not_found(const std::string& detail) : convergence_error("not-found: " + detail) {}
};

}  // namespace replimap
