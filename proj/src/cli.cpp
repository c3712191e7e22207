#include "replimap/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "replimap/conjugacy.hpp"
#include "replimap/emit.hpp"
#include "replimap/errors.hpp"
#include "replimap/horseshoe.hpp"
#include "replimap/map_core.hpp"
#include "replimap/meanclass.hpp"
#include "replimap/orbits.hpp"

namespace replimap {
namespace {

double parse_double_strict(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw domain_error("invalid-number: '" + text + "'");
  return v;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string config_line(const RunConfig& c) {
  std::string s;
  s += "command=" + c.command;
  s += " a=" + format_double(c.a);
  s += " b=" + format_double(c.b);
  s += " x0=" + format_double(c.x0);
  s += " y=" + format_double(c.y);
  s += " n=" + std::to_string(c.n);
  s += " grid=" + std::to_string(c.grid);
  s += " transient=" + std::to_string(c.transient);
  s += " max-period=" + std::to_string(c.max_period);
  s += " depth=" + std::to_string(c.depth);
  s += " steps=" + std::to_string(c.steps);
  s += " samples=" + std::to_string(c.samples);
  s += " a-lo=" + format_double(c.a_lo);
  s += " a-hi=" + format_double(c.a_hi);
  s += " word=" + c.word;
  s += " family=" + c.family;
  s += " format=" + c.format;
  s += " out=" + (c.out.empty() ? std::string("-") : c.out);
  return s;
}

int checked_int(long v, const char* what) {
  if (v < 0 || v > 1000000000L)
    throw domain_error("invalid-count: " + std::string(what) + "=" + std::to_string(v) +
                       " out of range");
  return static_cast<int>(v);
}

void orbit_rows(CsvDoc& doc, const std::vector<PeriodicOrbit>& orbits) {
  doc.header = {"orbit", "period", "x", "multiplier", "mean", "stability"};
  for (size_t i = 0; i < orbits.size(); ++i) {
    const PeriodicOrbit& o = orbits[i];
    for (double x : o.points)
      doc.rows.push_back({std::to_string(i), std::to_string(o.period), format_double(x),
                          format_double(o.multiplier), format_double(o.mean),
                          to_string(o.stability)});
  }
}

CsvDoc build_doc(const RunConfig& cfg) {
  CsvDoc doc;
  doc.config = config_line(cfg);
  // replicator commands validate (a,b) here; family/scan commands have their
  // own parameter semantics and validate downstream
  auto params = [&cfg]() { return Params(cfg.a, cfg.b); };

  if (cfg.command == "iterate") {
    doc.header = {"k", "x"};
    std::vector<double> xs = iterate(params(), cfg.x0, cfg.n);
    for (size_t k = 0; k < xs.size(); ++k)
      doc.rows.push_back({std::to_string(k), format_double(xs[k])});
  } else if (cfg.command == "fixed-points") {
    doc.header = {"x", "multiplier", "stability"};
    for (const FixedPointReport& r : fixed_points(params()))
      doc.rows.push_back(
          {format_double(r.location), format_double(r.multiplier), to_string(r.classification)});
  } else if (cfg.command == "critical-points") {
    doc.header = {"point", "x", "f_x"};
    CriticalPoints c = critical_points(params());
    doc.rows.push_back({"max", format_double(c.x_max), format_double(c.f_max)});
    doc.rows.push_back({"min", format_double(c.x_min), format_double(c.f_min)});
  } else if (cfg.command == "orbits") {
    orbit_rows(doc, find_periodic_orbits(params(), checked_int(cfg.n, "n"), cfg.grid));
  } else if (cfg.command == "period2") {
    orbit_rows(doc, {period2_orbit(params())});
  } else if (cfg.command == "attractors") {
    doc.header = {"orbit", "period", "aperiodic", "x", "multiplier", "mean", "lyapunov"};
    std::vector<PeriodicOrbit> orbits =
        attractors_from_critical_orbits(params(), cfg.transient, cfg.max_period);
    for (size_t i = 0; i < orbits.size(); ++i) {
      const PeriodicOrbit& o = orbits[i];
      for (double x : o.points)
        doc.rows.push_back({std::to_string(i), std::to_string(o.period),
                            o.aperiodic ? "true" : "false", format_double(x),
                            format_double(o.multiplier), format_double(o.mean),
                            format_double(o.lyapunov)});
    }
  } else if (cfg.command == "bifurcation") {
    doc.header = {"a", "branch", "x", "period", "lyapunov"};
    std::vector<BifurcationSample> scan = bifurcation_scan(
        cfg.b, cfg.a_lo, cfg.a_hi, cfg.steps, cfg.samples, cfg.transient, cfg.max_period);
    for (const BifurcationSample& s : scan)
      for (double x : s.attractor_points)
        doc.rows.push_back({format_double(s.a), std::to_string(s.branch), format_double(x),
                            std::to_string(s.detected_period), format_double(s.lyapunov)});
  } else if (cfg.command == "lyapunov") {
    doc.header = {"a", "b", "x0", "n", "lyapunov"};
    double le = lyapunov_exponent(params(), cfg.x0, cfg.n, cfg.transient);
    doc.rows.push_back({format_double(cfg.a), format_double(cfg.b), format_double(cfg.x0),
                        std::to_string(cfg.n), format_double(le)});
  } else if (cfg.command == "cylinders") {
    doc.header = {"word", "lo", "hi"};
    for (const CylinderInterval& c : cylinder_intervals(params(), cfg.depth))
      doc.rows.push_back({c.word.symbols, format_double(c.lo), format_double(c.hi)});
  } else if (cfg.command == "itinerary") {
    doc.header = {"word", "y", "x"};
    if (cfg.word.empty()) throw domain_error("invalid-word: --word is required");
    double y = point_from_itinerary(params(), ItineraryWord{cfg.word, true});
    doc.rows.push_back({cfg.word, format_double(y), format_double(h_inv(y))});
  } else if (cfg.command == "code") {
    doc.header = {"y", "n", "word"};
    ItineraryWord w = code_orbit(params(), cfg.y, checked_int(cfg.n, "n"));
    doc.rows.push_back({format_double(cfg.y), std::to_string(cfg.n), w.symbols});
  } else if (cfg.command == "mean-check") {
    doc.header = {"orbit", "period", "x", "mean", "deviation"};
    MeanMapSpec spec = make_builtin(cfg.family, cfg.a, cfg.b);
    Map1D m = make_map_from_H(spec);
    size_t id = 0;
    for (int n = 1; n <= checked_int(cfg.n, "n"); ++n) {
      for (const PeriodicOrbit& o : find_periodic_orbits_map(m, n, cfg.grid)) {
        double dev = orbit_mean_check(spec, o);
        for (double x : o.points)
          doc.rows.push_back({std::to_string(id), std::to_string(o.period), format_double(x),
                              format_double(o.mean), format_double(dev)});
        ++id;
      }
    }
  } else if (cfg.command == "cohomology") {
    doc.header = {"family", "a", "b", "grid", "residual"};
    MeanMapSpec spec = make_builtin(cfg.family, cfg.a, cfg.b);
    long grid = cfg.grid > 0 ? cfg.grid : 10000;
    double r = verify_cohomology(spec, grid);
    doc.rows.push_back({cfg.family, format_double(cfg.a), format_double(cfg.b),
                        std::to_string(grid), format_double(r)});
  } else {
    throw domain_error("invalid-command: '" + cfg.command + "'");
  }
  return doc;
}

std::string render(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw domain_error("invalid-format: '" + cfg.format + "' (expected csv or json)");

  if (cfg.command == "certify") {
    Params p(cfg.a, cfg.b);
    HorseshoeCertificate cert = certify(p);
    if (cfg.format == "json") return certificate_json(cert);
    CsvDoc doc;
    doc.config = config_line(cfg);
    doc.header = {"a",        "b",        "y_max",   "y_min",   "g_min",     "g_max",
                  "y1_minus", "y1_plus",  "y2_minus", "y2_plus", "margin1",   "margin2",
                  "margin3",  "expansion", "valid",   "reflected", "first_failing"};
    doc.rows.push_back({format_double(cert.params.a), format_double(cert.params.b),
                        format_double(cert.y_max), format_double(cert.y_min),
                        format_double(cert.g_min), format_double(cert.g_max),
                        format_double(cert.y1_minus), format_double(cert.y1_plus),
                        format_double(cert.y2_minus), format_double(cert.y2_plus),
                        format_double(cert.margin1), format_double(cert.margin2),
                        format_double(cert.margin3), format_double(cert.expansion),
                        cert.valid ? "true" : "false", cert.reflected ? "true" : "false",
                        csv_escape(cert.first_failing)});
    return doc.str();
  }

  CsvDoc doc = build_doc(cfg);
  if (cfg.format == "csv") {
    for (auto& row : doc.rows)
      for (auto& cell : row) cell = csv_escape(cell);
    return doc.str();
  }
  nlohmann::ordered_json j;
  j["config"] = doc.config;
  j["header"] = doc.header;
  j["rows"] = doc.rows;
  return j.dump(2) + "\n";
}

}  // namespace

double parse_real_or_ratio(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_double_strict(text);
  double num = parse_double_strict(text.substr(0, slash));
  double den = parse_double_strict(text.substr(slash + 1));
  if (den == 0.0) throw domain_error("invalid-number: '" + text + "' divides by zero");
  return num / den;  // one correctly-rounded division
}

int run(const RunConfig& cfg, std::ostream& doc, std::ostream& diag) {
  try {
    doc << render(cfg);
    return 0;
  } catch (const error& e) {
    diag << e.what() << "\n";
    return e.kind() == error::kind_t::convergence ? 2 : 1;
  } catch (const std::exception& e) {
    diag << "internal-error: " << e.what() << "\n";
    return 2;
  }
}

int run_to_destination(const RunConfig& cfg) {
  if (cfg.out.empty()) return run(cfg, std::cout, std::cerr);
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    std::cerr << "io-error: cannot open '" << cfg.out << "' for writing\n";
    return 1;
  }
  int rc = run(cfg, f, std::cerr);
  f.flush();
  if (!f) {
    std::cerr << "io-error: write failed for '" << cfg.out << "'\n";
    return rc == 0 ? 1 : rc;
  }
  return rc;
}

}  // namespace replimap
