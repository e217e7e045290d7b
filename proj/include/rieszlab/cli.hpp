#pragma once

// Batch front end: map-spec parsing, means tables, verification suites and
// report merging. Map specs and reports are JSON documents (docs/mapspec.md).

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rieszlab/error.hpp"
#include "rieszlab/hardy.hpp"
#include "rieszlab/maps.hpp"
#include "rieszlab/verify.hpp"

namespace rieszlab::cli {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Map specs

namespace detail {

inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidArgument(std::string("map spec: ") + what + " must be a number");
  return j.get<double>();
}

inline cplx complex_number(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument("map spec: complex numbers are [re, im] pairs");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline std::vector<cplx> complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string("map spec: ") + what + " must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& c : j) out.push_back(complex_number(c));
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("map spec: missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<int> powers(const json& j, int vars) {
  if (!j.is_array() || static_cast<int>(j.size()) != vars)
    throw InvalidArgument("map spec: 'powers' must list one exponent per variable");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InvalidArgument("map spec: exponents must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

inline HolomorphicPolynomial holomorphic(const json& j, int vars) {
  if (!j.is_array()) throw InvalidArgument("map spec: holomorphic polynomial must be an array of components");
  std::vector<std::vector<HolomorphicPolynomial::Term>> comps;
  for (const auto& comp : j) {
    comps.emplace_back();
    for (const auto& t : comp) comps.back().push_back({complex_number(field(t, "coef")), powers(field(t, "powers"), vars)});
  }
  return HolomorphicPolynomial(vars, comps);
}

inline RealPolynomial real_polynomial(const json& j) {
  const int vars = static_cast<int>(number(field(j, "vars"), "vars"));
  const json& cs = field(j, "components");
  if (!cs.is_array()) throw InvalidArgument("map spec: 'components' must be an array");
  std::vector<std::vector<RealPolynomial::Term>> comps;
  for (const auto& comp : cs) {
    comps.emplace_back();
    for (const auto& t : comp) comps.back().push_back({number(field(t, "coef"), "coef"), powers(field(t, "powers"), vars)});
  }
  return RealPolynomial(vars, comps);
}

inline Eigen::MatrixXd matrix_columns(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidArgument(std::string("map spec: ") + what + " must be a non-empty array");
  const std::size_t dim = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    if (!j[c].is_array() || j[c].size() != dim) throw InvalidArgument(std::string("map spec: ragged ") + what);
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = number(j[c][r], what);
  }
  return m;
}

inline BoundaryData boundary(const json& j) {
  if (j.contains("polynomial")) return boundary_from_polynomial(real_polynomial(j.at("polynomial")));
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    return boundary_from_grid(matrix_columns(field(g, "nodes"), "nodes"), matrix_columns(field(g, "values"), "values"));
  }
  throw InvalidArgument("map spec: boundary needs 'polynomial' or 'grid'");
}

}  // namespace detail

/// Builds a map from its JSON description; the "variant" tag selects the kind.
inline MapSpec parse_map_spec(const json& j) {
  using namespace detail;
  if (!j.is_object()) throw InvalidArgument("map spec: top level must be an object");
  const std::string v = field(j, "variant").get<std::string>();
  MapSpec map;
  if (v == "DiskAnalytic") {
    map = disk_analytic(complex_list(field(j, "coefficients"), "coefficients"));
  } else if (v == "PlanarHarmonic") {
    map = planar_harmonic(complex_list(field(j, "h"), "h"), complex_list(field(j, "g"), "g"));
  } else if (v == "PluriharmonicPair") {
    const int n = static_cast<int>(number(field(j, "n"), "n"));
    map = pluriharmonic_pair(holomorphic(field(j, "h"), n), holomorphic(field(j, "g"), n));
  } else if (v == "HarmonicExtension" || v == "InvariantHarmonicExtension") {
    const int level = j.contains("level") ? static_cast<int>(number(j.at("level"), "level")) : 2;
    const BoundaryData phi = boundary(field(j, "boundary"));
    map = v == "HarmonicExtension" ? poisson_extend(phi, level) : hyperbolic_poisson_extend(phi, level);
  } else if (v == "SharpnessExample") {
    map = sharpness_example(number(field(j, "K"), "K"));
  } else if (v == "ShearCounterexample") {
    map = shear_counterexample(number(field(j, "kappa"), "kappa"));
  } else if (v == "RealPolynomialMap") {
    map = real_polynomial_map(real_polynomial(j));
  } else {
    throw InvalidArgument("map spec: unknown variant '" + v + "'");
  }
  if (j.contains("scale")) map = scaled(map, number(j.at("scale"), "scale"));
  return map;
}

inline MapSpec load_map_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open map spec '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed map spec '" + path + "': " + e.what());
  }
  try {
    return parse_map_spec(j);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed map spec '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline json number_json(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

inline double json_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline json to_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json results = json::object();
  for (const auto& [k, v] : r.results) results[k] = v;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"label", row.label},
                    {"lhs", number_json(row.lhs)},
                    {"rhs", number_json(row.rhs)},
                    {"margin", number_json(row.margin)},
                    {"err", number_json(row.err)},
                    {"verdict", verdict_name(row.verdict)}});
  return {{"check", r.check_name}, {"params", params}, {"results", results}, {"lhs", number_json(r.lhs)},
          {"rhs", number_json(r.rhs)}, {"margin", number_json(r.margin)}, {"err", number_json(r.err)},
          {"verdict", verdict_name(r.verdict)}, {"note", r.note},  {"rows", rows}};
}

/// Record key: check name plus its parameters in order.
inline std::string record_key(const json& record) {
  std::string key = record.at("check").get<std::string>();
  for (const auto& [k, v] : record.at("params").items()) key += ";" + k + "=" + v.get<std::string>();
  return key;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* summary_header = "section,key,lhs,rhs,margin,err,verdict";

inline std::string summary_line(const std::string& section, const json& record) {
  std::string line = csv_field(section) + "," + csv_field(record_key(record));
  for (const char* k : {"lhs", "rhs", "margin", "err"}) line += "," + num(json_number(record.at(k)));
  return line + "," + record.at("verdict").get<std::string>();
}

// ---------------------------------------------------------------------------
// Output

inline std::string timestamp_line() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Writes `content` to `path` via a temporary file and a rename.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw InvalidArgument("cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_atomic(path, content);
  }
}

// ---------------------------------------------------------------------------
// Commands

struct SuiteConfig {
  std::string suite;
  std::string map_path;
  std::vector<double> p;
  std::vector<double> r;
  std::vector<double> K;
  std::vector<double> kappa;
  int coordinate = 0;  // 1-based; 0 selects the whole map
  int level = 0;
  std::string seed = "0x5EED";
  std::string out;
  double tolerance = 0.0;
  std::string timestamp = "on";
};

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("invalid seed '" + s + "'");
  }
}

inline void validate(const SuiteConfig& c) {
  for (double p : c.p)
    if (!(p > 0.0)) throw InvalidArgument("--p values must be positive");
  for (double r : c.r)
    if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("--r values must lie in [0, 1)");
  if (c.level < 0) throw InvalidArgument("--level must be non-negative");
  if (c.timestamp != "on" && c.timestamp != "off") throw InvalidArgument("--timestamp takes on or off");
}

inline int cmd_means(const SuiteConfig& c, std::ostream& out) {
  validate(c);
  if (c.map_path.empty()) throw InvalidArgument("means: --map is required");
  const MapSpec map = load_map_spec(c.map_path);
  const auto ps = c.p.empty() ? std::vector<double>{2.0} : c.p;
  const auto rs = c.r.empty() ? default_r_grid() : c.r;
  const SphereRule rule = c.level > 0 ? sphere_rule(domain_dim(map), c.level) : default_sphere_rule(map);
  if (c.coordinate < 0 || c.coordinate > codomain_dim(map)) throw InvalidArgument("--coordinate out of range");
  const Selection sel = c.coordinate > 0 ? Selection::coordinate(c.coordinate - 1) : Selection::whole();
  MeanOptions opts;
  if (c.tolerance > 0.0) opts.tol = c.tolerance;
  std::string content;
  if (c.timestamp == "on") content += "# generated " + timestamp_line() + "\n";
  content += means_table(map, rs, ps, rule, sel, opts).to_csv();
  emit(c.out, content, out);
  return 0;
}

namespace detail {

inline std::vector<VerificationReport> single_map_suite(const SuiteConfig& c, const MapSpec& map) {
  const auto rs = c.r.empty() ? default_r_grid() : c.r;
  const int k = c.coordinate > 0 ? c.coordinate - 1 : 0;
  CheckOptions opt;
  if (c.tolerance > 0.0) opt.mean_tol = c.tolerance;
  std::vector<VerificationReport> out;
  if (c.suite == "cor_1_2") {
    const auto ps = c.p.empty() ? std::vector<double>{1.25, 1.5, 2.0} : c.p;
    const auto radii = c.r.empty() ? std::vector<double>{0.5, 0.9, 0.99} : c.r;
    for (double p : ps)
      if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("cor_1_2: p must lie in (1, 2]");
    const EmpiricalDilatation khat = empirical_dilatation(map);
    for (double p : ps)
      for (double r : radii) out.push_back(check_cor_1_2(map, k, p, r, khat, opt));
  } else if (c.suite == "thm_1_3") {
    const auto ps = c.p.empty() ? std::vector<double>{1.5, 2.0} : c.p;
    out = check_thm_1_3_B1(map, k, ps, rs, empirical_dilatation(map), opt);
  } else if (c.suite == "thm_1_5") {
    const auto ps = c.p.empty() ? std::vector<double>{1.5, 2.0} : c.p;
    const auto kappas = c.kappa.empty() ? std::vector<double>{0.0} : c.kappa;
    for (double kappa : kappas)
      for (double p : ps) out.push_back(check_thm_1_5(map, p, rs, kappa, opt));
  } else if (c.suite == "heinz") {
    out.push_back(check_heinz_class(map, interior_sample(domain_dim(map), 50, 0.9)));
  } else if (c.suite == "green_identities") {
    const auto ps = c.p.empty() ? std::vector<double>{1.5, 2.0, 3.0} : c.p;
    const auto radii = c.r.empty() ? std::vector<double>{0.3, 0.7} : c.r;
    for (double p : ps)
      for (double r : radii) out.push_back(check_green_euclidean(map, r, p));
  } else if (c.suite == "norms") {
    const auto ps = c.p.empty() ? std::vector<double>{3.0} : c.p;
    for (double p : ps) out.push_back(check_boundedness(map, k, p, rs, opt));
  } else {
    throw InvalidArgument("suite '" + c.suite + "' does not take --map");
  }
  return out;
}

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::fail:
      return 1;
    case Verdict::inconclusive:
      return 3;
    default:
      return 0;
  }
}

}  // namespace detail

/// Runs a suite, prints one line per record and writes the JSON report to --out.
inline int cmd_verify(const SuiteConfig& c, std::ostream& out) {
  validate(c);
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end())
    throw InvalidArgument("unknown suite '" + c.suite + "'");
  std::vector<VerificationReport> reports;
  if (!c.map_path.empty()) {
    reports = detail::single_map_suite(c, load_map_spec(c.map_path));
  } else {
    SuiteParams sp;
    sp.seed = parse_seed(c.seed);
    sp.p = c.p;
    sp.r = c.r;
    sp.K = c.K;
    sp.kappa = c.kappa;
    reports = run_suite(c.suite, sp);
  }
  json doc = json::object();
  if (c.timestamp == "on") doc["generated"] = timestamp_line();
  doc["suite"] = c.suite;
  doc["seed"] = c.seed;
  doc["records"] = json::array();
  for (const auto& r : reports) doc["records"].push_back(to_json(r));
  const Verdict v = worst_verdict(reports);
  doc["verdict"] = verdict_name(v);

  std::ostringstream summary;
  summary << summary_header << "\n";
  for (const auto& record : doc["records"]) summary << summary_line(c.suite, record) << "\n";
  if (c.out.empty() || c.out == "-") {
    out << doc.dump(2) << "\n";
  } else {
    write_atomic(c.out, doc.dump(2) + "\n");
    out << summary.str();
  }
  return detail::exit_code(v);
}

/// Merges report documents into one CSV with a section column per suite.
inline int cmd_report(const std::vector<std::string>& inputs, const std::string& out_path, std::ostream& out) {
  std::set<std::string> seen;
  std::string content = std::string(summary_header) + "\n";
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open report '" + path + "'");
    json doc;
    try {
      doc = json::parse(in);
      const std::string section = doc.at("suite").get<std::string>();
      for (const auto& record : doc.at("records")) {
        const std::string key = section + "\n" + record_key(record);
        if (!seen.insert(key).second)
          throw InvalidArgument("duplicate record '" + record_key(record) + "' in section " + section);
        content += summary_line(section, record) + "\n";
      }
    } catch (const json::exception& e) {
      throw InvalidArgument("malformed report '" + path + "': " + e.what());
    }
  }
  emit(out_path, content, out);
  return 0;
}

namespace detail {

inline std::vector<double> split_numbers(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument(std::string(flag) + ": not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Numerical checks for Riesz-type conjugate inequalities"};
  app.require_subcommand(1);
  SuiteConfig c;
  std::string p, r, K, kappa;
  std::vector<std::string> inputs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "comma-separated exponents");
    sub->add_option("--r", r, "comma-separated radii");
    sub->add_option("--level", c.level, "sphere rule level");
    sub->add_option("--out", c.out, "output path (default: standard output)");
    sub->add_option("--tolerance", c.tolerance, "relative tolerance for integral means");
    sub->add_option("--timestamp", c.timestamp, "on|off");
  };
  CLI::App* means = app.add_subcommand("means", "integral means table as CSV");
  means->add_option("--map", c.map_path, "map spec file")->required();
  means->add_option("--coordinate", c.coordinate, "1-based component (default: whole map)");
  add_common(means);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", c.suite, "suite name")->required();
  verify->add_option("--map", c.map_path, "map spec file (single-map suites)");
  verify->add_option("--coordinate", c.coordinate, "1-based component");
  verify->add_option("--K", K, "comma-separated dilatations");
  verify->add_option("--kappa", kappa, "comma-separated second dilatations");
  verify->add_option("--seed", c.seed, "RNG seed");
  add_common(verify);

  CLI::App* report = app.add_subcommand("report", "merge report documents into a CSV summary");
  report->add_option("inputs", inputs, "report documents");
  report->add_option("--out", c.out, "output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    c.p = detail::split_numbers(p, "--p");
    c.r = detail::split_numbers(r, "--r");
    c.K = detail::split_numbers(K, "--K");
    c.kappa = detail::split_numbers(kappa, "--kappa");
    if (means->parsed()) return cmd_means(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    return cmd_report(inputs, c.out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rieszlab::cli
