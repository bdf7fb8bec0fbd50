#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <new>
#include <ostream>
#include <sstream>

#include "dioph/arith.hpp"
#include "dioph/error.hpp"
#include "dioph/experiment.hpp"
#include "dioph/fourier.hpp"
#include "dioph/realnum.hpp"
#include "dioph/report.hpp"
#include "dioph/vaughan.hpp"

namespace dioph::cli {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--" + key + ": expected an integer, got '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("--" + key + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--" + key + ": expected a number, got '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("--" + key + ": expected a number, got '" + text + "'");
  return v;
}

// Largest n for which alpha * n stays inside the table.
std::int64_t table_limit(double scale, std::int64_t n) {
  const double need = std::ceil(std::max(scale, 1.0) * static_cast<double>(n)) + 2.0;
  if (need > 9e15) throw ResourceError("arithmetic table size overflows");
  return static_cast<std::int64_t>(need);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

const char* kUsage =
    "usage: dioph-lab <subcommand> [options]\n"
    "subcommands:\n"
    "  search         count prime-constrained tuples for one alpha\n"
    "  integrate      exact integral of F_N against G_N over an N grid\n"
    "  upper          K estimate and V_N / G_N over sampled alpha\n"
    "  audit          exponential-sum bound audit at window base P\n"
    "  sieve-side     sieve-side counts and averaged error terms\n"
    "  vaaler-check   Vaaler majorant check on a grid\n"
    "  vaughan-check  Vaughan identity and |b(l)| <= d(l)\n"
    "  dioph-certify  finite-range Diophantine certificate for c\n"
    "common options: --config FILE --d --c --k --eps --A --B\n";

struct Spec {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<std::string> kInstance{"d", "c", "k", "eps", "A", "B"};

std::vector<Spec> specs() {
  auto with_instance = [](std::vector<std::string> keys) {
    keys.insert(keys.begin(), kInstance.begin(), kInstance.end());
    return keys;
  };
  return {
      {"search", "count tuples for one alpha", with_instance({"alpha", "N", "out"})},
      {"integrate", "exact integral over an N grid",
       with_instance({"a", "b", "N-grid", "grid-lo", "grid-hi", "out"})},
      {"upper", "K estimate and V_N",
       with_instance({"N-grid", "grid-lo", "grid-hi", "samples", "seed", "max-terms", "out"})},
      {"audit", "bound audit", with_instance({"P", "J", "u", "max-terms", "out"})},
      {"sieve-side", "sieve-side counts",
       with_instance({"alpha", "N-grid", "grid-lo", "grid-hi", "Q", "samples", "max-terms", "out"})},
      {"vaaler-check", "Vaaler majorant check", {"J", "points"}},
      {"vaughan-check", "Vaughan identity check", {"n-max", "uv", "b-max"}},
      {"dioph-certify", "Diophantine certificate", {"c", "k", "Nbound", "method", "max-terms"}},
  };
}

std::vector<std::int64_t> n_grid(const RunConfig& cfg, int lo_default, int hi_default) {
  if (cfg.has("N-grid")) return cfg.get_int_list("N-grid");
  const std::int64_t lo = cfg.get_int("grid-lo", lo_default);
  const std::int64_t hi = cfg.get_int("grid-hi", hi_default);
  if (lo < 0 || hi < lo || hi > 40) throw ConfigError("grid exponents need 0 <= grid-lo <= grid-hi <= 40");
  return geometric_grid(2, static_cast<int>(lo), static_cast<int>(hi));
}

void emit(const RunConfig& cfg, const std::string& fallback, const CsvTable& table,
          std::ostream& out) {
  const std::string path = cfg.get("out", fallback);
  write_csv(path, table, cfg.hash());
  out << fmt::format("wrote {} ({} rows)\n", path, table.rows.size());
}

int run_search(const RunConfig& cfg, std::ostream& out) {
  const ApproxConfig inst = cfg.instance();
  const FixedReal alpha = cfg.get_real("alpha", "sqrt3");
  const std::int64_t N = cfg.get_int("N", 100000);
  if (N < 1) throw ConfigError("--N must be positive");
  if (alpha.is_negative() || alpha.is_zero()) throw ConfigError("--alpha must be positive");
  const ArithTable table = ArithTable::build(table_limit(alpha.to_double(), N));
  const CountResult result = count_FN(alpha, inst, N, table);
  out << fmt::format("F_N = {} for N = {}\n", result.count, N);
  emit(cfg, "tuples.csv", tuples_csv(result, inst.d()), out);
  bool ok = true;
  for (const SolutionTuple& s : result.tuples) {
    const double radius = inst.radius(static_cast<double>(s.p));
    ok = ok && table.is_prime(s.p) && table.is_prime(s.r);
    ok = ok && !s.slack0.is_negative() && !s.slack0.is_zero() && s.slack0.less_than(radius);
    for (const FixedReal& x : s.slack) {
      ok = ok && !x.is_negative() && !x.is_zero() && x.less_than(radius);
    }
  }
  if (!ok) out << "invariant violation: a reported tuple fails its defining inequalities\n";
  return ok ? 0 : 1;
}

int run_integrate(const RunConfig& cfg, std::ostream& out) {
  const ApproxConfig inst = cfg.instance();
  const FixedReal a = cfg.has("a") ? cfg.get_real("a", "") : inst.A;
  const FixedReal b = cfg.has("b") ? cfg.get_real("b", "") : inst.B;
  if (!(inst.A <= a && a < b && b <= inst.B)) throw ConfigError("need A <= a < b <= B");
  const auto grid = n_grid(cfg, 10, 20);
  const ArithTable table = ArithTable::build(table_limit(b.to_double(), grid.back()));
  const TheoremIReport report = theorem_i_check(a, b, grid, inst, table);
  bool ok = true;
  long double previous = 0.0L;
  for (const TheoremIRow& row : report.rows) {
    out << fmt::format("N={:<10} integral={:.12g} G_N={:.6g} ratio={:.6f}\n", row.N,
                       static_cast<double>(row.integral), row.G_N, row.ratio);
    ok = ok && row.integral >= previous && finite_nonneg(row.ratio);
    previous = row.integral;
  }
  out << fmt::format("top-half trend nondecreasing: {}\n",
                     report.top_half_nondecreasing ? "yes" : "no");
  emit(cfg, "theorem_i.csv", theorem_i_csv(report), out);
  if (!ok) out << "invariant violation: integral not monotone in N or ratio not finite\n";
  return ok ? 0 : 1;
}

int run_upper(const RunConfig& cfg, std::ostream& out) {
  const ApproxConfig inst = cfg.instance();
  const auto grid = n_grid(cfg, 10, 16);
  SieveOptions options;
  options.max_terms = cfg.get_double("max-terms", options.max_terms);
  const ArithTable table = ArithTable::build(table_limit(inst.B.to_double(), grid.back()));
  const TheoremIIReport report =
      theorem_ii_check(grid, inst, cfg.get_int("samples", 64),
                       static_cast<std::uint64_t>(cfg.get_int("seed", 1)), table, options);
  CsvTable t;
  t.header = {"N", "G_N", "K_est", "V_N", "V_over_G", "mean_F"};
  bool ok = true;
  for (const TheoremIIRow& r : report.rows) {
    out << fmt::format("N={:<10} G_N={:.6g} K_est={:.6g} V_N={:.6g} V/G={:.6g}\n", r.N, r.G_N,
                       r.K_est, r.V_N, r.V_over_G);
    t.rows.push_back({std::to_string(r.N), format_double(r.G_N), format_double(r.K_est),
                      format_double(r.V_N), format_double(r.V_over_G), format_double(r.mean_F)});
    ok = ok && finite_nonneg(r.K_est) && finite_nonneg(r.V_N);
  }
  out << fmt::format("K_est = {:.6g}; V_N/G_N decreasing over top half: {}\n", report.K_est,
                     report.top_half_V_over_G_decreasing ? "yes" : "no");
  emit(cfg, "upper.csv", t, out);
  return ok ? 0 : 1;
}

int run_audit(const RunConfig& cfg, std::ostream& out) {
  const ApproxConfig inst = cfg.instance();
  const std::vector<std::int64_t> Ps =
      cfg.has("P") ? cfg.get_int_list("P") : std::vector<std::int64_t>{1024, 8192, 65536};
  AuditOptions options;
  if (cfg.has("J")) options.J = cfg.get_int("J", 1);
  if (cfg.has("u")) options.u = cfg.get_double("u", 1.0);
  options.max_terms = cfg.get_double("max-terms", options.max_terms);
  const std::int64_t Pmax = *std::max_element(Ps.begin(), Ps.end());
  if (*std::min_element(Ps.begin(), Ps.end()) < 2) throw ConfigError("--P values must be >= 2");
  const ArithTable table = ArithTable::build(table_limit(inst.B.to_double(), Pmax));
  std::vector<AuditRow> all;
  bool ok = true;
  for (std::int64_t P : Ps) {
    for (AuditRow& row : bound_audit(P, inst, table, options)) {
      out << fmt::format("P={:<8} {:<16} exact={:<14.6g} bound={:<14.6g} ratio={:.6g}\n", P,
                         row.label, row.exact, row.bound, row.ratio);
      ok = ok && finite_nonneg(row.ratio) && row.bound > 0.0;
      all.push_back(std::move(row));
    }
  }
  emit(cfg, "audit.csv", audit_csv(all), out);
  if (!ok) out << "invariant violation: non-finite or non-positive bound\n";
  return ok ? 0 : 1;
}

int run_sieve_side(const RunConfig& cfg, std::ostream& out) {
  const ApproxConfig inst = cfg.instance();
  const auto grid = n_grid(cfg, 10, 14);
  const FixedReal alpha = cfg.get_real("alpha", "sqrt3");
  SieveOptions options;
  options.max_terms = cfg.get_double("max-terms", options.max_terms);
  std::vector<SieveRow> rows;
  bool ok = true;
  for (std::int64_t N : grid) {
    SieveSideParams sp = SieveSideParams::make(N, inst);
    if (cfg.has("Q")) sp.Q = cfg.get_double("Q", sp.Q);
    for (const auto& [t1, t2] : divisor_pairs(sp.Q)) {
      sp.t1 = t1;
      sp.t2 = t2;
      const SieveSideCounts c = sieve_side_counts(alpha, sp, inst, options);
      ok = ok && c.S_exact >= 0 && finite_nonneg(c.E_bound);
      rows.push_back({N, t1, t2, c});
    }
  }
  for (const AverageERow& r :
       average_E_check(grid, inst, cfg.get_int("samples", 16), options)) {
    out << fmt::format("N={:<10} average E lhs={:.6g} target={:.6g} ratio={:.6g}\n", r.N, r.lhs,
                       r.target, r.ratio);
    ok = ok && finite_nonneg(r.lhs);
  }
  emit(cfg, "sieve.csv", sieve_csv(rows), out);
  return ok ? 0 : 1;
}

int run_vaaler(const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::int64_t> Js =
      cfg.has("J") ? cfg.get_int_list("J") : std::vector<std::int64_t>{1, 5, 10, 50};
  const std::int64_t points = cfg.get_int("points", 10000);
  if (points < 1) throw ConfigError("--points must be positive");
  const double slack = std::ldexp(1.0, -40);
  bool ok = true;
  for (std::int64_t J : Js) {
    if (J < 1 || J > std::numeric_limits<int>::max()) throw ConfigError("--J must be positive");
    const VaalerPolynomial poly(static_cast<int>(J));
    double min_tau = std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < points; ++j) {
      const Phase x = phase_of(FixedReal::from_ratio(2 * j + 1, 2 * points));
      const PsiTau e = poly.evaluate(x);
      min_tau = std::min(min_tau, e.tau);
      worst = std::max(worst, std::fabs(e.psi_star - sawtooth_psi_phase(x)) - e.tau);
    }
    const bool pass = min_tau >= -slack && worst <= slack;
    ok = ok && pass;
    out << fmt::format("J={:<4} min tau={:.3e} max(|psi*-psi|-tau)={:.3e} {}\n", J, min_tau, worst,
                       pass ? "ok" : "VIOLATED");
  }
  return ok ? 0 : 1;
}

int run_vaughan(const RunConfig& cfg, std::ostream& out) {
  const std::int64_t n_max = cfg.get_int("n-max", 10000);
  const std::int64_t b_max = cfg.get_int("b-max", 100000);
  if (n_max < 1 || b_max < 1) throw ConfigError("--n-max and --b-max must be positive");
  std::vector<std::pair<double, double>> pairs;
  for (const std::string& item : split(cfg.get("uv", "5:5,10:10,31:31"), ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError("--uv expects entries u:v");
    pairs.emplace_back(parse_double("uv", parts[0]), parse_double("uv", parts[1]));
  }
  const ArithTable table = ArithTable::build(std::max(n_max, b_max));
  bool ok = true;
  for (const auto& [u, v] : pairs) {
    if (!(u >= 1.0 && v >= 1.0)) throw ConfigError("--uv needs u, v >= 1");
    double worst = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const VaughanTerms t = vaughan_decompose(table, n, {u, v, static_cast<double>(n_max)});
      worst = std::max(worst, std::fabs(t.sum() - table.von_mangoldt(n)));
    }
    ok = ok && worst <= 1e-9;
    out << fmt::format("u={} v={} max |a1+a2+a3+a4-Lambda| = {:.3e}\n", u, v, worst);
  }
  for (const auto& [u, v] : pairs) {
    (void)u;
    const std::vector<int> b = b_coeff_table(table, b_max, v);
    std::int64_t bad = 0;
    for (std::int64_t l = 1; l <= b_max; ++l) {
      if (std::abs(b[l]) > table.divisor_count(l)) ++bad;
    }
    ok = ok && bad == 0;
    out << fmt::format("v={} l<={}: {} violations of |b(l)| <= d(l)\n", v, b_max, bad);
  }
  return ok ? 0 : 1;
}

int run_certify(const RunConfig& cfg, std::ostream& out) {
  std::vector<FixedReal> c;
  for (const std::string& item : split(cfg.get("c", "sqrt2,sqrt3"), ',')) {
    c.push_back(FixedReal::parse(item));
  }
  const double k = cfg.get_double("k", static_cast<double>(c.size()));
  const CVector vec = CVector::make(std::move(c), k);
  const std::int64_t n_bound = cfg.get_int("Nbound", 50);
  if (n_bound < 1) throw ConfigError("--Nbound must be positive");
  CertifyOptions options;
  options.max_vectors = cfg.get_double("max-terms", options.max_vectors);
  const std::string method = cfg.get("method", "sorted");
  DiophCertificate cert;
  if (method == "sorted") {
    cert = dioph_certify_sorted(vec, n_bound, options);
  } else if (method == "exhaustive") {
    cert = dioph_certify(vec, n_bound, options);
  } else {
    throw ConfigError("--method must be 'sorted' or 'exhaustive'");
  }
  std::string v;
  for (std::size_t i = 0; i < cert.v_min.size(); ++i) {
    v += (i ? "," : "") + std::to_string(cert.v_min[i]);
  }
  out << fmt::format("C_est = {:.12g}\nv_min = ({})\n", cert.c_est, v);
  out << fmt::format("min ||v.c|| = {:.12g}\n", cert.plain_min);
  return cert.c_est > 0.0 ? 0 : 1;
}

}  // namespace

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? parse_int(key, values.at(key)) : fallback;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_double(key, values.at(key)) : fallback;
}

FixedReal RunConfig::get_real(const std::string& key, const std::string& fallback) const {
  return FixedReal::parse(get(key, fallback));
}

std::vector<std::int64_t> RunConfig::get_int_list(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const std::string& item : split(get(key, ""), ',')) out.push_back(parse_int(key, item));
  if (out.empty()) throw ConfigError("--" + key + " is empty");
  return out;
}

ApproxConfig RunConfig::instance() const {
  std::vector<FixedReal> c;
  for (const std::string& item : split(get("c", "phi"), ',')) c.push_back(FixedReal::parse(item));
  if (has("d") && get_int("d", 0) != static_cast<std::int64_t>(c.size())) {
    throw ConfigError(fmt::format("--d {} does not match the {} entries of --c", get("d", ""),
                                  c.size()));
  }
  const double k = get_double("k", static_cast<double>(c.size()));
  ApproxConfig cfg;
  cfg.c = CVector::make(std::move(c), k);
  cfg.epsilon = get_double("eps", 0.1);
  cfg.A = get_real("A", "1");
  cfg.B = get_real("B", "2");
  cfg.validate();
  return cfg;
}

std::uint64_t RunConfig::hash() const {
  std::string canonical = "subcommand=" + subcommand + "\n";
  for (const auto& [key, value] : values) {
    if (key == "out" || key == "config") continue;
    canonical += key + "=" + value + "\n";
  }
  return fnv1a(canonical);
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("config line {}: bad section", number));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("config line {}: expected key = value", number));
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("config line {}: empty key", number));
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() < 2 || args[1] == "--help" || args[1] == "-h") {
    (args.size() < 2 ? err : out) << kUsage;
    return args.size() < 2 ? 2 : 0;
  }
  const auto all = specs();
  const auto spec = std::find_if(all.begin(), all.end(),
                                 [&](const Spec& s) { return s.name == args[1]; });
  if (spec == all.end()) {
    err << "unknown subcommand '" << args[1] << "'\n" << kUsage;
    return 2;
  }

  RunConfig cfg;
  cfg.subcommand = spec->name;
  try {
    CLI::App app(spec->help, "dioph-lab " + spec->name);
    std::map<std::string, std::string> flags;
    std::string config_path;
    app.add_option("--config", config_path, "config file with [section] key = value lines");
    std::vector<std::pair<std::string, CLI::Option*>> options;
    for (const std::string& key : spec->keys) {
      options.emplace_back(key, app.add_option("--" + key, flags[key]));
    }
    std::vector<std::string> rest(args.begin() + 2, args.end());
    std::reverse(rest.begin(), rest.end());
    try {
      app.parse(rest);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << e.what() << "\n";
      return 2;
    }
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw ConfigError("cannot read config file " + config_path);
      std::stringstream text;
      text << file.rdbuf();
      for (auto& [key, value] : parse_config_text(text.str())) {
        if (std::find(spec->keys.begin(), spec->keys.end(), key) == spec->keys.end()) {
          throw ConfigError("config key '" + key + "' is not an option of " + spec->name);
        }
        cfg.values[key] = value;
      }
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) cfg.values[key] = flags[key];
    }

    if (spec->name == "search") return run_search(cfg, out);
    if (spec->name == "integrate") return run_integrate(cfg, out);
    if (spec->name == "upper") return run_upper(cfg, out);
    if (spec->name == "audit") return run_audit(cfg, out);
    if (spec->name == "sieve-side") return run_sieve_side(cfg, out);
    if (spec->name == "vaaler-check") return run_vaaler(cfg, out);
    if (spec->name == "vaughan-check") return run_vaughan(cfg, out);
    return run_certify(cfg, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dioph::cli
