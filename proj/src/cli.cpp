#include "hs_sharp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/inequality_lab.hpp"
#include "hs_sharp/parallel.hpp"
#include "hs_sharp/poisson_field.hpp"
#include "hs_sharp/report.hpp"
#include "hs_sharp/variational.hpp"

namespace hs_sharp {

namespace {

// Thrown for input that parsed syntactically but makes no sense.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

Exponent parse_exponent(const std::string& token) {
  try {
    return Exponent::parse(token);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Dim parse_dim(int n) {
  if (n < 2) throw UsageError("dimension must be >= 2, got " + std::to_string(n));
  return Dim(n);
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
}

// ---- constants -----------------------------------------------------------

struct ConstantsArgs {
  std::vector<int> n;
  std::vector<std::string> p;
  std::string format = "csv";
};

int cmd_constants(const ConstantsArgs& a, const QuadratureSpec& spec, std::ostream& out,
                  std::ostream& err) {
  check_format(a.format);
  std::vector<std::pair<Dim, Exponent>> jobs;
  for (int n : a.n) {
    for (const std::string& p : a.p) jobs.emplace_back(parse_dim(n), parse_exponent(p));
  }
  int code = kExitOk;
  std::vector<ReportRecord> records;
  for (const auto& [n, p] : jobs) {
    try {
      const ConstantResult r = sup_over_direction(n, p, spec);
      if (!r.warning.empty()) err << "warning: n=" << n.value() << " p=" << p.to_string() << ": "
                                  << r.warning << '\n';
      ReportRecord rec;
      rec.n = n.value();
      rec.p = p.to_string();
      rec.method = std::string(method_name(r.method));
      rec.value = r.value;
      rec.abs_err = r.abs_err;
      rec.argmax_beta = r.argmax_beta;
      if (auto c = closed_form_constant(n, p)) {
        rec.closed_form = *c;
        rec.rel_gap = std::abs(r.value - *c) / *c;
      }
      records.push_back(rec);
    } catch (const NonConvergence& e) {
      err << "non-convergence: n=" << n.value() << " p=" << p.to_string() << ": " << e.what()
          << " (best " << format_double(e.best().value) << ")\n";
      code = kExitNonConvergence;
    }
  }
  if (a.format == "csv") {
    out << kConstantsCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  }
  return code;
}

// ---- profile -------------------------------------------------------------

struct ProfileArgs {
  int n = 3;
  std::string p = "2";
  int count = 33;
  std::string format = "csv";
};

int cmd_profile(const ProfileArgs& a, const QuadratureSpec& spec, std::ostream& out) {
  check_format(a.format);
  if (a.count < 2) throw UsageError("--count must be >= 2");
  const Dim n = parse_dim(a.n);
  const Exponent p = parse_exponent(a.p);
  const std::vector<ProfilePoint> rows = direction_profile(n, p, a.count, spec);
  if (a.format == "csv") {
    out << "beta,value,abs_err\n";
    for (const auto& r : rows) {
      out << format_double(r.beta) << ',' << format_double(r.value) << ','
          << format_double(r.abs_err) << '\n';
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back({{"beta", r.beta}, {"value", r.value}, {"abs_err", r.abs_err}});
    out << nlohmann::json{{"n", a.n}, {"p", p.to_string()}, {"profile", arr}}.dump(2) << '\n';
  }
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  int n = 3;
  std::string p = "inf";
  std::string mode = "extremal";
  int samples = 1;
  std::uint64_t seed = 1;
  double truncation = 1e4;
  double beta = 0.0;
  std::string format = "csv";
};

constexpr double kBoundSlack = 1e-3;

int cmd_verify(const VerifyArgs& a, const QuadratureSpec& spec, bool spec_from_config,
               std::ostream& out) {
  check_format(a.format);
  if (a.mode != "extremal" && a.mode != "random") throw UsageError("--mode must be extremal or random");
  if (a.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(a.truncation > 10.0)) throw UsageError("--truncation must exceed 10 (units of x_n)");
  if (!(a.beta >= 0.0 && a.beta <= std::numbers::pi / 2)) throw UsageError("--beta must lie in [0, pi/2]");
  const Dim n = parse_dim(a.n);
  const Exponent p = parse_exponent(a.p);
  const Direction dir = Direction::from_beta(a.beta);
  const bool random = a.mode == "random";
  const QuadratureSpec qspec = (random && !spec_from_config) ? kVerificationSpec : spec;

  const double bound = sharp_bound(p, n, spec);
  const double dbound = sharp_direction_bound(p, n, dir, spec);

  struct Row {
    std::uint64_t seed;
    double x_n;
    SharpnessReport report;
  };
  std::vector<Row> rows(static_cast<std::size_t>(a.samples));
  parallel_for(rows.size(), [&](std::size_t i) {
    const std::uint64_t seed = a.seed + i;
    std::mt19937_64 rng(seed);
    if (random) {
      const HalfSpacePoint x = random_point(n, rng);
      const BoundaryData f = bump_family_data(random_bump_family(n, x, rng), n);
      rows[i] = {seed, x.x_n, measure_ratio(f, p, n, x, dir, bound, dbound, qspec)};
    } else {
      HalfSpacePoint x{std::vector<double>(n.value() - 1, 0.0), 1.0};
      if (i > 0) x = random_point(n, rng);
      rows[i] = {seed, x.x_n, sharpness_ratio(p, n, x, dir, a.truncation * x.x_n, qspec)};
    }
  });

  double worst = 0.0;
  bool violated = false;
  for (const Row& r : rows) {
    worst = std::max(worst, r.report.ratio / r.report.bound);
    if (r.report.ratio > r.report.bound * (1.0 + kBoundSlack)) violated = true;
  }

  if (a.format == "csv") {
    out << "sample,seed,mode,n,p,beta,x_n,ratio,bound,gap,quadrature_err,directional_ratio,"
           "directional_bound\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      const SharpnessReport& s = r.report;
      out << i << ',' << r.seed << ',' << a.mode << ',' << n.value() << ',' << p.to_string() << ','
          << format_double(a.beta) << ',' << format_double(r.x_n) << ',' << format_double(s.ratio)
          << ',' << format_double(s.bound) << ',' << format_double(s.gap) << ','
          << format_double(s.quadrature_err) << ',' << format_double(s.directional_ratio) << ','
          << format_double(s.directional_bound) << '\n';
    }
    out << "max_ratio_over_bound=" << format_double(worst) << '\n';
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SharpnessReport& s = rows[i].report;
      nlohmann::json j{{"sample", i},
                       {"seed", rows[i].seed},
                       {"mode", a.mode},
                       {"n", n.value()},
                       {"p", p.to_string()},
                       {"beta", a.beta},
                       {"x_n", rows[i].x_n},
                       {"ratio", s.ratio},
                       {"bound", s.bound},
                       {"gap", s.gap},
                       {"quadrature_err", s.quadrature_err},
                       {"directional_ratio", s.directional_ratio},
                       {"directional_bound", s.directional_bound}};
      if (!s.bump_ratios.empty()) {
        j["bump_scales"] = s.bump_scales;
        j["bump_ratios"] = s.bump_ratios;
      }
      arr.push_back(std::move(j));
    }
    out << nlohmann::json{{"samples", arr}, {"max_ratio_over_bound", worst}}.dump(2) << '\n';
  }
  return violated ? kExitViolation : kExitOk;
}

// ---- scan-inequalities ---------------------------------------------------

struct ScanArgs {
  std::string which = "all";
  double x_lo = 0.0;
  double x_hi = 100.0;
  int x_count = 5000;
  double mu_lo = 1.0;
  double mu_hi = 50.0;
  int mu_count = 200;
  double y_hi = 50.0;
  int y_count = 10000;
  int n_lo = 2;
  int n_hi = 12;
  double tolerance = kGapTolerance;
  double margin = kEqualityMargin;
  bool list_equalities = false;
  std::string format = "csv";
};

// Uniform points on [lo, hi], log-spaced points on [max(lo, 1e-3), hi], and
// x = 1 when it is in range.
std::vector<double> x_grid(const ScanArgs& a) {
  if (a.x_lo == 0.0 && a.x_hi == 100.0 && a.x_count == 5000) return default_lemma_x_grid(100.0);
  std::vector<double> xs = linspace(a.x_lo, a.x_hi, a.x_count);
  const double log_lo = std::max(a.x_lo, 1e-3);
  if (log_lo < a.x_hi) {
    const std::vector<double> logs = logspace(log_lo, a.x_hi, a.x_count);
    xs.insert(xs.end(), logs.begin(), logs.end());
  }
  if (a.x_lo <= 1.0 && 1.0 <= a.x_hi) xs.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Points counted as a stated equality case (within 1e-3 of x = 1 or mu = 1,
// 5e-4 of y = 0) are grouped under that case;
// anything else is listed by coordinates.
std::string locus(const std::string& which, const GapPoint& g) {
  auto near = [](double v, double at, const std::string& name,
                 double radius = 1e-3) -> std::string {
    if (v == at) return name + "=" + format_double(at);
    if (std::abs(v - at) <= radius) {
      return "|" + name + "-" + format_double(at) + "|<=" + format_double(radius);
    }
    return "";
  };
  if (which == "lemma") {
    for (const std::string& l : {near(g.x, 1.0, "x"), near(g.param, 1.0, "mu")}) {
      if (!l.empty()) return l;
    }
    return "x=" + format_double(g.x) + "&mu=" + format_double(g.param);
  }
  if (which == "corollary1") {
    for (const std::string& l : {near(g.x, 0.0, "y", 5e-4), near(g.param, 2.0, "n")}) {
      if (!l.empty()) return l;
    }
    return "y=" + format_double(g.x) + "&n=" + format_double(g.param);
  }
  if (const std::string l = near(g.x, 1.0, "x"); !l.empty()) return l;
  return "x=" + format_double(g.x) + "&n=" + format_double(g.param);
}

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  check_format(a.format);
  if (a.which != "all" && a.which != "lemma" && a.which != "corollary1" && a.which != "corollary2") {
    throw UsageError("--which must be lemma, corollary1, corollary2 or all");
  }
  if (a.x_count < 2 || a.mu_count < 2 || a.y_count < 2) throw UsageError("grid counts must be >= 2");
  if (!(a.x_lo >= 0.0 && a.x_lo <= a.x_hi) || !(a.mu_lo >= 1.0 && a.mu_lo <= a.mu_hi) ||
      !(a.y_hi >= 0.0) || a.n_lo < 2 || a.n_lo > a.n_hi) {
    throw UsageError("grid ranges out of domain");
  }
  if (!(a.tolerance > 0.0) || !(a.margin >= 0.0)) throw UsageError("tolerance must be positive");

  std::vector<int> ns;
  for (int n = a.n_lo; n <= a.n_hi; ++n) ns.push_back(n);
  std::vector<std::pair<std::string, ScanReport>> reports;
  const bool all = a.which == "all";
  if (all || a.which == "lemma") {
    reports.emplace_back("lemma", scan_lemma(x_grid(a), linspace(a.mu_lo, a.mu_hi, a.mu_count),
                                             a.tolerance, a.margin));
  }
  if (all || a.which == "corollary1") {
    reports.emplace_back("corollary1", scan_corollary1(linspace(0.0, a.y_hi, a.y_count), ns,
                                                       a.tolerance, a.margin));
  }
  if (all || a.which == "corollary2") {
    reports.emplace_back("corollary2", scan_corollary2(x_grid(a), ns, a.tolerance, a.margin));
  }

  bool failed = false;
  auto loci = [&](const std::string& name, const ScanReport& r) {
    std::vector<std::string> seen;
    for (const GapPoint& g : r.equality_cases) {
      const std::string l = locus(name, g);
      if (std::find(seen.begin(), seen.end(), l) == seen.end()) seen.push_back(l);
    }
    return seen;
  };
  auto joined = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ";") + e;
    return s;
  };

  if (a.format == "csv") {
    out << "inequality,points,max_gap,max_gap_x,max_gap_param,violations,equality_cases,"
           "unexpected_equalities,equality_loci\n";
    for (const auto& [name, r] : reports) {
      out << name << ',' << r.points << ',' << format_double(r.max_gap.gap) << ','
          << format_double(r.max_gap.x) << ',' << format_double(r.max_gap.param) << ','
          << r.violations << ',' << r.equality_cases.size() << ',' << r.unexpected_equalities << ','
          << joined(loci(name, r)) << '\n';
      failed = failed || !r.ok();
    }
    if (a.list_equalities) {
      out << "\ninequality,x,param,gap,rel_gap\n";
      for (const auto& [name, r] : reports) {
        for (const GapPoint& g : r.equality_cases) {
          out << name << ',' << format_double(g.x) << ',' << format_double(g.param) << ','
              << format_double(g.gap) << ',' << format_double(g.rel_gap) << '\n';
        }
      }
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [name, r] : reports) {
      nlohmann::json j{{"inequality", name},
                       {"points", r.points},
                       {"max_gap", r.max_gap.gap},
                       {"max_gap_x", r.max_gap.x},
                       {"max_gap_param", r.max_gap.param},
                       {"violations", r.violations},
                       {"equality_cases", r.equality_cases.size()},
                       {"unexpected_equalities", r.unexpected_equalities},
                       {"equality_loci", loci(name, r)}};
      if (a.list_equalities) {
        nlohmann::json cases = nlohmann::json::array();
        for (const GapPoint& g : r.equality_cases) {
          cases.push_back({{"x", g.x}, {"param", g.param}, {"gap", g.gap}, {"rel_gap", g.rel_gap}});
        }
        j["cases"] = std::move(cases);
      }
      arr.push_back(std::move(j));
      failed = failed || !r.ok();
    }
    out << arr.dump(2) << '\n';
  }
  return failed ? kExitViolation : kExitOk;
}

}  // namespace

QuadratureSpec parse_config(std::istream& in, QuadratureSpec base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      std::size_t used = 0;
      if (key == "base_order") {
        base.base_order = std::stoi(value, &used);
      } else if (key == "max_refinements") {
        base.max_refinements = std::stoi(value, &used);
      } else if (key == "abs_tol") {
        base.abs_tol = parse_double(value);
        used = value.size();
      } else if (key == "rel_tol") {
        base.rel_tol = parse_double(value);
        used = value.size();
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
      if (used != value.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

QuadratureSpec load_config(const std::string& path, QuadratureSpec base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in, base);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_thread_limit_from_env();

  CLI::App app{"Sharp pointwise gradient constants for harmonic functions in the half-space"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file overriding quadrature settings");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Sharp constants C_p for each (n, p)");
  constants->add_option("--n", ca.n, "dimensions (comma separated)")->required()->delimiter(',');
  constants->add_option("--p", ca.p, "exponents: 1, inf, or a decimal > 1")->required()->delimiter(',');
  constants->add_option("--format", ca.format, "csv or json");

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "Direction profile beta -> C_p(beta)");
  profile->add_option("--n", pa.n)->required();
  profile->add_option("--p", pa.p)->required();
  profile->add_option("--count", pa.count, "number of beta values on [0, pi/2]");
  profile->add_option("--format", pa.format);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Empirical sharpness and bound checks");
  verify->add_option("--n", va.n)->required();
  verify->add_option("--p", va.p)->required();
  verify->add_option("--mode", va.mode, "extremal or random");
  verify->add_option("--samples", va.samples);
  verify->add_option("--seed", va.seed);
  verify->add_option("--truncation", va.truncation, "support radius of extremal data, in units of x_n");
  verify->add_option("--beta", va.beta, "direction angle from e_n");
  verify->add_option("--format", va.format);

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan-inequalities", "Grid scans of the algebraic inequalities");
  scan->add_option("--which", sa.which);
  scan->add_option("--x-lo", sa.x_lo);
  scan->add_option("--x-hi", sa.x_hi);
  scan->add_option("--x-count", sa.x_count);
  scan->add_option("--mu-lo", sa.mu_lo);
  scan->add_option("--mu-hi", sa.mu_hi);
  scan->add_option("--mu-count", sa.mu_count);
  scan->add_option("--y-hi", sa.y_hi);
  scan->add_option("--y-count", sa.y_count);
  scan->add_option("--n-lo", sa.n_lo);
  scan->add_option("--n-hi", sa.n_hi);
  scan->add_option("--tolerance", sa.tolerance);
  scan->add_option("--margin", sa.margin);
  scan->add_flag("--list-equalities", sa.list_equalities);
  scan->add_option("--format", sa.format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    QuadratureSpec spec;
    const bool from_config = !config_path.empty();
    if (from_config) spec = load_config(config_path);
    if (*constants) return cmd_constants(ca, spec, out, err);
    if (*profile) return cmd_profile(pa, spec, out);
    if (*verify) return cmd_verify(va, spec, from_config, out);
    if (*scan) return cmd_scan(sa, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << " (best " << format_double(e.best().value) << ")\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hs_sharp
