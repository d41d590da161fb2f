#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruelle/descriptor.hpp"
#include "ruelle/dlr.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/interaction.hpp"
#include "ruelle/ising.hpp"
#include "ruelle/potential.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "ruelle-kit/1";

// Thrown for malformed configs; maps to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  json raw = json::object();
  json potential;
  int d = 2;
  std::size_t depth = 2;
  std::size_t n = 4;
  std::size_t r = 2;
  double beta = 1.0;
  double alpha = 3.0;
  std::size_t cutoff = 200;
  double tol = 1e-10;
  int max_iter = 10'000;
  std::uint64_t seed = 1;
  double check_tol = 1e-9;
  std::string out;
  std::string csv;

  PowerIterationOptions options() const { return {tol, max_iter}; }

  template <typename T>
  T get(const char* key, T fallback) const {
    if (!raw.contains(key)) return fallback;
    try {
      return raw[key].get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config field \"") + key + "\" has the wrong type");
    }
  }

  json effective() const {
    json e = raw;
    e["potential"] = potential;
    e["d"] = d;
    e["depth"] = depth;
    e["n"] = n;
    e["r"] = r;
    e["beta"] = beta;
    e["alpha"] = alpha;
    e["cutoff"] = cutoff;
    e["tol"] = tol;
    e["max_iter"] = max_iter;
    e["seed"] = seed;
    e["check_tol"] = check_tol;
    return e;
  }
};

struct Outcome {
  json result;
  bool passed = true;
  std::string csv;
};

// Test-point sampling: prefix of length <= 5 followed by a cycle of length 1..3.
Point random_point(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> sym(0, d - 1);
  std::uniform_int_distribution<int> plen(0, 5);
  std::uniform_int_distribution<int> clen(1, 3);
  Word prefix(static_cast<std::size_t>(plen(rng)));
  Word cycle(static_cast<std::size_t>(clen(rng)));
  for (auto& s : prefix) s = sym(rng);
  for (auto& s : cycle) s = sym(rng);
  return Point(std::move(prefix), std::move(cycle));
}

std::vector<Point> points_from(const RunConfig& c, const char* key, std::size_t count, std::mt19937_64& rng) {
  std::vector<Point> pts;
  if (c.raw.contains(key)) {
    for (const auto& s : c.raw[key]) pts.push_back(Point::parse(s.get<std::string>(), c.d));
    return pts;
  }
  for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(rng, c.d));
  return pts;
}

std::vector<Word> all_words(int d, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::size_t i = 0; i < ipow(static_cast<std::size_t>(d), len); ++i) out.push_back(word_at(i, len, d));
  }
  return out;
}

std::vector<Word> cylinders_from(const RunConfig& c, std::size_t default_len) {
  if (!c.raw.contains("cylinders")) return all_words(c.d, default_len);
  std::vector<Word> out;
  for (const auto& s : c.raw["cylinders"]) out.push_back(parse_word(s.get<std::string>(), c.d));
  return out;
}

Potential potential_of(const RunConfig& c) { return potential_from_json(c.potential, c.seed); }

Outcome cmd_rpf(const RunConfig& c) {
  const auto rpf = power_iterate(scaled(potential_of(c), c.beta), c.depth, c.options());
  return {to_json(rpf), true, {}};
}

Outcome cmd_pressure(const RunConfig& c) {
  const auto rpf = power_iterate(scaled(potential_of(c), c.beta), c.depth, c.options());
  return {{{"pressure", std::log(rpf.lambda)},
           {"pressure_interval", {std::log(rpf.lambda_lower), std::log(rpf.lambda_upper)}},
           {"lambda", rpf.lambda},
           {"iterations", rpf.iterations}},
          true,
          {}};
}

Outcome cmd_normalize(const RunConfig& c) {
  const auto f = scaled(potential_of(c), c.beta);
  const auto rpf = power_iterate(f, c.depth, c.options());
  const auto f_bar = normalize(f, rpf);
  const double dev = check_normalized(f_bar, c.depth);
  return {{{"depth", c.depth + 1}, {"values", *f_bar.table()}, {"normalization_deviation", dev}, {"lambda", rpf.lambda}},
          dev <= c.check_tol,
          {}};
}

Outcome cmd_kernel(const RunConfig& c) {
  const auto f = potential_of(c);
  const Point y = Point::parse(c.get<std::string>("boundary", "0"), c.d);
  const auto cyl = cylinders_from(c, std::min<std::size_t>(c.n, 2));
  json rows = json::array();
  std::ostringstream csv;
  csv << "cylinder,kernel\n";
  for (const auto& w : cyl) {
    const double k = kernel(f, c.beta, c.n, y, CylinderFunction::indicator(c.d, w));
    rows.push_back({{"cylinder", format_word(w)}, {"kernel", k}});
    csv << format_word(w) << ',' << std::setprecision(17) << k << '\n';
  }
  return {{{"boundary", y.to_string()},
           {"n", c.n},
           {"log_partition", std::log(partition(f, c.beta, c.n, y))},
           {"kernels", rows}},
          true,
          csv.str()};
}

Outcome cmd_tl(const RunConfig& c) {
  const auto f = potential_of(c);
  std::mt19937_64 rng(c.seed);
  const auto boundaries = points_from(c, "boundaries", c.get<std::size_t>("boundary_count", 8), rng);
  const auto cyl = cylinders_from(c, 3);
  const auto table = tl_sequence(f, c.beta, cyl, boundaries, c.n, c.get<std::size_t>("reference_depth", 0),
                                 c.options());
  json summary = json::array();
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    summary.push_back({{"cylinder", format_word(cyl[i])},
                       {"nu", table.reference.nu.of(Cylinder{cyl[i]})},
                       {"max_deviation", table.max_deviation[i]}});
  }
  std::ostringstream csv;
  csv << "n,cylinder,boundary,kernel,nu,deviation\n" << std::setprecision(17);
  for (const auto& row : table.rows) {
    csv << row.n << ',' << format_word(row.cylinder) << ',' << boundaries[row.boundary_id].to_string() << ','
        << row.kernel << ',' << row.nu_ref << ',' << row.deviation << '\n';
  }
  json bnd = json::array();
  for (const auto& b : boundaries) bnd.push_back(b.to_string());
  return {{{"n_max", c.n}, {"boundaries", bnd}, {"cylinders", summary}, {"reference_depth", table.reference.psi.depth()}},
          true,
          csv.str()};
}

Outcome cmd_dlr_check(const RunConfig& c) {
  const auto f = potential_of(c);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto samples = c.get<std::size_t>("samples", 10);
  json rows = json::array();
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t gd = std::min<std::size_t>(c.n + c.r, 4);
    std::vector<double> values(ipow(static_cast<std::size_t>(c.d), gd));
    for (double& v : values) v = u(rng);
    const CylinderFunction g(c.d, gd, std::move(values));
    const Point z = random_point(rng, c.d);
    const double res = finite_volume_dlr_check(f, c.beta, c.n, c.r, z, g);
    worst = std::max(worst, res);
    rows.push_back({{"boundary", z.to_string()}, {"residual", res}});
  }
  return {{{"n", c.n}, {"r", c.r}, {"max_residual", worst}, {"instances", rows}}, worst <= c.check_tol, {}};
}

Outcome cmd_interaction(const RunConfig& c) {
  const auto family = c.get<std::string>("family", "potential");
  const auto sites = c.get<std::size_t>("sites", 8);
  if (family == "ising_nn" || family == "ising_lr") {
    const auto cutoff = c.get<std::size_t>("site_cutoff", 512);
    const auto labels = c.get<std::string>("labels", "zero_one") == "spins" ? IsingLabels::Spins : IsingLabels::ZeroOne;
    const auto phi = family == "ising_nn" ? ising_nn(cutoff) : ising_lr(c.alpha, labels, cutoff);
    const auto norm = interaction_norm(phi, sites);
    return {{{"family", family}, {"norm", norm.value}, {"norm_remainder", norm.remainder}, {"terms", phi.terms().size()}},
            true,
            {}};
  }
  const auto f = potential_of(c);
  const Point y = Point::parse(c.get<std::string>("basepoint", "0"), c.d);
  const Truncation cut{c.get<std::size_t>("k_max", std::max<std::size_t>(sites, 1)),
                       c.get<std::size_t>("n_max", c.depth), 0};
  const auto phi = from_potential(f, y, cut);
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  json checks = json::array();
  for (const auto& x : points_from(c, "points", c.get<std::size_t>("samples", 10), rng)) {
    const double rec = reconstruct_at_site1(phi, x);
    const double res = std::abs(rec - (f(x).value - phi.basepoint_value));
    worst = std::max(worst, res);
    checks.push_back({{"point", x.to_string()}, {"reconstruction", rec}, {"residual", res}});
  }
  const auto norm = interaction_norm(phi, std::min(sites, cut.k_max));
  json result = to_json(phi);
  result["norm"] = norm.value;
  result["norm_remainder"] = norm.remainder;
  result["reconstruction_checks"] = checks;
  result["max_reconstruction_residual"] = worst;
  return {result, worst <= phi.reconstruction_remainder + c.check_tol, {}};
}

Outcome cmd_walters(const RunConfig& c) {
  const auto f = potential_of(c);
  const auto ps = c.get<std::vector<std::size_t>>("p", {1, 2, 3, 4});
  json rows = json::array();
  std::ostringstream csv;
  csv << "p,estimate\n" << std::setprecision(17);
  for (std::size_t p : ps) {
    const double v = walters_estimate(f, p, c.n);
    rows.push_back({{"p", p}, {"estimate", v}});
    csv << p << ',' << v << '\n';
  }
  return {{{"N", c.n}, {"estimates", rows}}, true, csv.str()};
}

Outcome cmd_uniqueness(const RunConfig& c) {
  const auto f = potential_of(c);
  const auto N = c.get<std::size_t>("N", c.n);
  const auto d1 = D_estimate(f, N);
  const auto d2 = D_estimate(f, 2 * N);
  const bool stable = std::abs(d2.value - d1.value) < 1e-12;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> sym(0, c.d - 1);
  const auto samples = c.get<std::size_t>("samples", 20);
  json rows = json::array();
  bool all_hold = true;
  for (std::size_t s = 0; s < samples; ++s) {
    std::uniform_int_distribution<std::size_t> vol(1, c.n);
    const std::size_t n = vol(rng);
    std::uniform_int_distribution<std::size_t> len(1, std::min<std::size_t>(n, 3));
    Word w(len(rng));
    for (auto& x : w) x = sym(rng);
    const Point y = random_point(rng, c.d);
    const Point z = random_point(rng, c.d);
    const auto sw = sandwich_check(f, c.beta, n, Cylinder{w}, y, z, d2.value);
    all_hold = all_hold && sw.holds;
    rows.push_back({{"n", n},
                    {"cylinder", format_word(w)},
                    {"y", y.to_string()},
                    {"z", z.to_string()},
                    {"margin", sw.margin},
                    {"holds", sw.holds}});
  }
  json result = {{"D_N", d1.value}, {"D_2N", d2.value}, {"stabilized", stable}, {"sandwich", rows}};
  result["D_bound"] = d2.bound ? json(*d2.bound) : json(nullptr);
  return {result, stable && all_hold, {}};
}

Outcome cmd_change_of_measure(const RunConfig& c) {
  const double res = change_of_measure_check(scaled(potential_of(c), c.beta), c.depth, c.options());
  return {{{"depth", c.depth}, {"residual", res}}, res <= c.check_tol, {}};
}

ising::Params ising_params(const RunConfig& c) {
  ising::Params p{c.alpha, c.beta, c.cutoff};
  p.validate();
  return p;
}

std::vector<ising::TwoSidedPoint> two_sided_points(const RunConfig& c, std::mt19937_64& rng) {
  std::vector<ising::TwoSidedPoint> pts;
  if (c.raw.contains("points")) {
    for (const auto& s : c.raw["points"]) pts.push_back(ising::TwoSidedPoint::parse(s.get<std::string>()));
    return pts;
  }
  const auto samples = c.get<std::size_t>("samples", 5);
  for (std::size_t i = 0; i < samples; ++i) pts.push_back({random_point(rng, 2), random_point(rng, 2)});
  return pts;
}

json value_bound(const Evaluation& e) { return {{"value", e.value}, {"bound", e.error}}; }

Outcome cmd_ising(const RunConfig& c, const std::string& what) {
  const auto p = ising_params(c);
  std::mt19937_64 rng(c.seed);
  const auto terms = c.get<std::size_t>("terms", 100);
  if (what == "zeta") return {value_bound(ising::zeta(p.alpha, p.cutoff)), true, {}};
  if (what == "witness") {
    const auto w = ising::hoelder_witness(p, c.get<double>("gamma", 1.0), c.get<double>("M", 1e6));
    return {{{"N", w.N},
             {"x", w.x.to_string()},
             {"y", w.y.to_string()},
             {"difference", w.difference},
             {"ratio", w.ratio}},
            true,
            {}};
  }
  if (what == "walters") {
    const auto ps = c.get<std::vector<std::size_t>>("p", {8, 16, 32, 64, 128});
    const auto N = c.get<std::size_t>("N", 1000);
    json rows = json::array();
    std::vector<double> lx;
    std::vector<double> ly;
    bool decaying = true;
    for (std::size_t q : ps) {
      const auto w = ising::ising_walters_estimate(p, q, N);
      decaying = w.decaying;
      rows.push_back({{"p", q}, {"finite", w.finite}, {"limit", w.limit}, {"limit_error", w.limit_error}});
      lx.push_back(std::log(static_cast<double>(q)));
      ly.push_back(std::log(w.limit));
    }
    json result = {{"estimates", rows}, {"decaying", decaying}};
    if (decaying && lx.size() >= 2) {
      const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
      const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
      double sxy = 0.0;
      double sxx = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
      }
      result["slope"] = sxy / sxx;
      result["expected_slope"] = -(p.alpha - 2.0);
    }
    return {result, true, {}};
  }
  if (what == "rpf") {
    const auto rpf = power_iterate(scaled(ising::g_potential(p), p.beta), c.depth, c.options());
    return {to_json(rpf), true, {}};
  }
  json rows = json::array();
  bool passed = true;
  for (const auto& x : two_sided_points(c, rng)) {
    json row = {{"point", x.to_string()}};
    if (what == "f") {
      row.update(value_bound(ising::f_two_sided(p, x)));
    } else if (what == "g") {
      row.update(value_bound(ising::g_one_sided(p, x.future)));
    } else if (what == "h") {
      row.update(value_bound(ising::transfer_h(p, x, terms)));
    } else if (what == "coboundary") {
      const auto cb = ising::coboundary_check(p, x, terms);
      row["residual"] = cb.residual;
      row["bound"] = cb.bound;
      row["holds"] = cb.holds();
      row["residual_transfer"] = cb.residual_transfer;
      row["bound_transfer"] = cb.bound_transfer;
      passed = passed && cb.holds();
    } else {
      throw ConfigError("unknown ising subcommand \"" + what + "\"");
    }
    rows.push_back(std::move(row));
  }
  return {{{"quantity", what}, {"terms", terms}, {"points", rows}}, passed, {}};
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic formalism on the one-sided full shift", "ruelle"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig flags;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", flags.out, "Write the JSON report here instead of stdout");
  app.add_option("--csv", flags.csv, "Also write a CSV table (kernel, tl, walters)");
  auto* o_d = app.add_option("--d", flags.d, "Alphabet size")->check(CLI::Range(2, 10));
  auto* o_depth = app.add_option("--depth", flags.depth, "Cylinder depth m")->check(CLI::Range(1, 24));
  auto* o_n = app.add_option("--n", flags.n, "Volume n")->check(CLI::Range(1, 40));
  auto* o_r = app.add_option("--r", flags.r, "Extra volume r")->check(CLI::Range(0, 20));
  auto* o_beta = app.add_option("--beta", flags.beta, "Inverse temperature");
  auto* o_alpha = app.add_option("--alpha", flags.alpha, "Ising decay exponent");
  auto* o_cutoff = app.add_option("--cutoff", flags.cutoff, "Ising series cutoff J");
  auto* o_tol = app.add_option("--tol", flags.tol, "Power-iteration tolerance");
  auto* o_iter = app.add_option("--max-iter", flags.max_iter, "Power-iteration cap");
  auto* o_seed = app.add_option("--seed", flags.seed, "Seed for test-point sampling");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rpf", "Perron eigendata of the transfer operator"},
      {"pressure", "log of the leading eigenvalue"},
      {"normalize", "normalized potential and its check"},
      {"kernel", "finite-volume kernels of cylinders"},
      {"tl", "kernels against the eigenprobability as n grows"},
      {"dlr-check", "finite-volume DLR consistency"},
      {"interaction", "interaction of a potential, or an Ising family"},
      {"walters", "Walters-condition estimates"},
      {"uniqueness", "D estimate and sandwich bounds"},
      {"change-of-measure", "eigenprobability versus the normalized fixed point"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  auto* ising_cmd = app.add_subcommand("ising", "long-range Ising chain")->fallthrough();
  ising_cmd->require_subcommand(1);
  for (const char* q : {"zeta", "f", "g", "h", "coboundary", "witness", "walters", "rpf"}) {
    ising_cmd->add_subcommand(q)->fallthrough();
  }

  // Every option takes a value, so the first bare token names the subcommand.
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "-h" || a == "--help") break;
    if (a.rfind("--", 0) == 0) {
      if (a.find('=') == std::string::npos) ++i;
      continue;
    }
    if (app.get_subcommand_no_throw(a) == nullptr) {
      err << "unknown subcommand \"" << a << "\"\n";
      return kExitUsage;
    }
    break;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string command;
  std::string ising_what;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  if (command == "ising") ising_what = ising_cmd->get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      try {
        cfg.raw = json::parse(f);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!cfg.raw.is_object()) throw ConfigError("config must be a JSON object");
      cfg.d = cfg.get<int>("d", cfg.d);
      cfg.depth = cfg.get<std::size_t>("depth", cfg.depth);
      cfg.n = cfg.get<std::size_t>("n", cfg.n);
      cfg.r = cfg.get<std::size_t>("r", cfg.r);
      cfg.beta = cfg.get<double>("beta", cfg.beta);
      cfg.alpha = cfg.get<double>("alpha", cfg.alpha);
      cfg.cutoff = cfg.get<std::size_t>("cutoff", cfg.cutoff);
      cfg.tol = cfg.get<double>("tol", cfg.tol);
      cfg.max_iter = cfg.get<int>("max_iter", cfg.max_iter);
      cfg.seed = cfg.get<std::uint64_t>("seed", cfg.seed);
      cfg.check_tol = cfg.get<double>("check_tol", cfg.check_tol);
    }
    if (o_d->count()) cfg.d = flags.d;
    if (o_depth->count()) cfg.depth = flags.depth;
    if (o_n->count()) cfg.n = flags.n;
    if (o_r->count()) cfg.r = flags.r;
    if (o_beta->count()) cfg.beta = flags.beta;
    if (o_alpha->count()) cfg.alpha = flags.alpha;
    if (o_cutoff->count()) cfg.cutoff = flags.cutoff;
    if (o_tol->count()) cfg.tol = flags.tol;
    if (o_iter->count()) cfg.max_iter = flags.max_iter;
    if (o_seed->count()) cfg.seed = flags.seed;
    cfg.out = flags.out;
    cfg.csv = flags.csv;
    cfg.potential = cfg.raw.contains("potential") ? cfg.raw["potential"]
                                                   : json{{"kind", "constant"}, {"params", {{"d", cfg.d}, {"value", 0.0}}}};
    if (cfg.d < 2) throw ConfigError("d must be at least 2");
    if (cfg.raw.contains("potential")) {
      // The alphabet size follows the potential unless given explicitly.
      int symbols = 0;
      try {
        symbols = potential_from_json(cfg.potential, cfg.seed).symbols();
      } catch (const std::exception& e) {
        throw ConfigError(std::string("potential: ") + e.what());
      }
      const bool explicit_d = cfg.raw.contains("d") || o_d->count() > 0;
      if (explicit_d && symbols != cfg.d) throw ConfigError("d does not match the potential's alphabet");
      cfg.d = symbols;
    }
    if (cfg.depth == 0) throw ConfigError("depth must be at least 1");
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kExitUsage;
  }

  Outcome outcome;
  try {
    if (command == "rpf") outcome = cmd_rpf(cfg);
    else if (command == "pressure") outcome = cmd_pressure(cfg);
    else if (command == "normalize") outcome = cmd_normalize(cfg);
    else if (command == "kernel") outcome = cmd_kernel(cfg);
    else if (command == "tl") outcome = cmd_tl(cfg);
    else if (command == "dlr-check") outcome = cmd_dlr_check(cfg);
    else if (command == "interaction") outcome = cmd_interaction(cfg);
    else if (command == "walters") outcome = cmd_walters(cfg);
    else if (command == "uniqueness") outcome = cmd_uniqueness(cfg);
    else if (command == "change-of-measure") outcome = cmd_change_of_measure(cfg);
    else if (command == "ising") outcome = cmd_ising(cfg, ising_what);
    else {
      err << "usage error: unknown subcommand \"" << command << "\"\n";
      return kExitUsage;
    }
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "invalid config: " << e.what() << "\n";
    return kExitUsage;
  }

  json report = {{"schema", kSchema},
                 {"command", ising_what.empty() ? command : command + " " + ising_what},
                 {"generated_at", timestamp()},
                 {"config", cfg.effective()},
                 {"result", outcome.result},
                 {"check", {{"passed", outcome.passed}, {"tolerance", cfg.check_tol}}}};
  try {
    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
      out << text;
    } else {
      write_text(cfg.out, text);
    }
    if (!cfg.csv.empty()) write_text(cfg.csv, outcome.csv);
  } catch (const ConfigError& e) {
    err << "output error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!outcome.passed) {
    err << "check failed: see \"check\" in the report\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace ruelle::cli
