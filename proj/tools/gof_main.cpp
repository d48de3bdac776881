#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gof/asymptotics.hpp"
#include "gof/circularize.hpp"
#include "gof/covariance.hpp"
#include "gof/error.hpp"
#include "gof/montecarlo.hpp"
#include "gof/order_stats.hpp"
#include "gof/statistics.hpp"
#include "gof/weights.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 12345;

// Shortest round-trippable decimal form, '.' separator, locale-free.
std::string fmt(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Seed precedence: explicit --seed flag, then GOF_SEED, then the default.
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("GOF_SEED")) {
    const std::string s(env);
    std::uint64_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
      throw gof::Error("bad_selector",
                       "GOF_SEED must be an unsigned integer, got '" + s + "'");
    }
    return v;
  }
  return flag_value;
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) {
      throw gof::Error("io_error", "cannot open output file '" + path + "'");
    }
    stream = &file;
  }
};

std::string plain(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// Echo every resolved config value; nlohmann objects iterate in key order, so
// both formats are byte-stable for a fixed config.
void emit(std::ostream& out, const std::string& format, const json& config,
          const json& results,
          const std::function<void(std::ostream&)>& csv_body) {
  if (format == "json") {
    json root;
    root["config"] = config;
    root["gof_version"] = kVersion;
    root["results"] = results;
    out << root.dump(2) << "\n";
    return;
  }
  out << "# gof_version=" << kVersion << "\n";
  for (auto it = config.begin(); it != config.end(); ++it) {
    out << "# " << it.key() << "=" << plain(it.value()) << "\n";
  }
  csv_body(out);
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gof::Error("io_error", "cannot read input file '" + path + "'");
  std::vector<double> data;
  double x = 0.0;
  while (in >> x) data.push_back(x);
  if (!in.eof()) {
    throw gof::Error("io_error", "non-numeric content in '" + path + "'");
  }
  if (data.empty()) {
    throw gof::Error("io_error", "no numeric data in '" + path + "'");
  }
  return data;
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) {
    throw gof::Error("io_error", "cannot read config file '" + path + "'");
  }
  try {
    json j;
    in >> j;
    if (!j.is_object()) {
      throw gof::Error("io_error",
                       "config file '" + path + "' must hold a JSON object");
    }
    return j;
  } catch (const json::exception& e) {
    throw gof::Error("io_error",
                     "config file '" + path + "': " + std::string(e.what()));
  }
}

std::vector<gof::StatisticKind> parse_stats(const std::vector<std::string>& v) {
  std::vector<gof::StatisticKind> out;
  out.reserve(v.size());
  for (const std::string& s : v) out.push_back(gof::statistic_from_token(s));
  return out;
}

std::vector<gof::PoolingMode> parse_pools(const std::vector<std::string>& v) {
  std::vector<gof::PoolingMode> out;
  out.reserve(v.size());
  for (const std::string& s : v) out.push_back(gof::pooling_from_token(s));
  return out;
}

json token_array(const std::vector<gof::StatisticKind>& kinds) {
  json a = json::array();
  for (const auto k : kinds) a.push_back(gof::to_token(k));
  return a;
}

json token_array(const std::vector<gof::PoolingMode>& pools) {
  json a = json::array();
  for (const auto p : pools) a.push_back(gof::to_token(p));
  return a;
}

int cs_index(gof::PoolingMode p) {
  if (p == gof::PoolingMode::None) return 0;
  return p == gof::PoolingMode::Avg ? 1 : 2;
}

// k-th (1-based) order statistic at upper probability p, matching the
// critical-value convention.
double order_quantile(const std::vector<double>& sorted, double p) {
  const int m = static_cast<int>(sorted.size());
  const int k =
      std::clamp(static_cast<int>(std::ceil(p * m - 1e-9)), 1, m);
  return sorted[k - 1];
}

// ---------------------------------------------------------------------------

struct TestOpts {
  std::string input, null_spec = "uniform", stat = "w2", pool = "cs0";
  std::string output, format = "csv";
  double alpha = 0.05;
  int reps = 10000, workers = 1;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
};

int run_test(const TestOpts& o) {
  const gof::StatisticKind stat = gof::statistic_from_token(o.stat);
  const gof::PoolingMode pool = gof::pooling_from_token(o.pool);
  const std::uint64_t seed = resolve_seed(o.seed_given, o.seed);
  const std::vector<double> data = read_numbers(o.input);
  const gof::NullDistribution null = gof::NullDistribution::parse(o.null_spec);
  const gof::SortedUniforms u = gof::probability_integral_transform(data, null);
  const int n = u.n();

  const double value = gof::circular_statistic(stat, pool, u);
  const std::vector<double> nulls = gof::simulate_null(
      stat, pool, n, o.reps, gof::RunSeed{seed}, o.workers);
  const double crit = gof::critical_value(nulls, o.alpha);
  const double crit_se = gof::critical_value_se(nulls, o.alpha);
  const double p = gof::p_value(value, nulls);
  const double p_se = std::sqrt(p * (1.0 - p) / o.reps);
  const char* decision = value > crit ? "reject" : "fail-to-reject";

  const json config = {{"alpha", o.alpha},     {"format", o.format},
                       {"input", o.input},     {"null", o.null_spec},
                       {"output", o.output},   {"pool", o.pool},
                       {"reps", o.reps},       {"seed", seed},
                       {"stat", o.stat},       {"subcommand", "test"},
                       {"workers", o.workers}};
  const json results = {{"critical_value", crit},
                        {"critical_value_se", crit_se},
                        {"decision", decision},
                        {"n", n},
                        {"p_value", p},
                        {"p_value_se", p_se},
                        {"statistic_value", value}};
  OutputTarget out;
  out.open(o.output);
  emit(*out.stream, o.format, config, results, [&](std::ostream& os) {
    os << "key,value\n";
    os << "n," << n << "\n";
    os << "statistic_value," << fmt(value) << "\n";
    os << "critical_value," << fmt(crit) << "\n";
    os << "critical_value_se," << fmt(crit_se) << "\n";
    os << "p_value," << fmt(p) << "\n";
    os << "p_value_se," << fmt(p_se) << "\n";
    os << "alpha," << fmt(o.alpha) << "\n";
    os << "decision," << decision << "\n";
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct CritvalOpts {
  std::vector<std::string> stats, pools;
  std::vector<int> ns;
  std::string output, format = "csv";
  double alpha = 0.05;
  int reps = 10000, workers = 1;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
};

int run_critvals(const CritvalOpts& o) {
  std::vector<gof::StatisticKind> kinds =
      o.stats.empty() ? std::vector<gof::StatisticKind>(
                            std::begin(gof::kAllStatistics),
                            std::end(gof::kAllStatistics))
                      : parse_stats(o.stats);
  std::vector<gof::PoolingMode> pools =
      o.pools.empty() ? std::vector<gof::PoolingMode>(
                            std::begin(gof::kAllPoolings),
                            std::end(gof::kAllPoolings))
                      : parse_pools(o.pools);
  const std::vector<int> ns =
      o.ns.empty() ? std::vector<int>{10, 50, 100, 150, 200, 250, 300} : o.ns;
  const std::uint64_t seed = resolve_seed(o.seed_given, o.seed);

  const gof::CriticalValueTable table = gof::critical_value_table(
      kinds, pools, ns, o.alpha, o.reps, gof::RunSeed{seed}, o.workers);

  json config = {{"alpha", o.alpha},   {"format", o.format},
                 {"n", json(ns)},      {"output", o.output},
                 {"pools", token_array(pools)},
                 {"reps", o.reps},     {"seed", seed},
                 {"stats", token_array(kinds)},
                 {"subcommand", "critvals"},
                 {"workers", o.workers}};
  json cells = json::array();
  for (const gof::CriticalValueCell& c : table.cells) {
    cells.push_back({{"alpha", c.alpha},
                     {"critical_value", c.value},
                     {"n", c.n},
                     {"pool", gof::to_token(c.pool)},
                     {"reps", c.reps},
                     {"se", c.se},
                     {"stat", gof::to_token(c.stat)}});
  }
  const json results = {{"cells", cells}};
  OutputTarget out;
  out.open(o.output);
  emit(*out.stream, o.format, config, results, [&](std::ostream& os) {
    os << "stat,pool,n,alpha,reps,critical_value,se\n";
    for (const gof::CriticalValueCell& c : table.cells) {
      os << gof::to_token(c.stat) << "," << gof::to_token(c.pool) << ","
         << c.n << "," << fmt(c.alpha) << "," << c.reps << ","
         << fmt(c.value) << "," << fmt(c.se) << "\n";
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct PowerOpts {
  std::vector<std::string> stats, pools;
  std::vector<int> ns;
  std::string config_path, output, format = "csv";
  double alpha = 0.05;
  int reps = 10000, workers = 1;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false, alpha_given = false, reps_given = false,
       workers_given = false;
};

int run_power(const PowerOpts& o) {
  gof::PowerConfig pc;
  pc.params = gof::PerturbationParams{0.75, 0.25, 0.25};

  const json file = load_config_file(o.config_path);
  if (file.contains("statistics")) {
    pc.statistics = parse_stats(file["statistics"].get<std::vector<std::string>>());
  }
  if (file.contains("poolings")) {
    pc.poolings = parse_pools(file["poolings"].get<std::vector<std::string>>());
  }
  if (file.contains("n")) pc.n_grid = file["n"].get<std::vector<int>>();
  if (file.contains("alpha")) pc.alpha = file["alpha"].get<double>();
  if (file.contains("reps")) {
    pc.null_reps = pc.alt_reps = file["reps"].get<int>();
  }
  if (file.contains("null_reps")) pc.null_reps = file["null_reps"].get<int>();
  if (file.contains("alt_reps")) pc.alt_reps = file["alt_reps"].get<int>();
  if (file.contains("tau")) pc.params.tau = file["tau"].get<double>();
  if (file.contains("eta")) pc.params.eta = file["eta"].get<double>();
  if (file.contains("sigma")) pc.params.sigma = file["sigma"].get<double>();
  if (file.contains("workers")) pc.workers = file["workers"].get<int>();

  if (!o.stats.empty()) pc.statistics = parse_stats(o.stats);
  if (!o.pools.empty()) pc.poolings = parse_pools(o.pools);
  if (!o.ns.empty()) pc.n_grid = o.ns;
  if (o.alpha_given) pc.alpha = o.alpha;
  if (o.reps_given) pc.null_reps = pc.alt_reps = o.reps;
  if (o.workers_given) pc.workers = o.workers;
  if (o.seed_given) {
    pc.seed.master = o.seed;
  } else if (file.contains("seed")) {
    pc.seed.master = file["seed"].get<std::uint64_t>();
  } else {
    pc.seed.master = resolve_seed(false, kDefaultSeed);
  }

  const gof::PowerTable table = gof::power_study(pc);

  json config = {{"alpha", pc.alpha},
                 {"alt_reps", pc.alt_reps},
                 {"config", o.config_path},
                 {"eta", pc.params.eta},
                 {"format", o.format},
                 {"n", json(pc.n_grid)},
                 {"null_reps", pc.null_reps},
                 {"output", o.output},
                 {"poolings", token_array(pc.poolings)},
                 {"seed", pc.seed.master},
                 {"sigma", pc.params.sigma},
                 {"statistics", token_array(pc.statistics)},
                 {"subcommand", "power"},
                 {"tau", pc.params.tau},
                 {"workers", pc.workers}};
  json rows = json::array();
  for (const gof::PowerRow& row : table.rows) {
    json cells = json::array();
    for (const gof::PowerCell& c : row.cells) {
      cells.push_back({{"pool", gof::to_token(c.pool)},
                       {"power", c.power},
                       {"se", c.se},
                       {"stat", gof::to_token(c.stat)}});
    }
    rows.push_back({{"cells", cells}, {"n", row.n}});
  }
  const json results = {{"rows", rows}};
  OutputTarget out;
  out.open(o.output);
  emit(*out.stream, o.format, config, results, [&](std::ostream& os) {
    os << "n";
    for (const gof::StatisticKind k : pc.statistics) {
      for (const gof::PoolingMode p : pc.poolings) {
        os << "," << gof::to_token(k) << "_CS_" << cs_index(p);
      }
    }
    os << "\n";
    for (const gof::PowerRow& row : table.rows) {
      os << row.n;
      for (const gof::PowerCell& c : row.cells) os << "," << fmt(c.power);
      os << "\n";
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct AsymOpts {
  std::string stat = "r2", config_path, output, format = "csv";
  int n = 100, reps = 10000, workers = 1;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
};

int run_asym(const AsymOpts& o) {
  const gof::AsymptoticKind kind = gof::asymptotic_kind_from_token(o.stat);
  const std::uint64_t seed = resolve_seed(o.seed_given, o.seed);

  gof::AsymptoticOptions opt;
  const json file = load_config_file(o.config_path);
  if (file.contains("epsilon")) opt.epsilon = file["epsilon"].get<double>();
  if (file.contains("truncation")) {
    opt.truncation = file["truncation"].get<int>();
  }
  if (file.contains("kernel")) {
    const std::string k = file["kernel"].get<std::string>();
    if (k == "exact") {
      opt.kernel = gof::KernelSource::exact_finite;
    } else if (k == "limit") {
      opt.kernel = kind == gof::AsymptoticKind::W2_avg
                       ? gof::KernelSource::limit_W
                       : gof::KernelSource::limit_R;
    } else {
      throw gof::Error("bad_selector", "kernel must be exact|limit, got " + k);
    }
  }
  if (file.contains("mean_calibrated")) {
    opt.mean_calibrated = file["mean_calibrated"].get<bool>();
  }
  if (file.contains("match_lambda1")) {
    opt.match_lambda1 = file["match_lambda1"].get<bool>();
  }

  gof::EigenSpectrum sl;
  const gof::WeightedChiSqLaw law = gof::asymptotic_null(kind, o.n, opt, &sl);

  std::vector<double> asym_draws =
      law.sample(gof::RunSeed{seed}, o.reps, o.workers);
  std::sort(asym_draws.begin(), asym_draws.end());
  const bool is_w = kind == gof::AsymptoticKind::W2_avg;
  const gof::StatisticKind base =
      is_w ? gof::StatisticKind::W2 : gof::StatisticKind::R2;
  const gof::PoolingMode pool = kind == gof::AsymptoticKind::R2
                                    ? gof::PoolingMode::None
                                    : gof::PoolingMode::Avg;
  std::vector<double> mc_draws = gof::simulate_null(
      base, pool, o.n, o.reps, gof::RunSeed{seed}, o.workers);
  std::sort(mc_draws.begin(), mc_draws.end());

  const json config = {{"config", o.config_path}, {"format", o.format},
                       {"n", o.n},                {"output", o.output},
                       {"reps", o.reps},          {"seed", seed},
                       {"stat", o.stat},          {"subcommand", "asym"},
                       {"workers", o.workers}};
  json spectrum = json::array();
  if (sl.count > 0) {
    for (int k = 0; k < sl.count; ++k) {
      spectrum.push_back({{"branch", gof::to_token(sl.branches[k])},
                          {"k", k + 1},
                          {"lambda", sl.lambdas[k]},
                          {"omega", sl.omegas[k]}});
    }
  } else {
    for (std::size_t k = 0; k < law.weights.size(); ++k) {
      if (law.weights[k] <= 0.0) continue;
      spectrum.push_back({{"branch", "kernel"},
                          {"k", static_cast<int>(k) + 1},
                          {"lambda", 1.0 / law.weights[k]},
                          {"omega", nullptr}});
    }
  }
  json qq = json::array();
  for (int i = 1; i <= 1000; ++i) {
    const double p = i / 1001.0;
    qq.push_back({{"p", p},
                  {"q_asym", order_quantile(asym_draws, p)},
                  {"q_mc", order_quantile(mc_draws, p)}});
  }
  const json results = {{"qq", qq}, {"spectrum", spectrum}};
  OutputTarget out;
  out.open(o.output);
  emit(*out.stream, o.format, config, results, [&](std::ostream& os) {
    os << "# section=spectrum\n";
    os << "k,branch,omega,lambda\n";
    for (const json& row : spectrum) {
      os << row["k"].get<int>() << "," << row["branch"].get<std::string>()
         << ",";
      if (!row["omega"].is_null()) os << fmt(row["omega"].get<double>());
      os << "," << fmt(row["lambda"].get<double>()) << "\n";
    }
    os << "# section=qq\n";
    os << "p,q_asym,q_mc\n";
    for (const json& row : qq) {
      os << fmt(row["p"].get<double>()) << ","
         << fmt(row["q_asym"].get<double>()) << ","
         << fmt(row["q_mc"].get<double>()) << "\n";
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct WeightOpts {
  int n = 10;
  std::string output, format = "csv";
};

int run_weights(const WeightOpts& o) {
  const gof::CovarianceMatrix sigma = gof::cov_Y_matrix(o.n);
  const gof::WeightVector w_opt = gof::optimal_weights(o.n, sigma);
  const gof::WeightVector w_ad = gof::ad_weights(o.n);
  const gof::FocalDirection focal = gof::focal_direction(w_ad, sigma);

  const json config = {{"format", o.format},
                       {"n", o.n},
                       {"output", o.output},
                       {"subcommand", "weights"}};
  json rows = json::array();
  for (int i = 1; i <= o.n; ++i) {
    const double mu = static_cast<double>(i) / (o.n + 1);
    rows.push_back({{"delta_ad", focal.delta[i - 1]},
                    {"i", i},
                    {"mu", mu},
                    {"w_opt", w_opt.w[i - 1]},
                    {"zeta_ad", focal.zeta[i - 1]}});
  }
  const json results = {{"rows", rows}};
  OutputTarget out;
  out.open(o.output);
  emit(*out.stream, o.format, config, results, [&](std::ostream& os) {
    os << "i,mu,w_opt,delta_ad,zeta_ad\n";
    for (const json& row : rows) {
      os << row["i"].get<int>() << "," << fmt(row["mu"].get<double>()) << ","
         << fmt(row["w_opt"].get<double>()) << ","
         << fmt(row["delta_ad"].get<double>()) << ","
         << fmt(row["zeta_ad"].get<double>()) << "\n";
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Goodness-of-fit testing with reweighted Anderson-Darling statistics, "
      "circularized pooling, exact-covariance optimal weights, and "
      "weighted-chi-square asymptotic laws"};
  app.require_subcommand(1);
  const std::vector<std::string> format_choices = {"csv", "json"};

  TestOpts t;
  CLI::App* test = app.add_subcommand(
      "test", "Test one data file against a fully specified null");
  test->add_option("--input", t.input, "whitespace-separated sample values")
      ->required();
  test->add_option("--null", t.null_spec,
                   "null spec: uniform | normal:MU,SIGMA | exponential:RATE | "
                   "quantile-file:PATH")
      ->capture_default_str();
  test->add_option("--stat", t.stat,
                   "statistic: w2|r2|ad|ad_classic|zhang_la|cvm|ks")
      ->capture_default_str();
  test->add_option("--pool", t.pool, "pooling: cs0|cs1|cs2")
      ->capture_default_str();
  test->add_option("--alpha", t.alpha, "test level")->capture_default_str();
  test->add_option("--reps", t.reps, "null Monte Carlo replicates")
      ->capture_default_str();
  test->add_option("--seed", t.seed, "master seed (GOF_SEED fallback)")
      ->capture_default_str();
  test->add_option("--workers", t.workers, "worker threads (no effect on results)")
      ->capture_default_str();
  test->add_option("--output", t.output, "output path (default stdout)");
  test->add_option("--format", t.format, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember(format_choices));

  CritvalOpts c;
  CLI::App* crit = app.add_subcommand(
      "critvals", "Tabulate Monte Carlo critical values");
  crit->add_option("--stat", c.stats, "statistics (default: all)")
      ->delimiter(',');
  crit->add_option("--pool", c.pools, "poolings (default: cs0,cs1,cs2)")
      ->delimiter(',');
  crit->add_option("--n", c.ns, "sample sizes (default: 10,...,300)")
      ->delimiter(',');
  crit->add_option("--alpha", c.alpha, "test level")->capture_default_str();
  crit->add_option("--reps", c.reps, "null replicates per cell")
      ->capture_default_str();
  crit->add_option("--seed", c.seed, "master seed (GOF_SEED fallback)")
      ->capture_default_str();
  crit->add_option("--workers", c.workers, "worker threads")
      ->capture_default_str();
  crit->add_option("--output", c.output, "output path (default stdout)");
  crit->add_option("--format", c.format, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember(format_choices));

  PowerOpts p;
  CLI::App* power = app.add_subcommand(
      "power", "Run the perturbation-alternative power study");
  power->add_option("--config", p.config_path,
                    "JSON config (statistics, poolings, n, alpha, null_reps, "
                    "alt_reps, tau, eta, sigma, seed, workers)");
  power->add_option("--stat", p.stats, "statistics (default: table layout)")
      ->delimiter(',');
  power->add_option("--pool", p.pools, "poolings (default: cs0,cs1,cs2)")
      ->delimiter(',');
  power->add_option("--n", p.ns, "sample sizes (default: 10,...,300)")
      ->delimiter(',');
  power->add_option("--alpha", p.alpha, "test level")->capture_default_str();
  power->add_option("--reps", p.reps, "replicates (null and alternative)")
      ->capture_default_str();
  power->add_option("--seed", p.seed, "master seed (GOF_SEED fallback)")
      ->capture_default_str();
  power->add_option("--workers", p.workers, "worker threads")
      ->capture_default_str();
  power->add_option("--output", p.output, "output path (default stdout)");
  power->add_option("--format", p.format, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember(format_choices));

  AsymOpts a;
  CLI::App* asym = app.add_subcommand(
      "asym", "Emit an asymptotic spectrum and its QQ table against "
              "finite-sample Monte Carlo");
  asym->add_option("--stat", a.stat, "law: r2|w2_avg|r2_avg")
      ->capture_default_str();
  asym->add_option("--n", a.n, "finite sample size")->capture_default_str();
  asym->add_option("--reps", a.reps, "draws for both quantile columns")
      ->capture_default_str();
  asym->add_option("--seed", a.seed, "master seed (GOF_SEED fallback)")
      ->capture_default_str();
  asym->add_option("--workers", a.workers, "worker threads")
      ->capture_default_str();
  asym->add_option("--config", a.config_path,
                   "JSON config (epsilon, truncation, kernel, "
                   "mean_calibrated, match_lambda1)");
  asym->add_option("--output", a.output, "output path (default stdout)");
  asym->add_option("--format", a.format, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember(format_choices));

  WeightOpts w;
  CLI::App* weights = app.add_subcommand(
      "weights", "Emit optimal weights and the AD focal direction");
  weights->add_option("--n", w.n, "sample size")->capture_default_str();
  weights->add_option("--output", w.output, "output path (default stdout)");
  weights->add_option("--format", w.format, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember(format_choices));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(test)) {
      t.seed_given = test->count("--seed") > 0;
      return run_test(t);
    }
    if (app.got_subcommand(crit)) {
      c.seed_given = crit->count("--seed") > 0;
      return run_critvals(c);
    }
    if (app.got_subcommand(power)) {
      p.seed_given = power->count("--seed") > 0;
      p.alpha_given = power->count("--alpha") > 0;
      p.reps_given = power->count("--reps") > 0;
      p.workers_given = power->count("--workers") > 0;
      return run_power(p);
    }
    if (app.got_subcommand(asym)) {
      a.seed_given = asym->count("--seed") > 0;
      return run_asym(a);
    }
    if (app.got_subcommand(weights)) return run_weights(w);
  } catch (const gof::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
