#ifndef VMLAB_EXPERIMENTS_HPP
#define VMLAB_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "f2.hpp"
#include "graph.hpp"
#include "json_io.hpp"
#include "matroid.hpp"
#include "minor_search.hpp"
#include "pairs.hpp"
#include "ramsey.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "walks.hpp"

namespace vmlab {

// ---------------------------------------------------------------------------
// Constants from their closed forms

/// 1/(2 log2(4/3)): vertex-minor universality threshold constant.
inline double vm_universality_constant() { return 1.0 / (2.0 * std::log2(4.0 / 3.0)); }
/// 1/(2 log2 3): random-graph lower bound constant.
inline double vm_lower_bound_constant() { return 1.0 / (2.0 * std::log2(3.0)); }
/// 2/log2(16/13): pivot-minor universality constant.
inline double pm_universality_constant() { return 2.0 / std::log2(16.0 / 13.0); }
/// 1/(2 log2(8/7)) + 1/4: bipartite and matroid universality constant.
inline double matroid_universality_constant() { return 1.0 / (2.0 * std::log2(8.0 / 7.0)) + 0.25; }

/// n = ceil(C k^2 + 16 k log2 k + 4 log2(1/eps)) for k >= 3.
inline std::size_t explicit_universal_order(std::size_t k, double eps) {
  require(k >= 3 && eps > 0 && eps < 1, Errc::range, "need k >= 3 and 0 < eps < 1");
  const double kk = static_cast<double>(k);
  return static_cast<std::size_t>(
      std::ceil(vm_universality_constant() * kk * kk + 16.0 * kk * std::log2(kk) + 4.0 * std::log2(1.0 / eps)));
}

inline Json closed_form_constants() {
  return {{"vm_universality", vm_universality_constant()},
          {"vm_lower_bound", vm_lower_bound_constant()},
          {"pm_universality", pm_universality_constant()},
          {"matroid_universality", matroid_universality_constant()}};
}

// ---------------------------------------------------------------------------
// Config and records

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  Json params = Json::object();
  std::string output;  // path prefix for <output>.json and <output>.csv; empty writes nothing
};

inline Json to_json(const ExperimentConfig& c) {
  return {{"experiment", c.experiment}, {"seed", c.seed}, {"params", c.params}, {"output", c.output}};
}

inline ExperimentConfig config_from_json(const Json& j) {
  try {
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.params = j.value("params", Json::object());
    c.output = j.value("output", std::string{});
    return c;
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("experiment config: ") + ex.what());
  }
}

struct ResultRecord {
  ExperimentConfig config;
  std::vector<Json> trials;  // flat objects, one per trial
  Json aggregates;
  double wall_seconds = 0;
  bool budget_exceeded = false;
};

/// Record without wall time; equal for equal configs.
inline Json to_json_stable(const ResultRecord& r) {
  return {{"config", to_json(r.config)},
          {"trials", r.trials},
          {"aggregates", r.aggregates},
          {"budget_exceeded", r.budget_exceeded}};
}

inline Json to_json(const ResultRecord& r) {
  Json j = to_json_stable(r);
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

/// Per-trial rows as CSV; array cells are joined with ';'.
inline std::string trials_csv(const ResultRecord& r) {
  std::ostringstream out;
  if (r.trials.empty()) return {};
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.trials.front().items()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << '\n';
  auto cell = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (!v.is_array()) return v.dump();
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
    return s;
  };
  for (const Json& row : r.trials) {
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << cell(row.value(keys[i], Json()));
    out << '\n';
  }
  return out.str();
}

inline void write_outputs(const ResultRecord& r) {
  if (r.config.output.empty()) return;
  std::ofstream js(r.config.output + ".json");
  std::ofstream csv(r.config.output + ".csv");
  if (!js || !csv) fail(Errc::io, "cannot open output files at " + r.config.output);
  js << to_json(r).dump(2) << '\n';
  csv << trials_csv(r);
}

namespace detail {

template <class T>
T param(const Json& p, const char* key, T fallback) {
  try {
    return p.value(key, fallback);
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("parameter ") + key + ": " + ex.what());
  }
}

template <class T>
T required_param(const Json& p, const char* key) {
  if (!p.contains(key)) fail(Errc::parse, std::string("missing parameter ") + key);
  return param<T>(p, key, T{});
}

/// rows[i] = trial(i) for i < trials, run on `jobs` threads. Output order is
/// the trial index, independent of scheduling.
inline std::vector<Json> run_trials(std::size_t trials, unsigned jobs, const std::function<Json(std::size_t)>& trial) {
  std::vector<Json> rows(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials && !failed; i = next++) {
      try {
        rows[i] = trial(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

inline Json interval_json(const stats::Interval& iv) { return {iv.lo, iv.hi}; }

inline double binomial(std::size_t n, std::size_t d) {
  double b = 1;
  for (std::size_t i = 0; i < d; ++i) b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return b;
}

// Adjacency words of a graph on at most 32 labels.
inline std::vector<std::uint32_t> rows32(const Graph& g) {
  require(g.capacity() <= 32, Errc::range, "needs at most 32 labels");
  std::vector<std::uint32_t> r(g.capacity());
  for (Label v : g.labels()) r[v] = static_cast<std::uint32_t>(g.row(v)[0]);
  return r;
}

// Edge pattern of G[U], U = {base, ..., base+k-1}, as a colex mask.
inline std::uint64_t pattern_on(const std::vector<std::uint32_t>& rows, std::size_t base, std::size_t k) {
  std::uint64_t m = 0;
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((rows[base + i] >> (base + j)) & 1U) m |= 1ULL << pair_index(i, j);
  return m;
}

// Patterns of G_J[U] for every J subset of [n], indexed by J's bitmask.
inline void all_gj_patterns(std::vector<std::uint32_t>& rows, std::size_t i, std::size_t n, std::size_t k,
                            std::uint32_t j, std::vector<std::uint64_t>& out) {
  if (i == n) {
    out[j] = pattern_on(rows, n, k);
    return;
  }
  all_gj_patterns(rows, i + 1, n, k, j, out);
  std::vector<std::uint32_t> next = rows;
  local_complement_rows(next, i);
  all_gj_patterns(next, i + 1, n, k, j | (1U << i), out);
}

inline std::vector<std::uint32_t> gj_rows(std::vector<std::uint32_t> rows, std::uint32_t j) {
  for (std::uint32_t m = j; m; m &= m - 1) local_complement_rows(rows, static_cast<std::size_t>(std::countr_zero(m)));
  return rows;
}

// In-place Walsh-Hadamard transform.
inline void wht(std::vector<std::int64_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t t = i; t < i + h; ++t) {
        const std::int64_t x = a[t], y = a[t + h];
        a[t] = x + y;
        a[t + h] = x - y;
      }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Universality rates

inline Json universality_aggregates(const Json& params, const std::vector<Json>& rows) {
  std::size_t universal = 0, budget = 0;
  for (const Json& r : rows) {
    const std::string o = r.at("outcome").get<std::string>();
    universal += o == "universal";
    budget += o == "budget";
  }
  const std::size_t decided = rows.size() - budget;
  const double level = detail::param(params, "confidence", 0.95);
  return {{"trials", rows.size()},
          {"universal", universal},
          {"budget_exceeded", budget},
          {"rate", decided ? static_cast<double>(universal) / static_cast<double>(decided) : 0.0},
          {"wilson", detail::interval_json(stats::wilson(universal, decided, level))},
          {"confidence", level}};
}

/// Fraction of G(n, 1/2) samples that are k-vertex-minor universal.
/// Params: n, k, trials, budget (nodes per vertex set), confidence.
inline ResultRecord run_universality(const ExperimentConfig& cfg, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto n = detail::required_param<std::size_t>(cfg.params, "n");
  const auto k = detail::required_param<std::size_t>(cfg.params, "k");
  const auto trials = detail::required_param<std::size_t>(cfg.params, "trials");
  SearchOptions opt;
  opt.node_budget = detail::param<std::uint64_t>(cfg.params, "budget", kDefaultNodeBudget);
  require(k >= 1 && k <= n, Errc::range, "need 1 <= k <= n");
  ResultRecord rec;
  rec.config = cfg;
  rec.trials = detail::run_trials(trials, jobs, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(cfg.seed, i);
    const UniversalityResult res = is_k_vm_universal(sample_uniform_graph(n, seed), k, opt);
    Json row = {{"trial", i}, {"seed", seed}, {"outcome", "universal"}, {"U", LabelList{}}};
    if (const auto* f = std::get_if<UniversalityFailure>(&res)) {
      row["outcome"] = "not_universal";
      row["U"] = f->u;
    } else if (const auto* b = std::get_if<BudgetExceeded>(&res)) {
      row["outcome"] = "budget";
      row["U"] = b->u;
    }
    return row;
  });
  rec.aggregates = universality_aggregates(cfg.params, rec.trials);
  rec.budget_exceeded = rec.aggregates.at("budget_exceeded").get<std::size_t>() > 0;
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline ResultRecord run_universality(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t budget,
                                     std::uint64_t seed, unsigned jobs = 1) {
  return run_universality({"universality", seed, {{"n", n}, {"k", k}, {"trials", trials}, {"budget", budget}}, ""},
                          jobs);
}

// ---------------------------------------------------------------------------
// Second moment of X = sum_J 1[G_J[U] = H]

inline Json second_moment_aggregates(const Json& params, const std::vector<Json>& rows) {
  const auto n = detail::required_param<std::size_t>(params, "n");
  const auto k = detail::required_param<std::size_t>(params, "k");
  const std::size_t pairs_k = pair_count(k);
  stats::Moments x;
  std::vector<stats::Moments> bins(n + 1);
  for (const Json& r : rows) {
    x.add(r.at("X").get<double>());
    const auto eq = r.at("equal_pairs").get<std::vector<std::uint64_t>>();
    for (std::size_t d = 0; d <= n; ++d)
      bins[d].add(static_cast<double>(eq[d]) / (std::ldexp(1.0, static_cast<int>(n)) * detail::binomial(n, d)));
  }
  const double target = std::ldexp(1.0, -static_cast<int>(pairs_k));
  Json bin_json = Json::array();
  bool bins_ok = true;
  for (std::size_t d = 0; d <= n; ++d) {
    Json b = {{"distance", d}, {"p_equal", bins[d].mean()}, {"sem", bins[d].sem()}};
    if (d > 2 * k) {
      const double bound = std::ldexp(1.0, static_cast<int>(2 * k) - static_cast<int>(pairs_k) - static_cast<int>(d));
      const bool ok = std::abs(bins[d].mean() - target) <= bound + 3 * bins[d].sem();
      bins_ok = bins_ok && ok;
      b["bound"] = bound;
      b["within"] = ok;
    }
    bin_json.push_back(b);
  }
  const double expected = std::ldexp(1.0, static_cast<int>(n) - static_cast<int>(pairs_k));
  return {{"trials", rows.size()},
          {"mean_X", x.mean()},
          {"var_X", x.variance()},
          {"sem_X", x.sem()},
          {"expected_X", expected},
          {"mean_within_3sigma", std::abs(x.mean() - expected) <= 3 * x.sem()},
          {"target_p_equal", target},
          {"bins", bin_json},
          {"bins_within", bins_ok}};
}

/// G ~ G(n + k, 1/2), V-hat = {0..n-1}, U = {n..n+k-1}, H given by the colex
/// mask `H` (default empty). Per trial: X and, for each distance d, the number
/// of ordered pairs (J, J') with |J ^ J'| = d and G_J[U] = G_J'[U].
/// Params: n (<= 18), k (<= 4), trials, H.
inline ResultRecord run_second_moment(const ExperimentConfig& cfg, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto n = detail::required_param<std::size_t>(cfg.params, "n");
  const auto k = detail::required_param<std::size_t>(cfg.params, "k");
  const auto trials = detail::required_param<std::size_t>(cfg.params, "trials");
  const auto h = detail::param<std::uint64_t>(cfg.params, "H", 0);
  require(n <= 18, Errc::budget, "second-moment runs need n <= 18");
  require(k >= 2 && k <= 4, Errc::budget, "second-moment runs need 2 <= k <= 4");
  const std::size_t patterns = std::size_t{1} << pair_count(k);
  require(h < patterns, Errc::range, "H mask outside the k-vertex pattern space");
  ResultRecord rec;
  rec.config = cfg;
  rec.trials = detail::run_trials(trials, jobs, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(cfg.seed, i);
    auto rows = detail::rows32(sample_uniform_graph(n + k, seed));
    std::vector<std::uint64_t> pat(std::size_t{1} << n);
    detail::all_gj_patterns(rows, 0, n, k, 0, pat);
    const auto x = static_cast<std::uint64_t>(std::count(pat.begin(), pat.end(), h));
    std::vector<std::uint64_t> eq(n + 1, 0);
    for (std::uint64_t p = 0; p < patterns; ++p) {
      std::vector<std::int64_t> f(pat.size());
      bool any = false;
      for (std::size_t j = 0; j < pat.size(); ++j) any |= (f[j] = pat[j] == p) != 0;
      if (!any) continue;
      // Autocorrelation sum_J f(J) f(J ^ D) through the transform.
      detail::wht(f);
      for (auto& v : f) v *= v;
      detail::wht(f);
      for (std::size_t dmask = 0; dmask < f.size(); ++dmask)
        eq[static_cast<std::size_t>(std::popcount(dmask))] += static_cast<std::uint64_t>(f[dmask] >> n);
    }
    return Json{{"trial", i}, {"seed", seed}, {"X", x}, {"equal_pairs", eq}};
  });
  rec.aggregates = second_moment_aggregates(cfg.params, rec.trials);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline ResultRecord run_second_moment(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed,
                                      unsigned jobs = 1) {
  return run_second_moment({"second_moment", seed, {{"n", n}, {"k", k}, {"trials", trials}}, ""}, jobs);
}

inline Json symdiff_aggregates(const Json& params, const std::vector<Json>& rows) {
  const auto k = detail::required_param<std::size_t>(params, "k");
  const std::size_t patterns = std::size_t{1} << pair_count(k);
  std::vector<std::size_t> table(patterns * patterns, 0);
  for (const Json& r : rows) ++table[r.at("a").get<std::size_t>() * patterns + r.at("b").get<std::size_t>()];
  const auto chi = stats::chi_square_independence(table, patterns, patterns);
  const double alpha = detail::param(params, "alpha", 0.01);
  return {{"trials", rows.size()},
          {"table", table},
          {"chi_square", chi.statistic},
          {"dof", chi.dof},
          {"p_value", chi.p_value},
          {"alpha", alpha},
          {"independent", chi.p_value >= alpha}};
}

/// Contingency test that G_J[U] and (G_J ^ G_J')[U] are independent for fixed
/// J, J' (bitmasks over V-hat). Params: n, k, trials, J, J2, alpha.
inline ResultRecord run_symdiff_independence(const ExperimentConfig& cfg, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto n = detail::required_param<std::size_t>(cfg.params, "n");
  const auto k = detail::required_param<std::size_t>(cfg.params, "k");
  const auto trials = detail::required_param<std::size_t>(cfg.params, "trials");
  const auto j1 = detail::required_param<std::uint32_t>(cfg.params, "J");
  const auto j2 = detail::required_param<std::uint32_t>(cfg.params, "J2");
  require(n + k <= 32 && k >= 2 && k <= 4, Errc::range, "need n + k <= 32 and 2 <= k <= 4");
  require(n == 32 || ((j1 | j2) >> n) == 0, Errc::range, "J and J2 must lie inside [n]");
  ResultRecord rec;
  rec.config = cfg;
  rec.trials = detail::run_trials(trials, jobs, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(cfg.seed, i);
    const auto rows = detail::rows32(sample_uniform_graph(n + k, seed));
    const std::uint64_t a = detail::pattern_on(detail::gj_rows(rows, j1), n, k);
    const std::uint64_t b = detail::pattern_on(detail::gj_rows(rows, j2), n, k);
    return Json{{"trial", i}, {"seed", seed}, {"a", a}, {"b", a ^ b}};
  });
  rec.aggregates = symdiff_aggregates(cfg.params, rec.trials);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Walk mixing tables

inline Json walk_mix_aggregates(const std::vector<Json>& rows) {
  std::size_t within = 0;
  for (const Json& row : rows) within += row.at("within").get<bool>();
  return {{"rows", rows.size()}, {"within", within}, {"all_within", within == rows.size()}};
}

/// Exact L-infinity distance after Com^m1 Piv^m2 on k vertices for every
/// (m1, m2) with m1 + 2 m2 in (2k, 2k + extra], against the bound
/// 2^(2k - C(k,2) - m); plus bPiv on ell x r for t = 1..t_max against 2^-t.
/// Params: k, extra, ell, r, t_max. Each table row is one trial.
inline ResultRecord run_walk_mix(const ExperimentConfig& cfg, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = detail::param<std::size_t>(cfg.params, "k", 3);
  const auto extra = detail::param<std::size_t>(cfg.params, "extra", 8);
  const auto ell = detail::param<std::size_t>(cfg.params, "ell", 0);
  const auto r = detail::param<std::size_t>(cfg.params, "r", 0);
  const auto t_max = detail::param<std::size_t>(cfg.params, "t_max", 0);
  struct Item {
    bool bip;
    std::size_t a, b;
  };
  std::vector<Item> items;
  for (std::size_t m = 2 * k + 1; m <= 2 * k + extra; ++m)
    for (std::size_t m2 = 0; 2 * m2 <= m; ++m2) items.push_back({false, m - 2 * m2, m2});
  if (ell > 0 && r > 0)
    for (std::size_t t = 1; t <= t_max; ++t) items.push_back({true, t, 0});
  const WalkShape plain = WalkShape::plain(k);
  ResultRecord rec;
  rec.config = cfg;
  rec.trials = detail::run_trials(items.size(), jobs, [&](std::size_t i) {
    const Item& it = items[i];
    std::vector<WalkKind> steps;
    Dyadic bound;
    WalkShape shape = plain;
    if (it.bip) {
      shape = WalkShape::bip(ell, r);
      steps.assign(it.a, WalkKind::bpiv);
      bound = bpiv_mixing_bound(it.a);
    } else {
      steps.assign(it.a, WalkKind::com);
      steps.insert(steps.end(), it.b, WalkKind::piv);
      bound = com_piv_mixing_bound(k, it.a, it.b);
    }
    const Dyadic dist = linf_distance_to_uniform(apply_walk(GraphDistribution::point_mass(shape), steps));
    return Json{{"walk", it.bip ? "bpiv" : "com_piv"},
                {"m1", it.bip ? 0 : it.a},
                {"m2", it.bip ? 0 : it.b},
                {"t", it.bip ? it.a : 0},
                {"distance", dist.to_string()},
                {"distance_value", dist.to_double()},
                {"bound", bound.to_string()},
                {"within", dist <= bound}};
  });
  rec.aggregates = walk_mix_aggregates(rec.trials);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Matroid experiments

inline Json matroid_aggregates(const Json& params, const std::vector<Json>& rows) {
  const std::string mode = detail::required_param<std::string>(params, "mode");
  if (mode == "normalization") {
    bool ok = true;
    for (const Json& r : rows) ok = ok && r.at("sum").get<std::string>() == r.at("expected").get<std::string>();
    return {{"cases", rows.size()}, {"all_exact", ok}};
  }
  if (mode == "basis_concentration") {
    const auto r = detail::required_param<std::size_t>(params, "r");
    const auto n = detail::required_param<std::size_t>(params, "n");
    // E[b] is exact: sum of b over all rank-r matroids over their number.
    BigCount z = 1;
    for (std::size_t i = 0; i < r; ++i) z = z * (n - i) / (i + 1);
    z <<= r * (n - r);
    const double mean_exact = Rational(z, gaussian_binomial(n, r)).convert_to<double>();
    stats::Moments b, b2;
    for (const Json& row : rows) {
      const double x = row.at("bases").get<double>();
      b.add(x);
      b2.add(x * x);
    }
    const double e2 = mean_exact * mean_exact;
    const double ratio = b2.mean() / e2 - 1;
    const double sigma = b2.sem() / e2;
    const double bound = basis_concentration_bound(r, n);
    return {{"samples", rows.size()},
            {"mean_exact", mean_exact},
            {"mean_sampled", b.mean()},
            {"var_over_mean_sq", ratio},
            {"sigma", sigma},
            {"bound", bound},
            {"within", ratio <= bound + 3 * sigma}};
  }
  if (mode == "rank_distribution") {
    const auto n = detail::required_param<std::size_t>(params, "n");
    std::vector<std::size_t> counts(n + 1, 0);
    for (const Json& row : rows) ++counts[row.at("rank").get<std::size_t>()];
    std::vector<double> probs;
    for (const auto& [r, p] : rank_distribution_uniform_matroid(n)) probs.push_back(p.convert_to<double>());
    // Merge thin tails so every expected count is at least 5.
    std::vector<std::size_t> obs_m;
    std::vector<double> prob_m;
    const double total = static_cast<double>(rows.size());
    std::size_t acc_o = 0;
    double acc_p = 0;
    for (std::size_t r = 0; r <= n; ++r) {
      acc_o += counts[r];
      acc_p += probs[r];
      if (acc_p * total >= 5 || r == n) {
        obs_m.push_back(acc_o);
        prob_m.push_back(acc_p);
        acc_o = 0;
        acc_p = 0;
      }
    }
    if (prob_m.size() >= 2 && prob_m.back() * total < 5) {
      prob_m[prob_m.size() - 2] += prob_m.back();
      obs_m[obs_m.size() - 2] += obs_m.back();
      prob_m.pop_back();
      obs_m.pop_back();
    }
    const auto chi = stats::chi_square_gof(obs_m, prob_m);
    const double alpha = detail::param(params, "alpha", 0.01);
    return {{"samples", rows.size()}, {"counts", counts},       {"expected", probs},
            {"chi_square", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value},
            {"alpha", alpha},           {"fits", chi.p_value >= alpha}};
  }
  fail(Errc::parse, "unknown matroid mode " + mode);
}

/// mode = "normalization": cases [[n, r], ...], exact sum of basis counts over
///   all rank-r matroids on n against C(n, r) 2^(r(n-r)).
/// mode = "basis_concentration": r, n, samples.
/// mode = "rank_distribution": n, samples, alpha (uniform subspace sampler).
inline ResultRecord run_matroid_experiments(const ExperimentConfig& cfg, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string mode = detail::required_param<std::string>(cfg.params, "mode");
  ResultRecord rec;
  rec.config = cfg;
  if (mode == "normalization") {
    const auto cases = detail::required_param<std::vector<std::vector<std::size_t>>>(cfg.params, "cases");
    rec.trials = detail::run_trials(cases.size(), jobs, [&](std::size_t i) {
      require(cases[i].size() == 2, Errc::parse, "normalization cases are [n, r] pairs");
      const std::size_t n = cases[i][0], r = cases[i][1];
      BigCount sum = 0;
      for (const auto& m : all_binary_matroids(r, n)) sum += count_bases(m);
      BigCount expected = 1;
      for (std::size_t t = 0; t < r; ++t) expected = expected * (n - t) / (t + 1);
      expected <<= r * (n - r);
      return Json{{"n", n}, {"r", r}, {"sum", sum.str()}, {"expected", expected.str()}};
    });
  } else if (mode == "basis_concentration") {
    const auto r = detail::required_param<std::size_t>(cfg.params, "r");
    const auto n = detail::required_param<std::size_t>(cfg.params, "n");
    const auto samples = detail::required_param<std::size_t>(cfg.params, "samples");
    rec.trials = detail::run_trials(samples, jobs, [&](std::size_t i) {
      const std::uint64_t seed = trial_seed(cfg.seed, i);
      const BigCount b = count_bases(sample_uniform_matroid(r, n, seed));
      return Json{{"trial", i}, {"seed", seed}, {"bases", b.convert_to<std::uint64_t>()}};
    });
  } else if (mode == "rank_distribution") {
    const auto n = detail::required_param<std::size_t>(cfg.params, "n");
    const auto samples = detail::required_param<std::size_t>(cfg.params, "samples");
    rec.trials = detail::run_trials(samples, jobs, [&](std::size_t i) {
      const std::uint64_t seed = trial_seed(cfg.seed, i);
      return Json{{"trial", i}, {"seed", seed}, {"rank", sample_uniform_subspace_matroid(n, seed).rank()}};
    });
  } else {
    fail(Errc::parse, "unknown matroid mode " + mode);
  }
  rec.aggregates = matroid_aggregates(cfg.params, rec.trials);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Dispatch

/// Aggregates recomputed from stored per-trial rows.
inline Json recompute_aggregates(const ExperimentConfig& cfg, const std::vector<Json>& rows) {
  if (cfg.experiment == "universality") return universality_aggregates(cfg.params, rows);
  if (cfg.experiment == "second_moment") return second_moment_aggregates(cfg.params, rows);
  if (cfg.experiment == "symdiff_independence") return symdiff_aggregates(cfg.params, rows);
  if (cfg.experiment == "matroid") return matroid_aggregates(cfg.params, rows);
  if (cfg.experiment == "walk_mix") return walk_mix_aggregates(rows);
  fail(Errc::parse, "unknown experiment " + cfg.experiment);
}

inline ResultRecord run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1) {
  if (cfg.experiment == "universality") return run_universality(cfg, jobs);
  if (cfg.experiment == "second_moment") return run_second_moment(cfg, jobs);
  if (cfg.experiment == "symdiff_independence") return run_symdiff_independence(cfg, jobs);
  if (cfg.experiment == "matroid") return run_matroid_experiments(cfg, jobs);
  if (cfg.experiment == "walk_mix") return run_walk_mix(cfg, jobs);
  fail(Errc::parse, "unknown experiment " + cfg.experiment);
}

}  // namespace vmlab

#endif  // VMLAB_EXPERIMENTS_HPP
