#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <sstream>
#include <vector>

#include "vmlab/experiments.hpp"
#include "vmlab/json_io.hpp"
#include "vmlab/stats.hpp"

using namespace vmlab;

namespace {

// Pattern of G_J[U] computed on a real Graph.
std::uint64_t brute_pattern(const Graph& g, std::size_t n, std::size_t k, std::uint32_t j) {
  LabelList base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = i;
  const Graph gj = build_GJ(g, base, j);
  std::uint64_t m = 0;
  for (std::size_t b = 1; b < k; ++b)
    for (std::size_t a = 0; a < b; ++a)
      if (gj.has_edge(n + a, n + b)) m |= 1ULL << pair_index(a, b);
  return m;
}

}  // namespace

TEST(Stats, WilsonAndChiSquareReferenceValues) {
  const auto iv = stats::wilson(0, 10);
  EXPECT_DOUBLE_EQ(iv.lo, 0.0);
  EXPECT_NEAR(iv.hi, 0.2775, 1e-4);
  const auto mid = stats::wilson(50, 100);
  EXPECT_NEAR(mid.lo, 0.4038, 1e-4);
  EXPECT_NEAR(mid.hi, 0.5962, 1e-4);
  EXPECT_NEAR(stats::chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(stats::chi_square_sf(9.21034037197618, 2), 0.01, 1e-9);
  const std::vector<std::size_t> proportional{10, 20, 30, 60};
  EXPECT_NEAR(stats::chi_square_independence(proportional, 2, 2).statistic, 0.0, 1e-12);
  const std::vector<std::size_t> skewed{10, 20, 20, 10};
  EXPECT_NEAR(stats::chi_square_independence(skewed, 2, 2).statistic, 20.0 / 3.0, 1e-12);
}

TEST(Stats, Moments) {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto m = stats::moments_of(xs);
  EXPECT_DOUBLE_EQ(m.mean(), 2.5);
  EXPECT_DOUBLE_EQ(m.variance(), 5.0 / 3.0);
}

TEST(Experiments, ClosedFormConstants) {
  EXPECT_NEAR(vm_universality_constant(), 1.205, 5e-4);
  EXPECT_NEAR(vm_lower_bound_constant(), 0.315, 5e-4);
  EXPECT_NEAR(pm_universality_constant(), 6.68, 5e-3);
  EXPECT_NEAR(matroid_universality_constant(), 2.85, 5e-3);
  // 1.2047 * 9 + 48 log2 3 + 4 log2 100 = 10.84 + 76.08 + 26.58
  EXPECT_EQ(explicit_universal_order(3, 0.01), 114U);
}

TEST(JsonIo, RoundTrips) {
  const Graph g = sample_uniform_graph(7, 3);
  EXPECT_EQ(graph_from_json(to_json(g)), g);
  MinorWitness w{{Step::single(2), Step::pair(4, 1)}, {0, 5}};
  EXPECT_EQ(witness_from_json(to_json(w)), w);
  EXPECT_EQ(to_json(w).dump(), R"({"deletions":[0,5],"ops":[[2],[1,4]]})");
  const auto b = sample_uniform_bipartite(3, 4, 8);
  EXPECT_EQ(obg_from_json(to_json(b)), b);
  const auto m = sample_uniform_matroid(3, 7, 4);
  EXPECT_EQ(matroid_from_json(to_json(m)), m);
  const auto mu = apply_walk_step(GraphDistribution::point_mass(WalkShape::plain(3)), WalkKind::piv);
  EXPECT_EQ(distribution_from_json(to_json(mu)), mu);
  const auto nu = apply_walk_step(GraphDistribution::point_mass(WalkShape::bip(2, 2)), WalkKind::bpiv);
  EXPECT_EQ(distribution_from_json(to_json(nu)), nu);
}

TEST(JsonIo, MalformedInputIsParseError) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::precondition;
  };
  EXPECT_EQ(code([] { graph_from_json(Json::parse(R"({"labels":[0]})")); }), Errc::parse);
  EXPECT_EQ(code([] { witness_from_json(Json::parse(R"({"ops":[[1,2,3]],"deletions":[]})")); }), Errc::parse);
  EXPECT_EQ(code([] {
              distribution_from_json(Json::parse(
                  R"({"kind":"graph","k":1,"denominator_exponent":0,"numerators":["x"]})"));
            }),
            Errc::parse);
  EXPECT_EQ(code([] { config_from_json(Json::parse(R"({"seed":1})")); }), Errc::parse);
}

TEST(Experiments, UniversalityTrivialAndDeterministic) {
  const auto r = run_universality(3, 1, 20, 1000, 1);
  EXPECT_DOUBLE_EQ(r.aggregates.at("rate").get<double>(), 1.0);
  const auto a = run_universality(7, 2, 30, 100000, 5, 1);
  const auto b = run_universality(7, 2, 30, 100000, 5, 3);
  EXPECT_EQ(to_json_stable(a), to_json_stable(b));
  EXPECT_EQ(recompute_aggregates(a.config, a.trials), a.aggregates);
  const auto iv = a.aggregates.at("wilson");
  const double rate = a.aggregates.at("rate").get<double>();
  EXPECT_LE(iv[0].get<double>(), rate);
  EXPECT_GE(iv[1].get<double>(), rate);
}

TEST(Experiments, SecondMomentRowsMatchBruteForce) {
  const std::size_t n = 6, k = 3;
  const auto rec = run_second_moment(n, k, 4, 99);
  for (std::size_t t = 0; t < 4; ++t) {
    const Graph g = sample_uniform_graph(n + k, trial_seed(99, t));
    std::vector<std::uint64_t> pat(1U << n);
    for (std::uint32_t j = 0; j < pat.size(); ++j) pat[j] = brute_pattern(g, n, k, j);
    std::vector<std::uint64_t> eq(n + 1, 0);
    for (std::uint32_t a = 0; a < pat.size(); ++a)
      for (std::uint32_t b = 0; b < pat.size(); ++b)
        if (pat[a] == pat[b]) ++eq[static_cast<std::size_t>(std::popcount(a ^ b))];
    const auto x = static_cast<std::uint64_t>(std::count(pat.begin(), pat.end(), 0U));
    EXPECT_EQ(rec.trials[t].at("X").get<std::uint64_t>(), x);
    EXPECT_EQ(rec.trials[t].at("equal_pairs").get<std::vector<std::uint64_t>>(), eq);
  }
}

TEST(Experiments, SecondMomentMeanSmall) {
  const auto rec = run_second_moment(8, 2, 400, 7);
  EXPECT_TRUE(rec.aggregates.at("mean_within_3sigma").get<bool>()) << rec.aggregates.dump();
  EXPECT_DOUBLE_EQ(rec.aggregates.at("expected_X").get<double>(), 128.0);
  EXPECT_EQ(recompute_aggregates(rec.config, rec.trials), rec.aggregates);
}

TEST(Experiments, SymdiffIndependenceSmall) {
  const ExperimentConfig cfg{"symdiff_independence", 3,
                             {{"n", 8}, {"k", 2}, {"trials", 4000}, {"J", 0b01010101}, {"J2", 0b00001110}}, ""};
  const auto rec = run_experiment(cfg);
  EXPECT_TRUE(rec.aggregates.at("independent").get<bool>()) << rec.aggregates.dump();
}

TEST(Experiments, MatroidModes) {
  const ExperimentConfig norm{"matroid", 0, {{"mode", "normalization"}, {"cases", {{3, 1}, {3, 2}, {4, 2}}}}, ""};
  EXPECT_TRUE(run_experiment(norm).aggregates.at("all_exact").get<bool>());
  const ExperimentConfig rank{"matroid", 4, {{"mode", "rank_distribution"}, {"n", 6}, {"samples", 3000}}, ""};
  const auto r = run_experiment(rank, 2);
  EXPECT_TRUE(r.aggregates.at("fits").get<bool>()) << r.aggregates.dump();
  const ExperimentConfig conc{"matroid", 5, {{"mode", "basis_concentration"}, {"r", 2}, {"n", 6}, {"samples", 2000}}, ""};
  const auto c = run_experiment(conc);
  EXPECT_TRUE(c.aggregates.at("within").get<bool>()) << c.aggregates.dump();
  EXPECT_EQ(recompute_aggregates(c.config, c.trials), c.aggregates);
}

TEST(Experiments, WalkMixTable) {
  const ExperimentConfig cfg{"walk_mix", 0, {{"k", 3}, {"extra", 4}, {"ell", 2}, {"r", 3}, {"t_max", 6}}, ""};
  const auto rec = run_experiment(cfg, 2);
  EXPECT_TRUE(rec.aggregates.at("all_within").get<bool>());
  // m in 7..10 gives 4 + 5 + 5 + 6 recipes, plus 6 bPiv rows.
  EXPECT_EQ(rec.trials.size(), 26U);
}

TEST(Experiments, CsvHasOneLinePerTrial) {
  const auto rec = run_universality(5, 2, 6, 100000, 2);
  const std::string csv = trials_csv(rec);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "U,outcome,seed,trial");
}

TEST(Experiments, UnknownExperimentIsParseError) {
  EXPECT_THROW(run_experiment({"nope", 0, Json::object(), ""}), Error);
  EXPECT_THROW(run_experiment({"universality", 0, {{"n", 5}}, ""}), Error);
}
