// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "vmlab/vmlab.hpp"

using namespace vmlab;

namespace {

// Pinned tolerances and sizes.
constexpr double kSigmas = 3.0;
constexpr double kChiAlpha = 0.01;
constexpr double kUniversality2Floor = 0.95;
constexpr std::size_t kSecondMomentTrials = 1000;
constexpr std::size_t kConcentrationSamples = 10000;
constexpr std::size_t kReorderInstances = 10000;
constexpr std::size_t kGadgetHosts = 1000;
constexpr std::size_t kAlignTrials = 100000;
constexpr std::size_t kAlignM = 10;

enum class Verdict { pass, fail, inconclusive };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome judge(bool ok, std::string detail) { return {ok ? Verdict::pass : Verdict::fail, std::move(detail)}; }

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Mask of g restricted to the ascending label list `keep`, colex over positions.
std::uint64_t induced_mask(const Graph& g, const LabelList& keep) {
  std::uint64_t m = 0;
  for (std::size_t j = 1; j < keep.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.has_edge(keep[i], keep[j])) m |= 1ULL << pair_index(i, j);
  return m;
}

LabelList labels_of(std::uint64_t bits) {
  LabelList out;
  for (Label v = 0; bits; ++v, bits >>= 1)
    if (bits & 1U) out.push_back(v);
  return out;
}

Graph replay(Graph g, const MinorWitness& w) {
  for (const Step& s : w.ops) apply_step(g, s);
  return delete_vertices(g, w.deletions);
}

// 1. Characters are eigenvectors of Com and Piv.
Outcome spectral_identity() {
  std::size_t checked = 0, bad = 0;
  for (std::size_t k : {3, 4}) {
    const WalkShape shape = WalkShape::plain(k);
    for (std::uint64_t g = 0; g < shape.states(); ++g) {
      const auto chi = GraphDistribution::character(shape, g);
      const std::size_t rank = f2::rank_of_words(adjacency_rows_from_mask(k, g));
      BigInt s = 0;
      for (std::uint64_t sub = 0; sub < (1ULL << k); ++sub) s += (std::popcount(g & clique_cells(k, sub)) & 1) ? -1 : 1;
      const Dyadic lam_com(s, k);
      const Dyadic lam_piv = Dyadic::pow2_neg(rank);
      bad += !(apply_walk_step(chi, WalkKind::com) == chi.scaled(lam_com));
      bad += !(apply_walk_step(chi, WalkKind::piv) == chi.scaled(lam_piv));
      bad += !(character_eigenvalue(shape, g, WalkKind::com) == lam_com);
      bad += !(character_eigenvalue(shape, g, WalkKind::piv) == lam_piv);
      ++checked;
    }
  }
  return judge(bad == 0, std::to_string(checked) + " graphs, " + std::to_string(bad) + " mismatches");
}

// 2. (lambda_Com)^2 <= lambda_Piv.
Outcome eigenvalue_inequality() {
  std::size_t checked = 0, bad = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    const WalkShape shape = WalkShape::plain(k);
    for (std::uint64_t g = 0; g < shape.states(); ++g, ++checked) {
      const Dyadic c = character_eigenvalue(shape, g, WalkKind::com);
      bad += !(c * c <= character_eigenvalue(shape, g, WalkKind::piv));
    }
  }
  return judge(bad == 0, std::to_string(checked) + " graphs, " + std::to_string(bad) + " violations");
}

// Number of alternating k x k matrices over F2 of rank 2h.
BigInt alternating_rank_count(std::size_t k, std::size_t h) {
  BigInt num = 1, den = 1;
  for (std::size_t i = 1; i <= h; ++i) {
    num <<= 2 * i - 2;
    den *= (BigInt(1) << (2 * i)) - 1;
  }
  for (std::size_t i = 0; i < 2 * h; ++i) num *= (BigInt(1) << (k - i)) - 1;
  return num / den;
}

// 3. Rank census.
Outcome rank_census_check() {
  std::size_t bad = 0;
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto census = rank_census(k);
    for (auto [r, count] : census) {
      if (r % 2 == 1) {
        bad += count != 0;
        continue;
      }
      bad += BigInt(count) != alternating_rank_count(k, r / 2);
      if (r >= 1) bad += r * k - 2 < 64 && count > (1ULL << (r * k - 2));
    }
  }
  return judge(bad == 0, "k <= 6, " + std::to_string(bad) + " bad counts");
}

// 4. Exact mixing bounds.
Outcome mixing() {
  std::size_t rows = 0, bad = 0;
  for (std::size_t k : {3, 4}) {
    const auto rec = run_walk_mix({"walk_mix", 0, {{"k", k}, {"extra", 8}}, ""}, jobs());
    rows += rec.trials.size();
    bad += !rec.aggregates.at("all_within").get<bool>();
  }
  for (std::size_t ell = 1; ell <= 12; ++ell)
    for (std::size_t r = 1; ell * r <= 12; ++r) {
      auto mu = GraphDistribution::point_mass(WalkShape::bip(ell, r));
      for (std::size_t t = 1; t <= 8; ++t, ++rows) {
        mu = apply_walk_step(mu, WalkKind::bpiv);
        bad += !(linf_distance_to_uniform(mu) <= bpiv_mixing_bound(t));
      }
    }
  return judge(bad == 0, std::to_string(rows) + " walks, " + std::to_string(bad) + " over bound");
}

// 5. Recursion engine against orbit enumeration.
Outcome minor_engine_oracle() {
  std::size_t pairs = 0, bad = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t gm = 0; gm < (1ULL << pair_count(n)); ++gm) {
      const Graph g = Graph::from_edge_mask(n, gm);
      std::set<std::pair<std::uint64_t, std::uint64_t>> vm_reach, pm_reach;
      for (const auto& [orbit, reach] : {std::pair{local_equivalence_orbit(g), &vm_reach},
                                         std::pair{pivot_orbit(g), &pm_reach}})
        for (const Graph& x : orbit)
          for (std::uint64_t sub = 0; sub < (1ULL << n); ++sub) reach->emplace(sub, induced_mask(x, labels_of(sub)));
      for (std::uint64_t sub = 0; sub < (1ULL << n); ++sub) {
        const LabelList keep = labels_of(sub);
        for (std::uint64_t hm = 0; hm < (1ULL << pair_count(keep.size())); ++hm, ++pairs) {
          Graph h = Graph::on_labels(n, keep);
          for (std::size_t j = 1; j < keep.size(); ++j)
            for (std::size_t i = 0; i < j; ++i)
              if ((hm >> pair_index(i, j)) & 1U) h.add_edge(keep[i], keep[j]);
          const auto vw = is_vertex_minor(g, h);
          const auto pw = is_pivot_minor(g, h);
          bad += vw.has_value() != vm_reach.count({sub, hm});
          bad += pw.has_value() != pm_reach.count({sub, hm});
          if (vw) bad += !(replay(g, *vw) == h);
          if (pw) bad += !(replay(g, *pw) == h);
        }
      }
    }
  return judge(bad == 0, std::to_string(pairs) + " (G, H) pairs, " + std::to_string(bad) + " disagreements");
}

// 6. Vertex-minor Ramsey numbers.
Outcome vm_ramsey_values() {
  std::vector<std::size_t> values;
  for (std::size_t k = 1; k <= 3; ++k) values.push_back(vm_ramsey(k, jobs()).value);
  const auto r3 = vm_ramsey(3, jobs());
  const std::uint64_t wheel = canonical_mask(wheel_graph(6));
  bool ok = values == std::vector<std::size_t>{1, 3, 7};
  ok = ok && std::find(r3.certificates.begin(), r3.certificates.end(), wheel) != r3.certificates.end();
  // Independent confirmation with the recursion engine.
  ok = ok && !contains_independent_vm(wheel_graph(6), 3, VmEngine::recursion);
  for (std::uint64_t c : r3.certificates) ok = ok && !contains_independent_vm(Graph::from_edge_mask(6, c), 3, VmEngine::recursion);
  for (std::uint64_t m : graph_classes(7)) ok = ok && contains_independent_vm(Graph::from_edge_mask(7, m), 3, VmEngine::recursion);
  return judge(ok, "R_vm(1..3) = " + std::to_string(values[0]) + "," + std::to_string(values[1]) + "," +
                       std::to_string(values[2]) + ", " + std::to_string(r3.certificates.size()) +
                       " six-vertex certificates incl. the wheel");
}

using ObgKey = std::tuple<LabelList, LabelList, std::vector<std::pair<Label, Label>>>;
ObgKey key(const OrderedBipartiteGraph& b) { return {b.left(), b.right(), b.edges()}; }

std::vector<OrderedBipartiteGraph> ordered_pivot_orbit(const OrderedBipartiteGraph& b) {
  std::map<ObgKey, OrderedBipartiteGraph> seen{{key(b), b}};
  std::vector<OrderedBipartiteGraph> todo{b};
  while (!todo.empty()) {
    const auto cur = todo.back();
    todo.pop_back();
    for (auto [l, r] : cur.edges()) {
      auto nx = pivot(cur, l, r);
      if (seen.emplace(key(nx), nx).second) todo.push_back(nx);
    }
  }
  std::vector<OrderedBipartiteGraph> out;
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

LabelList pick(const LabelList& s, std::uint64_t bits) {
  LabelList t;
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((bits >> i) & 1U) t.push_back(s[i]);
  return t;
}

// 7. Matroid / fundamental-graph bridge.
Outcome matroid_bridge() {
  std::size_t matroids = 0, bad = 0;
  for (std::size_t n = 0; n <= 6; ++n)
    for (std::size_t r = 0; r <= n; ++r)
      for (const auto& m : all_binary_matroids(r, n)) {
        ++matroids;
        const auto g = fundamental_graph(m, greedy_basis(m));
        bad += !(matroid_from_fundamental(g) == m);
        for (auto [u, v] : g.edges()) bad += !(matroid_from_fundamental(pivot(g, u, v)) == m);
        for (Label e : g.labels()) {
          const auto expect = g.in_left(e) ? delete_element(m, e) : contract_element(m, e);
          bad += !(matroid_from_fundamental(delete_vertices(g, LabelList{e})) == expect);
        }
        // Ordered pivot-minors of G are exactly the fundamental graphs of minors of M.
        std::set<ObgKey> from_graph, from_matroid;
        for (const auto& h : ordered_pivot_orbit(g))
          for (std::uint64_t s = 0; s < (1ULL << h.order()); ++s) from_graph.insert(key(induced_subgraph(h, pick(h.labels(), s))));
        std::set<std::pair<LabelList, std::vector<std::uint64_t>>> minors;
        std::uint64_t pow3 = 1;
        for (std::size_t i = 0; i < n; ++i) pow3 *= 3;
        for (std::uint64_t code = 0; code < pow3; ++code) {
          BinaryMatroid cur = m;
          std::uint64_t c = code;
          for (std::size_t j = 0; j < n; ++j, c /= 3) {
            if (c % 3 == 1) cur = delete_element(cur, m.ground()[j]);
            if (c % 3 == 2) cur = contract_element(cur, m.ground()[j]);
          }
          if (!minors.emplace(cur.ground(), cur.rref()).second) continue;
          for (std::uint64_t s = 0; s < (1ULL << cur.size()); ++s) {
            const LabelList b = pick(cur.ground(), s);
            if (cur.is_basis(b)) from_matroid.insert(key(fundamental_graph(cur, b)));
          }
        }
        bad += from_graph != from_matroid;
      }
  return judge(bad == 0, std::to_string(matroids) + " matroids, " + std::to_string(bad) + " disagreements");
}

// 8. Basis-count normalization and concentration.
Outcome matroid_counts() {
  const auto norm = run_experiment({"matroid", 0, {{"mode", "normalization"}, {"cases", {{3, 1}, {3, 2}, {4, 2}}}}, ""});
  const auto conc = run_experiment(
      {"matroid", 810, {{"mode", "basis_concentration"}, {"r", 5}, {"n", 10}, {"samples", kConcentrationSamples}}, ""},
      jobs());
  const auto& a = conc.aggregates;
  const bool ok = norm.aggregates.at("all_exact").get<bool>() && a.at("within").get<bool>();
  return judge(ok, fmt("normalization exact; Var/E^2 = %.4f vs bound %.4f (sigma %.4f)", a.at("var_over_mean_sq").get<double>(),
                       a.at("bound").get<double>(), a.at("sigma").get<double>()));
}

// 9. Second-moment statistics.
Outcome second_moment() {
  const auto rec = run_second_moment(12, 3, kSecondMomentTrials, 303, jobs());
  const auto& a = rec.aggregates;
  const bool ok = a.at("mean_within_3sigma").get<bool>() && a.at("bins_within").get<bool>();
  return judge(ok, fmt("mean X = %.1f (sem %.2f) vs %.0f; mixed bins within bound", a.at("mean_X").get<double>(),
                       a.at("sem_X").get<double>(), a.at("expected_X").get<double>()));
}

// 10. Universality rates on G(n, 1/2).
Outcome universality() {
  const auto two = run_universality(12, 2, 200, kDefaultNodeBudget, 120, jobs());
  const double rate2 = two.aggregates.at("rate").get<double>();
  std::vector<double> rates;
  std::vector<stats::Interval> ivs;
  for (std::size_t n : {10, 12, 14}) {
    const auto rec = run_universality(n, 3, 50, kDefaultNodeBudget, 200 + n, jobs());
    const auto& agg = rec.aggregates;
    rates.push_back(agg.at("rate").get<double>());
    ivs.push_back({agg.at("wilson")[0].get<double>(), agg.at("wilson")[1].get<double>()});
  }
  const std::string detail = fmt("k=2,n=12: %.3f; k=3 at n=10,12,14: %.2f, %.2f, %.2f", rate2, rates[0], rates[1], rates[2]);
  if (rate2 < kUniversality2Floor) return {Verdict::fail, detail};
  if (rates[0] < rates[1] && rates[1] < rates[2]) return {Verdict::pass, detail};
  const bool overlap = ivs[0].overlaps(ivs[1]) && ivs[1].overlaps(ivs[2]);
  return {overlap ? Verdict::inconclusive : Verdict::fail, detail + " (trend not monotone)"};
}

// 11. Reordering properties and gadget reuse.
Outcome reordering() {
  CounterRng rng(1100);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kReorderInstances; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const Graph g = sample_uniform_graph(n, rng());
    LabelList all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(4, n));
    const LabelList vhat(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    LabelList seq;
    for (std::size_t i = 0, len = rng.below(7); i < len; ++i) seq.push_back(vhat[rng.below(k)]);
    const auto ops = reorder_sequence(g, vhat, seq);
    bad += !same_effect_outside(g, vhat, seq, ops) || !steps_disjoint(ops) || !covers_once_labels(ops, seq);
  }
  std::size_t gadget_checks = 0;
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::uint64_t gm = 0; gm < (1ULL << pair_count(k)); ++gm) {
      const Graph ghat = Graph::from_edge_mask(k, gm);
      const LabelList vh = ghat.labels();
      std::vector<LabelList> seqs{{}};
      for (std::size_t len = 1; len <= 6; ++len)
        for (std::uint64_t code = 0; code < (1ULL << len) && (k == 2 || code == 0); ++code) {
          LabelList s;
          for (std::size_t i = 0; i < len; ++i) s.push_back(k == 2 ? (code >> i) & 1U : 0);
          seqs.push_back(s);
        }
      for (std::size_t h = 0; h < kGadgetHosts; ++h) {
        Graph host = sample_uniform_graph(k + 1 + rng.below(10), rng());
        if (k == 2) host.set_edge(0, 1, ghat.has_edge(0, 1));
        for (const auto& s : seqs) {
          const auto ops = reorder_via_gadget(ghat, s);
          bad += !same_effect_outside(host, vh, s, ops) || !steps_disjoint(ops) || !covers_once_labels(ops, s);
          bad += !same_effect_outside(host, vh, s, reorder_sequence(host, vh, s));
          ++gadget_checks;
        }
      }
    }
  return judge(bad == 0, std::to_string(kReorderInstances) + " random instances, " + std::to_string(gadget_checks) +
                             " gadget host checks, " + std::to_string(bad) + " failures");
}

// 12. align_partition failure rate and output uniformity.
Outcome alignment() {
  const std::size_t m = kAlignM;
  // L = V1s (0..m-1) + two extra; R = V2s (m+2..2m+1), Y1 = 2m+2, two extra.
  LabelList v1, v2;
  for (std::size_t i = 0; i < m; ++i) {
    v1.push_back(i);
    v2.push_back(m + 2 + i);
  }
  const Label y1 = 2 * m + 2;
  const LabelList out_left{static_cast<Label>(m), static_cast<Label>(m + 1), y1};
  const LabelList out_right{2 * m + 3, 2 * m + 4};
  std::vector<std::size_t> cells(64, 0);
  std::size_t fails = 0, misplaced = 0;
  for (std::size_t t = 0; t < kAlignTrials; ++t) {
    const auto b = sample_uniform_bipartite(m + 2, m + 3, trial_seed(1200, t));
    const auto out = align_partition(b, v1, v2, LabelList{y1}, {});
    if (!out) {
      ++fails;
      continue;
    }
    misplaced += !out->in_left(y1);
    std::size_t c = 0, bit = 0;
    for (Label l : out_left)
      for (Label r : out_right) c |= static_cast<std::size_t>(out->has_edge(l, r)) << bit++;
    ++cells[c];
  }
  const double p = std::ldexp(1.0, -static_cast<int>(m));
  const double rate = static_cast<double>(fails) / kAlignTrials;
  const double sigma = std::sqrt(p * (1 - p) / kAlignTrials);
  const auto chi = stats::chi_square_gof(cells, std::vector<double>(64, 1.0 / 64));
  const bool ok = std::abs(rate - p) <= kSigmas * sigma && chi.p_value >= kChiAlpha && misplaced == 0;
  return judge(ok, fmt("failure rate %.6f vs %.6f (sigma %.6f); uniformity p = %.3f", rate, p, sigma, chi.p_value));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"spectral identity", spectral_identity},       {"eigenvalue inequality", eigenvalue_inequality},
      {"rank census", rank_census_check},             {"walk mixing bounds", mixing},
      {"minor engine oracle", minor_engine_oracle},   {"vm Ramsey values", vm_ramsey_values},
      {"matroid bridge", matroid_bridge},             {"basis counts", matroid_counts},
      {"second moment", second_moment},               {"universality rates", universality},
      {"reordering", reordering},                     {"align_partition", alignment},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "INCONCLUSIVE";
    failed += o.verdict == Verdict::fail;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", tag, i + 1, criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
