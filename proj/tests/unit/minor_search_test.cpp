#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "vmlab/minor_search.hpp"

using namespace vmlab;

namespace {

// --- Independent oracle on colex masks over [n] ------------------------------

bool bit_of(std::uint64_t m, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return (m >> (j * (j - 1) / 2 + i)) & 1U;
}

std::uint64_t lc(std::size_t n, std::uint64_t m, std::size_t v) {
  std::vector<std::size_t> nb;
  for (std::size_t u = 0; u < n; ++u)
    if (u != v && bit_of(m, u, v)) nb.push_back(u);
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b) m ^= 1ULL << (nb[b] * (nb[b] - 1) / 2 + nb[a]);
  return m;
}

std::set<std::uint64_t> lc_orbit(std::size_t n, std::uint64_t m) {
  std::set<std::uint64_t> seen{m};
  std::vector<std::uint64_t> todo{m};
  while (!todo.empty()) {
    const auto cur = todo.back();
    todo.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const auto nxt = lc(n, cur, v);
      if (seen.insert(nxt).second) todo.push_back(nxt);
    }
  }
  return seen;
}

// Induced mask on the subset `sub` (bitmask over [n]), re-indexed ascending.
std::uint64_t restrict_mask(std::size_t n, std::uint64_t m, std::uint64_t sub) {
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n; ++v)
    if ((sub >> v) & 1U) keep.push_back(v);
  std::uint64_t out = 0;
  std::size_t idx = 0;
  for (std::size_t j = 1; j < keep.size(); ++j)
    for (std::size_t i = 0; i < j; ++i, ++idx)
      if (bit_of(m, keep[i], keep[j])) out |= 1ULL << idx;
  return out;
}

Graph graph_on(std::size_t cap, std::uint64_t sub, std::uint64_t mask) {
  LabelList ls;
  for (std::size_t v = 0; v < cap; ++v)
    if ((sub >> v) & 1U) ls.push_back(v);
  Graph g = Graph::on_labels(cap, ls);
  const Graph c = Graph::from_edge_mask(ls.size(), mask);
  for (auto [i, j] : c.edges()) g.add_edge(ls[i], ls[j]);
  return g;
}

void expect_replays(const Graph& g, const Graph& h, const MinorWitness& w) { EXPECT_EQ(replay(g, w), h); }

}  // namespace

TEST(IsVertexMinor, IdentityHasTrivialWitness) {
  const Graph g = sample_uniform_graph(7, 3);
  const auto w = is_vertex_minor(g, g);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->ops.empty());
  EXPECT_TRUE(w->deletions.empty());
}

TEST(IsVertexMinor, CliqueGivesIndependentSet) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const Graph g = complete_graph(k + 1);
    LabelList u(k);
    for (std::size_t i = 0; i < k; ++i) u[i] = i;
    const Graph h = Graph::on_labels(k + 1, u);
    const auto w = is_vertex_minor(g, h);
    ASSERT_TRUE(w) << k;
    expect_replays(g, h, *w);
  }
}

TEST(IsVertexMinor, WheelHasNoIndependentTriple) {
  const Graph g = wheel_graph(6);
  for (Label a = 0; a < 6; ++a)
    for (Label b = a + 1; b < 6; ++b)
      for (Label c = b + 1; c < 6; ++c) {
        const LabelList u{a, b, c};
        EXPECT_FALSE(is_vertex_minor(g, Graph::on_labels(6, u))) << a << b << c;
      }
}

TEST(IsVertexMinor, LabelMismatch) {
  try {
    is_vertex_minor(Graph(3), Graph(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::labels);
  }
}

TEST(IsVertexMinor, BudgetIsReported) {
  SearchOptions opt;
  opt.node_budget = 3;
  const Graph g = sample_uniform_graph(12, 1);
  try {
    is_vertex_minor(g, Graph::on_labels(12, LabelList{0, 1, 2}), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget);
  }
}

TEST(IsVertexMinor, AgreesWithOrbitOracleUpToFour) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t m = 0; m < (1ULL << pair_count(n)); ++m) {
      // Oracle: all (subset, induced mask) pairs over the local-equivalence orbit.
      std::set<std::pair<std::uint64_t, std::uint64_t>> reachable;
      for (std::uint64_t o : lc_orbit(n, m))
        for (std::uint64_t sub = 1; sub < (1ULL << n); ++sub) reachable.emplace(sub, restrict_mask(n, o, sub));
      const Graph g = Graph::from_edge_mask(n, m);
      for (std::uint64_t sub = 1; sub < (1ULL << n); ++sub) {
        const std::size_t k = static_cast<std::size_t>(std::popcount(sub));
        for (std::uint64_t hm = 0; hm < (1ULL << pair_count(k)); ++hm) {
          const Graph h = graph_on(n, sub, hm);
          const auto w = is_vertex_minor(g, h);
          ASSERT_EQ(w.has_value(), reachable.count({sub, hm}) > 0) << "n=" << n << " m=" << m << " sub=" << sub;
          if (w) {
            ASSERT_EQ(replay(g, *w), h);
          }
        }
      }
    }
}

TEST(IsVertexMinor, MonotoneAlongChains) {
  CounterRng rng(17);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const Graph g2 = sample_uniform_graph(6, rng());
    const Graph g1 = graph_on(6, 0b011110 | (rng() & 1U), rng() & 0x3FF);
    const Graph h = graph_on(6, 0b001110, rng() & 7U);
    if (is_vertex_minor(g1, h) && is_vertex_minor(g2, g1)) {
      ++checked;
      EXPECT_TRUE(is_vertex_minor(g2, h));
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(IsPivotMinor, PivotMinorsAreVertexMinors) {
  CounterRng rng(18);
  for (int t = 0; t < 300; ++t) {
    const Graph g = sample_uniform_graph(6, rng());
    const Graph h = graph_on(6, 0b100110, rng() & 7U);
    const auto pw = is_pivot_minor(g, h);
    if (pw) {
      EXPECT_EQ(replay(g, *pw), h);
      EXPECT_TRUE(is_vertex_minor(g, h));
    }
  }
}

TEST(IsPivotMinorOrdered, SingleEdgeSwap) {
  using E = std::vector<std::pair<Label, Label>>;
  const auto g = OrderedBipartiteGraph::make(LabelList{0}, LabelList{1}, E{{0, 1}});
  const auto h = OrderedBipartiteGraph::make(LabelList{1}, LabelList{0}, E{{0, 1}});
  const auto w = is_pivot_minor_ordered(g, h);
  ASSERT_TRUE(w);
  ASSERT_EQ(w->ops.size(), 1U);
  EXPECT_EQ(w->ops[0], Step::pair(0, 1));
  EXPECT_EQ(replay(g, *w), h);
  EXPECT_TRUE(is_pivot_minor_ordered(g, g));
  // Parts matter: the same edge with unswapped parts but no edge is not reachable.
  EXPECT_FALSE(is_pivot_minor_ordered(g, OrderedBipartiteGraph::make(LabelList{0}, LabelList{1})));
}

TEST(IsPivotMinorOrdered, AgreesWithOrbitOracle) {
  // Oracle: pivot orbit (with parts) of G, then every induced sub-configuration.
  for (std::size_t ell = 1; ell <= 3; ++ell)
    for (std::size_t r = 1; r + ell <= 5; ++r)
      for (std::uint64_t cells = 0; cells < (1ULL << (ell * r)); ++cells) {
        const auto g = bipartite_from_cells(ell, r, cells);
        std::vector<OrderedBipartiteGraph> todo{g};
        std::set<std::pair<LabelList, std::vector<std::pair<Label, Label>>>> seen{{g.left(), g.edges()}};
        while (!todo.empty()) {
          const auto cur = todo.back();
          todo.pop_back();
          for (auto [a, b] : cur.edges()) {
            const auto nxt = pivot(cur, a, b);
            if (seen.insert({nxt.left(), nxt.edges()}).second) todo.push_back(nxt);
          }
        }
        std::set<std::tuple<LabelList, LabelList, std::vector<std::pair<Label, Label>>>> reachable;
        const std::size_t n = ell + r;
        for (const auto& [left, edges] : seen) {
          for (std::uint64_t sub = 1; sub < (1ULL << n); ++sub) {
            LabelList l2, r2;
            for (Label v = 0; v < n; ++v) {
              if (!((sub >> v) & 1U)) continue;
              (std::count(left.begin(), left.end(), v) ? l2 : r2).push_back(v);
            }
            std::vector<std::pair<Label, Label>> e2;
            for (auto [a, b] : edges)
              if (((sub >> a) & 1U) && ((sub >> b) & 1U)) e2.emplace_back(a, b);
            reachable.insert({l2, r2, e2});
          }
        }
        // Compare on every target: all part splits and edge sets on a few subsets.
        for (std::uint64_t sub : {0b11ULL, 0b101ULL, 0b1011ULL, (1ULL << n) - 1}) {
          if (sub >= (1ULL << n)) continue;
          LabelList u;
          for (Label v = 0; v < n; ++v)
            if ((sub >> v) & 1U) u.push_back(v);
          for (std::uint64_t side = 0; side < (1ULL << u.size()); ++side) {
            LabelList hl, hr;
            for (std::size_t i = 0; i < u.size(); ++i) {
              ((side >> i) & 1U ? hl : hr).push_back(u[i]);
            }
            const std::size_t cc = hl.size() * hr.size();
            for (std::uint64_t ec = 0; ec < (1ULL << cc); ++ec) {
              OrderedBipartiteGraph h(n, hl, hr);
              for (std::size_t x = 0; x < hr.size(); ++x)
                for (std::size_t y = 0; y < hl.size(); ++y)
                  if ((ec >> (x * hl.size() + y)) & 1U) h.add_edge(hl[y], hr[x]);
              const bool want = reachable.count({h.left(), h.right(), h.edges()}) > 0;
              const auto w = is_pivot_minor_ordered(g, h);
              ASSERT_EQ(w.has_value(), want) << "ell=" << ell << " r=" << r << " cells=" << cells << " sub=" << sub << " side=" << side << " ec=" << ec;
              if (w) {
                ASSERT_EQ(replay(g, *w), h);
              }
            }
          }
        }
      }
}

TEST(Universality, SmallFacts) {
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_TRUE(std::holds_alternative<Universal>(is_k_vm_universal(sample_uniform_graph(n, n), 1)));
  const auto r = is_k_vm_universal(Graph(4), 2);
  ASSERT_TRUE(std::holds_alternative<UniversalityFailure>(r));
  const auto& f = std::get<UniversalityFailure>(r);
  EXPECT_EQ(f.u, (LabelList{0, 1}));
  EXPECT_TRUE(f.h.has_edge(0, 1));
  EXPECT_TRUE(std::holds_alternative<Universal>(is_k_vm_universal(complete_graph(3), 2)));
  EXPECT_EQ(local_class_count(2), 2U);
  EXPECT_EQ(local_class_count(3), 5U);
}

TEST(Universality, MatchesPerPairQueries) {
  CounterRng rng(19);
  for (int t = 0; t < 40; ++t) {
    const Graph g = sample_uniform_graph(6, rng());
    bool all = true;
    for (std::uint64_t sub = 0; sub < 64 && all; ++sub) {
      if (std::popcount(sub) != 3) continue;
      for (std::uint64_t hm = 0; hm < 8 && all; ++hm) all = is_vertex_minor(g, graph_on(6, sub, hm)).has_value();
    }
    EXPECT_EQ(std::holds_alternative<Universal>(is_k_vm_universal(g, 3)), all);
    EXPECT_EQ(is_k_vm_universal(g, 3, {}, 3).index(), is_k_vm_universal(g, 3).index());
  }
}

TEST(Universality, BudgetExceededIsDistinct) {
  SearchOptions opt;
  opt.node_budget = 2;
  EXPECT_TRUE(std::holds_alternative<BudgetExceeded>(is_k_vm_universal(sample_uniform_graph(10, 4), 3, opt)));
}

TEST(LocalEquivalenceOrbit, Examples) {
  EXPECT_EQ(local_equivalence_orbit(Graph(5)).size(), 1U);
  const auto orbit = local_equivalence_orbit(path_graph(3));
  EXPECT_NE(std::find(orbit.begin(), orbit.end(), complete_graph(3)), orbit.end());
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t m = 0; m < (1ULL << pair_count(n)); ++m) {
      const auto o = local_equivalence_orbit(Graph::from_edge_mask(n, m));
      ASSERT_LE(o.size(), std::pow(3.0, static_cast<double>(n)));
      ASSERT_EQ(o.size(), lc_orbit(n, m).size());
    }
  CounterRng rng(20);
  for (int t = 0; t < 200; ++t) EXPECT_LE(local_equivalence_orbit(sample_uniform_graph(6, rng())).size(), 729U);
  EXPECT_THROW(local_equivalence_orbit(complete_graph(6), 3), Error);
}
