#ifndef VMLAB_JSON_IO_HPP
#define VMLAB_JSON_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bipartite.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "matroid.hpp"
#include "ops.hpp"
#include "walks.hpp"

namespace vmlab {

using Json = nlohmann::json;

// Graph: {"capacity": n, "labels": [...], "edges": [[u, v], ...]}

inline Json to_json(const Graph& g) {
  Json e = Json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  return {{"capacity", g.capacity()}, {"labels", g.labels()}, {"edges", e}};
}

inline Graph graph_from_json(const Json& j) {
  try {
    const LabelList labels = j.at("labels").get<LabelList>();
    Graph g = Graph::on_labels(j.at("capacity").get<std::size_t>(), labels);
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<Label>(), e.at(1).get<Label>());
    return g;
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("graph json: ") + ex.what());
  }
}

// Witness: {"ops": [[v], [u, v], ...], "deletions": [...]}. Replay applies
// every op, then every deletion.

inline Json to_json(const MinorWitness& w) {
  Json ops = Json::array();
  for (const Step& s : w.ops) ops.push_back(s.labels());
  return {{"ops", ops}, {"deletions", w.deletions}};
}

inline MinorWitness witness_from_json(const Json& j) {
  try {
    MinorWitness w;
    for (const auto& s : j.at("ops")) {
      const auto ls = s.get<LabelList>();
      if (ls.size() == 1) {
        w.ops.push_back(Step::single(ls[0]));
      } else if (ls.size() == 2) {
        w.ops.push_back(Step::pair(ls[0], ls[1]));
      } else {
        fail(Errc::parse, "witness step must have one or two labels");
      }
    }
    w.deletions = j.at("deletions").get<LabelList>();
    return w;
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("witness json: ") + ex.what());
  }
}

// Ordered bipartite graph: {"L": [...], "R": [...], "edges": [[l, r], ...]}

inline Json to_json(const OrderedBipartiteGraph& b) {
  Json e = Json::array();
  for (auto [u, v] : b.edges()) e.push_back(b.in_left(u) ? Json{u, v} : Json{v, u});
  return {{"L", b.left()}, {"R", b.right()}, {"edges", e}};
}

inline OrderedBipartiteGraph obg_from_json(const Json& j) {
  try {
    std::vector<std::pair<Label, Label>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Label>(), e.at(1).get<Label>());
    return OrderedBipartiteGraph::make(j.at("L").get<LabelList>(), j.at("R").get<LabelList>(), edges);
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("bipartite json: ") + ex.what());
  }
}

// Binary matroid: {"ground": [...], "rows": [mask, ...], "columns_bits": [mask, ...]}
// Row bit j is the entry of ground[j]; column bit i is the entry of row i.

inline Json to_json(const BinaryMatroid& m) {
  return {{"ground", m.ground()}, {"rows", m.rows()}, {"columns_bits", m.columns()}};
}

inline BinaryMatroid matroid_from_json(const Json& j) {
  try {
    return BinaryMatroid::from_spanning_rows(j.at("ground").get<LabelList>(),
                                             j.at("rows").get<std::vector<std::uint64_t>>());
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("matroid json: ") + ex.what());
  }
}

// Distribution: {"kind": "graph"|"bipartite", "k" | ("ell", "r"),
// "denominator_exponent": e, "numerators": ["decimal", ...]}

inline Json to_json(const GraphDistribution& mu) {
  const WalkShape& sh = mu.shape();
  Json nums = Json::array();
  for (const BigInt& x : mu.numerators()) nums.push_back(x.str());
  Json j = {{"kind", sh.bipartite ? "bipartite" : "graph"},
            {"denominator_exponent", mu.exponent()},
            {"numerators", nums}};
  if (sh.bipartite) {
    j["ell"] = sh.ell;
    j["r"] = sh.r;
  } else {
    j["k"] = sh.k;
  }
  return j;
}

inline GraphDistribution distribution_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    WalkShape sh;
    if (kind == "graph") {
      sh = WalkShape::plain(j.at("k").get<std::size_t>());
    } else if (kind == "bipartite") {
      sh = WalkShape::bip(j.at("ell").get<std::size_t>(), j.at("r").get<std::size_t>());
    } else {
      fail(Errc::parse, "distribution kind must be graph or bipartite");
    }
    std::vector<BigInt> nums;
    for (const auto& x : j.at("numerators")) {
      const std::string text = x.get<std::string>();
      try {
        nums.emplace_back(text.c_str());
      } catch (const std::runtime_error&) {
        fail(Errc::parse, "numerator is not a decimal integer: " + text);
      }
    }
    return {sh, j.at("denominator_exponent").get<std::size_t>(), std::move(nums)};
  } catch (const Json::exception& ex) {
    fail(Errc::parse, std::string("distribution json: ") + ex.what());
  }
}

}  // namespace vmlab

#endif  // VMLAB_JSON_IO_HPP
