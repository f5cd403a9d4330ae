#ifndef VMLAB_GRAPH6_HPP
#define VMLAB_GRAPH6_HPP

#include <string>
#include <string_view>

#include "error.hpp"
#include "graph.hpp"

namespace vmlab {

// graph6 stores the upper triangle column by column, which is exactly the
// colex pair order used elsewhere in the library.

/// Encode the subgraph on the live labels, relabelled 0..order-1 ascending.
inline std::string to_graph6(const Graph& g) {
  const LabelList ls = g.labels();
  const std::size_t n = ls.size();
  require(n <= 258047, Errc::range, "graph6 writer supports up to 258047 vertices");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  unsigned acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(ls[i], ls[j]) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

/// Decode one graph6 string (optional ">>graph6<<" header and trailing
/// whitespace are accepted). Result has labels 0..n-1.
inline Graph from_graph6(std::string_view s) {
  constexpr std::string_view header = ">>graph6<<";
  if (s.substr(0, header.size()) == header) s.remove_prefix(header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  auto val = [&](std::size_t pos) -> unsigned {
    if (pos >= s.size()) fail(Errc::parse, "graph6 string truncated");
    const int c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) fail(Errc::parse, "graph6 byte outside 63..126");
    return static_cast<unsigned>(c - 63);
  };
  std::size_t pos = 0;
  std::size_t n = 0;
  if (s.empty()) fail(Errc::parse, "empty graph6 string");
  if (static_cast<unsigned char>(s[0]) == 126) {
    if (s.size() > 1 && static_cast<unsigned char>(s[1]) == 126) fail(Errc::parse, "8-byte graph6 sizes unsupported");
    n = (val(1) << 12) | (val(2) << 6) | val(3);
    pos = 4;
  } else {
    n = val(0);
    pos = 1;
  }
  const std::size_t bits = pair_count(n);
  const std::size_t bytes = (bits + 5) / 6;
  if (s.size() != pos + bytes) fail(Errc::parse, "graph6 length does not match vertex count");
  Graph g(n);
  std::size_t idx = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++idx) {
      const unsigned byte = val(pos + idx / 6);
      if ((byte >> (5 - idx % 6)) & 1U) g.add_edge(i, j);
    }
  return g;
}

}  // namespace vmlab

#endif  // VMLAB_GRAPH6_HPP
