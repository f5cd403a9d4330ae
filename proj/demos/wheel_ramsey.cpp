// Exhaustive small vertex-minor Ramsey numbers and their extremal graphs.
#include <iostream>

#include "vmlab/canon.hpp"
#include "vmlab/graph6.hpp"
#include "vmlab/ramsey.hpp"

int main() {
  using namespace vmlab;
  for (std::size_t k = 1; k <= 3; ++k) {
    const RamseyResult r = vm_ramsey(k);
    std::cout << "R_vm(" << k << ") = " << r.value << "  (upper bound " << vm_ramsey_upper_bound(k) << ")\n";
    for (std::uint64_t c : r.certificates) {
      const Graph g = Graph::from_edge_mask(r.value - 1, c);
      std::cout << "  extremal " << to_graph6(g) << "  edges " << g.edge_count()
                << (k == 3 && c == canonical_mask(wheel_graph(6)) ? "  (wheel)" : "") << '\n';
    }
  }
  for (std::size_t k = 1; k <= 3; ++k)
    std::cout << "R_piv(" << k << ") = " << pm_ramsey(k).value << "  R(" << k << ") = " << classical_ramsey(k).value
              << '\n';
}
