// Exact distance to uniform of the Com/Piv walk on k = 4 vertices.
#include <iostream>
#include <vector>

#include "vmlab/walks.hpp"

int main() {
  using namespace vmlab;
  const std::size_t k = 4;
  const WalkShape shape = WalkShape::plain(k);
  std::cout << "m1 m2  distance            bound\n";
  for (std::size_t m2 = 0; m2 <= 5; ++m2)
    for (std::size_t m1 : {0, 3, 6}) {
      std::vector<WalkKind> steps(m1, WalkKind::com);
      steps.insert(steps.end(), m2, WalkKind::piv);
      const Dyadic d = linf_distance_to_uniform(apply_walk(GraphDistribution::point_mass(shape), steps));
      std::cout << m1 << "  " << m2 << "   " << d.to_double();
      if (m1 + 2 * m2 > 2 * k) std::cout << "   " << com_piv_mixing_bound(k, m1, m2).to_double();
      std::cout << '\n';
    }
}
