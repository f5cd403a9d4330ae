// Empirical 3-vertex-minor universality of G(n, 1/2) for growing n.
#include <iostream>

#include "vmlab/experiments.hpp"

int main() {
  using namespace vmlab;
  for (std::size_t n = 8; n <= 14; n += 2) {
    const ResultRecord r = run_universality(n, 3, 100, kDefaultNodeBudget, 1000 + n);
    const auto& a = r.aggregates;
    std::cout << "n=" << n << "  rate " << a.at("rate").get<double>() << "  95% CI [" << a.at("wilson")[0].get<double>()
              << ", " << a.at("wilson")[1].get<double>() << "]\n";
  }
}
