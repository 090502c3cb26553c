// Real degree of the Wronski projection for small Grassmannians, next to the
// closed-form count and the complex degree.

#include "wallcross/schubert.hpp"

#include <iostream>

using namespace wallcross;

int main() {
  std::cout << "p q  real  closed-form  complex\n";
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{1, 3}, std::pair{2, 3}}) {
    const auto rep = wronski_real_degree(p, q);
    std::cout << p << ' ' << q << "  " << rep.degree << "     " << rep.eg << "            " << rep.complex_degree << '\n';
  }
  return 0;
}
