// Tracks the straight path between two projections of the circle and prints
// the crossing together with the degree on each side.

#include "wallcross/path.hpp"

#include <cstdio>

using namespace wallcross;

int main() {
  const auto X = make_hyperquadric(2);
  Matrix f0(2, 3), f1(2, 3);
  f0 << 0, 1, 0, 0, 0, 1;
  f1 << 1, 0, 0, 0, 1, 0;
  const auto rep = verify_difference(HomPath{ProjectionMap(f0), ProjectionMap(f1)}, X);
  std::printf("deg f0 = %d, deg f1 = %d\n", rep.degree_start, rep.degree_end);
  for (const auto& c : rep.tracked.crossings) {
    const Vector p = c.point.rep();
    std::printf("crossing at t = %.12f, sign %+d, point [%.6f : %.6f : %.6f]\n", c.t_star, c.sign, p(0), p(1), p(2));
  }
  for (const auto& [t, d] : degree_profile(rep.tracked, rep.degree_start)) std::printf("  from t = %.6f: degree %d\n", t, d);
  return 0;
}
