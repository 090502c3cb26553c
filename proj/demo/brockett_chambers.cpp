// Samples random rational functions of degree n and counts how many land in
// each connected component, then checks the representatives.

#include "wallcross/rational_maps.hpp"

#include <cstdio>
#include <map>
#include <random>

using namespace wallcross;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  std::mt19937_64 rng(1);
  std::map<int, int> histogram;
  for (int k = 0; k < 500; ++k) ++histogram[brockett_degree(random_pair(n, rng))];
  std::printf("degree  count\n");
  for (const auto& [d, c] : histogram) std::printf("%6d  %5d\n", d, c);
  for (int u = 0; u <= n; ++u) {
    const auto g = generator(u, n - u);
    std::printf("generator(%d,%d): degree %d\n", u, n - u, brockett_degree(g));
  }
  return 0;
}
