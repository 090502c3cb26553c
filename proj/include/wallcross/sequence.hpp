#pragma once

// Low-discrepancy points for multi-start searches and manifold sampling.

#include <cstdint>
#include <random>
#include <vector>

namespace wallcross {

inline double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

/// Halton sequence in [0,1)^dim with a Cranley-Patterson shift drawn from seed.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t seed) : dim_(dim), shift_(dim) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift_) s = u(rng);
  }

  std::vector<double> point(std::uint64_t index) const {
    static constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    std::vector<double> x(dim_);
    for (int d = 0; d < dim_; ++d) {
      const unsigned base = kPrimes[d % 25];
      double v = radical_inverse(index + 1, base) + shift_[d];
      x[d] = v - static_cast<double>(static_cast<long>(v));
    }
    return x;
  }

 private:
  int dim_;
  std::vector<double> shift_;
};

}  // namespace wallcross
