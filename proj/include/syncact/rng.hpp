#pragma once

#include <cstdint>
#include <random>

#include "syncact/matrix.hpp"

namespace syncact {

// Seeded generator with distributions implemented locally, so draws are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  Matrix uniform_matrix(std::size_t rows, std::size_t cols, double bound);
  Matrix normal_matrix(std::size_t rows, std::size_t cols, double stddev = 1.0);

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      std::swap(first[static_cast<std::ptrdiff_t>(i - 1)], first[static_cast<std::ptrdiff_t>(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace syncact
