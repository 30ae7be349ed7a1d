#pragma once

#include <cstdint>
#include <random>

namespace wavefill {

/// Seeded generator with platform-independent real draws. std::mt19937_64's
/// output sequence is fixed by the standard; the distributions are not, so
/// reals are built directly from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace wavefill
