// Deterministic random draws for the verification suite and tests.
// mt19937_64 has a standardized sequence; the uniform mapping below uses the
// top 53 bits directly so results are identical across standard libraries.
#pragma once

#include <cstdint>
#include <random>

namespace covhyp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const std::uint64_t r = eng_() >> 11;
    return lo + (hi - lo) * (static_cast<double>(r) * 0x1.0p-53);
  }

  // Uniform over {0, 1} scaled to {-1, +1}.
  double sign() { return (eng_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace covhyp
