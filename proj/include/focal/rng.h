#ifndef FOCAL_RNG_H_
#define FOCAL_RNG_H_

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace focal {

// Seeded generator with distribution helpers that produce the same stream on
// every standard library (std::uniform_*_distribution does not guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double UniformUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a over the bytes followed by a splitmix64 finalizer. Stable across
// builds and platforms, used for per-trial seed derivation.
std::uint64_t StableHash(std::string_view bytes);

}  // namespace focal

#endif  // FOCAL_RNG_H_
