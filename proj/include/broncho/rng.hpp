#pragma once

#include <cstdint>
#include <random>

namespace broncho {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Doubles are formed from the top 53 bits of each draw, so the
/// values do not depend on the standard library's distribution classes
/// (which are implementation defined). Together these make every seeded
/// output in this project identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Sub-seed offsets; each pipeline stage draws from its own stream.
namespace seed_offset {
inline constexpr std::uint64_t kVolumeSampling = 0x1000;
inline constexpr std::uint64_t kSurfaceSampling = 0x2000;
}  // namespace seed_offset

}  // namespace broncho
