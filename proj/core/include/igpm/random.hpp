#pragma once

#include <cstdint>
#include <random>

namespace igpm {

/// Seedable generator with a fully specified output sequence.
///
/// Uses std::mt19937_64, whose raw output is fixed by the standard. The
/// standard distributions are implementation-defined, so uniforms and
/// Gaussians are derived here: uniform01 takes the top 53 bits, normal uses
/// the Box–Muller transform (both values of a pair are consumed in order).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  /// Uniform integer on [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal variate.
  double normal();

  /// +1 or −1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace igpm
