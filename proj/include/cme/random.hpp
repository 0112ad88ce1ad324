#pragma once

#include <cstdint>
#include <random>

namespace cme {

/// Reproducible normal variates: std::mt19937_64 (fully specified by the C++
/// standard) feeding the Box-Muller transform.
///
/// Uniforms use the top 53 bits of one engine output, u = ((w >> 11) + 0.5) * 2^-53,
/// which lies strictly inside (0, 1). Each pair (u1, u2) yields
/// r = sqrt(-2 ln u1), t = 2 pi u2 and the two variates r cos t, r sin t,
/// returned in that order.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer applied to seed + stream * golden-ratio increment.
/// Used to give independent sub-streams (second samples, test sets) a seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace cme
