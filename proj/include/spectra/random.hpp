#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace spectra {

/// Seeded generator used wherever output must be reproducible across
/// platforms and language bindings. std::mt19937_64 is fully specified by the
/// standard; the distribution helpers below are spelled out here because the
/// standard library distributions are not.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection: 64-bit draws below 2^64 mod n are
/// discarded, the rest are reduced modulo n. Requires n >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) {
      return x % n;
    }
  }
}

/// Fisher-Yates, swapping element i with uniform_below(i + 1) for i = n-1 .. 1.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
    std::swap(v[i], v[j]);
  }
}

} // namespace spectra
