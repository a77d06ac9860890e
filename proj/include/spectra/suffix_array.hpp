#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace spectra {

/// Sorted cyclic rotations of a string, with rank and LCP arrays.
///
/// Sorting the G rotations is the same as sorting the first G suffixes of the
/// doubled string, without materializing it. lcp[i] is the longest common
/// prefix of rotations order[i-1] and order[i] (lcp[0] = 0), capped at G;
/// a value of G means the two rotations are identical, which only happens
/// for periodic input.
struct CircularSuffixArray {
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> rank;
  std::vector<std::uint32_t> lcp;

  static CircularSuffixArray build(std::string_view text);
};

} // namespace spectra
