#pragma once

#include <string>
#include <string_view>

#include "spectra/random.hpp"
#include "spectra/sequence.hpp"

namespace testgen {

inline std::string random_string(spectra::Rng& rng, std::size_t n, std::string_view alphabet) {
  std::string s(n, 'A');
  for (auto& c : s) c = alphabet[spectra::uniform_below(rng, alphabet.size())];
  return s;
}

// Aperiodic circular sequence of length n; redraws until the period is n.
inline spectra::CircularSequence random_aperiodic(spectra::Rng& rng, std::size_t n,
                                                  std::string_view alphabet) {
  for (;;) {
    spectra::CircularSequence s(random_string(rng, n, alphabet));
    if (s.theorem_grade()) return s;
  }
}

} // namespace testgen
