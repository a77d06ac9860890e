#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace spectra {

/// Symbol used for an erased read position in every serialized format.
inline constexpr char kErased = 'N';

/// Uppercase nucleotide alphabet, in lexicographic order.
inline constexpr std::string_view kAlphabet = "ACGT";

constexpr bool is_base(char c) noexcept {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

/// 2-bit code of a base (A=0, C=1, G=2, T=3). Undefined for other symbols.
constexpr std::uint8_t base_code(char c) noexcept {
  switch (c) {
  case 'A': return 0;
  case 'C': return 1;
  case 'G': return 2;
  default: return 3;
  }
}

/// A circular genome over {A,C,G,T}. Positions are taken modulo length().
///
/// The minimum period is computed once at construction. Sequences whose
/// minimum period is smaller than their length (for example homopolymers)
/// are valid values but are not theorem-grade: repeat-structure results on
/// them come with a warning.
class CircularSequence {
public:
  /// Throws InvalidArgument on an empty string or any symbol outside ACGT.
  explicit CircularSequence(std::string symbols);

  std::size_t length() const noexcept { return symbols_.size(); }
  const std::string& str() const noexcept { return symbols_; }
  char operator[](std::size_t i) const noexcept { return symbols_[i % symbols_.size()]; }

  std::size_t minimum_period() const noexcept { return period_; }
  bool theorem_grade() const noexcept { return period_ == symbols_.size(); }

  /// (s[t], ..., s[t+len-1]) with circular indexing; requires 1 <= len <= length().
  std::string window(std::size_t t, std::size_t len) const;

  /// Rotation starting at t.
  CircularSequence rotated(std::size_t t) const;

  /// Lexicographically least rotation.
  CircularSequence canonical() const;

  /// Position where the lexicographically least rotation starts.
  std::size_t canonical_offset() const noexcept;

  /// Plain linear string starting at position 0, for display only.
  std::string linearize() const { return symbols_; }

  friend bool operator==(const CircularSequence& a, const CircularSequence& b) noexcept {
    return a.symbols_ == b.symbols_;
  }
  friend bool operator<(const CircularSequence& a, const CircularSequence& b) noexcept {
    return a.symbols_ < b.symbols_;
  }

private:
  std::string symbols_;
  std::size_t period_ = 0;
};

/// A read over {A,C,G,T} plus the erasure symbol 'N'.
class ErasableString {
public:
  ErasableString() = default;
  /// Throws InvalidArgument on symbols outside ACGTN.
  explicit ErasableString(std::string symbols);

  std::size_t length() const noexcept { return symbols_.size(); }
  const std::string& str() const noexcept { return symbols_; }
  char operator[](std::size_t i) const noexcept { return symbols_[i]; }
  bool erased(std::size_t i) const noexcept { return symbols_[i] == kErased; }
  std::size_t erasure_count() const noexcept;

  /// Erased positions rendered as a middle dot, for logs.
  std::string to_display() const;

  friend auto operator<=>(const ErasableString&, const ErasableString&) = default;

private:
  std::string symbols_;
};

/// window(seq, t, len) with t reduced modulo G. Throws InvalidArgument when len > G or len == 0.
std::string window(const CircularSequence& seq, std::size_t t, std::size_t len);

/// Number of positions where x and y differ. Throws InvalidArgument on length mismatch.
std::size_t hamming(std::string_view x, std::string_view y);

/// True iff every non-erased symbol of read equals the corresponding target symbol.
bool erasure_compatible(std::string_view read, std::string_view target);
bool erasure_compatible(const ErasableString& read, std::string_view target);

/// True iff some cyclic rotation of a equals b.
bool rotation_equal(const CircularSequence& a, const CircularSequence& b);

/// Start index of the lexicographically least rotation of s (Booth's algorithm).
std::size_t least_rotation(std::string_view s);

/// Smallest p dividing |s| such that rotating s by p gives s back.
std::size_t circular_period(std::string_view s);

} // namespace spectra
