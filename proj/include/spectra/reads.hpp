#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/sequence.hpp"

namespace spectra {

/// G reads of length L over {A,C,G,T,N} in presentation order. Reads carry no
/// position labels.
class ReadSet {
public:
  ReadSet() = default;
  /// Throws InvalidArgument if any read length differs from L or L == 0.
  ReadSet(std::vector<ErasableString> reads, std::size_t L, std::size_t D, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return reads_.size(); }
  std::size_t G() const noexcept { return reads_.size(); }
  std::size_t L() const noexcept { return L_; }
  std::size_t D() const noexcept { return D_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<ErasableString>& reads() const noexcept { return reads_; }
  const ErasableString& operator[](std::size_t i) const noexcept { return reads_[i]; }

  /// Reads as plain strings ('N' for erasures).
  std::vector<std::string> strings() const;

  friend bool operator==(const ReadSet&, const ReadSet&) = default;

private:
  std::vector<ErasableString> reads_;
  std::size_t L_ = 0;
  std::size_t D_ = 0;
  std::uint64_t seed_ = 0;
};

/// A read set together with the simulator's private bookkeeping.
struct SimulatedReads {
  ReadSet reads;
  std::vector<std::size_t> origin; ///< origin[i] = start position of read i in truth
};

struct ErasureStrategy {
  enum class Kind { suffix_erase, repeat_targeted, random_budgeted };
  Kind kind = Kind::suffix_erase;
  std::uint64_t seed = 0;
};

std::string to_string(ErasureStrategy::Kind kind);
/// Accepts "suffix", "suffix_erase", "repeat", "repeat_targeted", "random", "random_budgeted".
ErasureStrategy::Kind parse_strategy(std::string_view name);

/// The L-spectrum with D = 0, in a seed-determined presentation order.
/// Throws InvalidArgument unless 1 <= L <= G.
SimulatedReads spectrum(const CircularSequence& seq, std::size_t L, std::uint64_t seed = 0);

/// Erases symbols of a noiseless spectrum under (a) at most D erasures per
/// read and (b) at most D erasures per genome base. Throws InvalidArgument
/// when D >= L or the input already contains erasures.
SimulatedReads apply_erasures(const CircularSequence& truth, const SimulatedReads& noiseless,
                              std::size_t D, const ErasureStrategy& strategy);

struct BudgetReport {
  bool valid = true;
  bool bases_checked = false;
  std::vector<std::size_t> reads_over_budget; ///< violates (a)
  std::vector<std::size_t> bases_over_budget; ///< violates (b)
  std::vector<std::size_t> reads_mismatching; ///< non-erased symbol differs from truth
};

/// Checks (a) always; checks (b), and agreement with the truth, only when the
/// truth and read origins are supplied.
BudgetReport validate_erasure_budget(const ReadSet& reads, std::size_t D);
BudgetReport validate_erasure_budget(const ReadSet& reads, const CircularSequence& truth,
                                     const std::vector<std::size_t>& origin, std::size_t D);

/// Reads file: "#spectrum L=<L> D=<D> G=<G> circular=1 seed=<seed>" then G
/// lines over ACGTN, LF terminated.
void write_reads(std::ostream& out, const ReadSet& reads);
std::string format_reads(const ReadSet& reads);
/// Throws ParseError on a malformed header, wrong read count or length, or
/// illegal symbols.
ReadSet parse_reads(std::string_view text);

} // namespace spectra
