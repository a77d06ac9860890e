#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "spectra/sequence.hpp"

namespace spectra {

struct FastaOptions {
  /// Replace every character outside ACGT (after case folding) by 'A' instead
  /// of rejecting the record. This changes the genome; it exists so that real
  /// assemblies containing N runs or IUPAC codes can still be analyzed.
  bool map_unknown_to_a = false;
};

struct FastaRecord {
  std::string id;           ///< header text after '>' up to the first whitespace
  std::string description;  ///< full header line after '>'
  CircularSequence sequence;
  std::size_t replaced = 0; ///< symbols rewritten to 'A' under map_unknown_to_a
};

/// Parses the first record of FASTA text. Bodies may be line-wrapped; CR/LF
/// and blank lines are tolerated. Throws ParseError when there is no record,
/// the record is empty, or a symbol outside ACGT occurs (position reported as
/// a 0-based offset into the sequence).
FastaRecord parse_fasta(std::string_view text, const FastaOptions& options = {});

/// Reads a FASTA file, transparently decompressing gzip input.
FastaRecord read_fasta_file(const std::filesystem::path& path, const FastaOptions& options = {});

/// Writes a single record, wrapping the body at `width` columns. The sequence
/// is written starting at its canonical (least) rotation.
void write_fasta(std::ostream& out, std::string_view id, const CircularSequence& seq,
                 std::size_t width = 80);

/// Reads a whole file into memory (gzip aware).
std::string slurp_file(const std::filesystem::path& path);

} // namespace spectra
