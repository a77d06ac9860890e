#include "spectra/fasta.hpp"

#include <zlib.h>

#include <cctype>
#include <memory>
#include <ostream>

#include "spectra/errors.hpp"

namespace spectra {

FastaRecord parse_fasta(std::string_view text, const FastaOptions& options) {
  std::size_t pos = 0;
  // Skip leading blank lines.
  while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) {
    ++pos;
  }
  if (pos >= text.size() || text[pos] != '>') {
    throw ParseError("FASTA input has no record (expected '>')");
  }
  std::size_t eol = text.find('\n', pos);
  if (eol == std::string_view::npos) {
    eol = text.size();
  }
  std::string header(text.substr(pos + 1, eol - pos - 1));
  while (!header.empty() && header.back() == '\r') {
    header.pop_back();
  }
  std::string id = header.substr(0, header.find_first_of(" \t"));

  std::string body;
  std::size_t replaced = 0;
  pos = eol;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '>' && (pos == 0 || text[pos - 1] == '\n')) {
      break; // next record, ignored
    }
    ++pos;
    if (c == '\n' || c == '\r' || c == ' ' || c == '\t') {
      continue;
    }
    char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (!is_base(u)) {
      if (!options.map_unknown_to_a) {
        throw ParseError("illegal symbol " + std::string(1, c) + " at position " +
                         std::to_string(body.size()));
      }
      u = 'A';
      ++replaced;
    }
    body.push_back(u);
  }
  if (body.empty()) {
    throw ParseError("FASTA record '" + id + "' is empty");
  }
  return FastaRecord{std::move(id), std::move(header), CircularSequence(std::move(body)), replaced};
}

std::string slurp_file(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (f == nullptr) {
    throw ParseError("cannot open " + path.string());
  }
  std::unique_ptr<gzFile_s, int (*)(gzFile)> guard(f, &gzclose);
  std::string out;
  std::string buf(1 << 16, '\0');
  for (;;) {
    int n = gzread(f, buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) {
      throw ParseError("read error in " + path.string());
    }
    if (n == 0) {
      break;
    }
    out.append(buf, 0, static_cast<std::size_t>(n));
  }
  return out;
}

FastaRecord read_fasta_file(const std::filesystem::path& path, const FastaOptions& options) {
  return parse_fasta(slurp_file(path), options);
}

void write_fasta(std::ostream& out, std::string_view id, const CircularSequence& seq,
                 std::size_t width) {
  const std::string body = seq.canonical().str();
  out << '>' << id << '\n';
  for (std::size_t i = 0; i < body.size(); i += width) {
    out << std::string_view(body).substr(i, width) << '\n';
  }
}

} // namespace spectra
