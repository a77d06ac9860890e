#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "spectra/errors.hpp"
#include "spectra/fasta.hpp"
#include "spectra/sequence.hpp"

using namespace spectra;

TEST_CASE("parse_fasta") {
  auto r = parse_fasta(">x\nACGT\n");
  CHECK(r.sequence.str() == "ACGT");
  CHECK(r.id == "x");

  auto folded = parse_fasta(">x\nacgtacgct\n");
  CHECK(folded.sequence.str() == "ACGTACGCT");
  CHECK(folded.sequence.length() == 9);
  CHECK(folded.sequence.minimum_period() == 9);

  try {
    parse_fasta(">x\nACGN\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("illegal symbol N at position 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_fasta(">x\n\n"), ParseError);
  CHECK_THROWS_AS(parse_fasta(""), ParseError);

  auto wrapped = parse_fasta(">chr desc here\r\nAC\r\n\r\nGT\r\n>second\nTTTT\n");
  CHECK(wrapped.sequence.str() == "ACGT");
  CHECK(wrapped.description == "chr desc here");

  auto mapped = parse_fasta(">x\nACNRT\n", FastaOptions{true});
  CHECK(mapped.sequence.str() == "ACAAT");
  CHECK(mapped.replaced == 2);
}

TEST_CASE("write_fasta uses the canonical rotation") {
  std::ostringstream out;
  write_fasta(out, "s", CircularSequence("GTAC"), 2);
  CHECK(out.str() == ">s\nAC\nGT\n");
}

TEST_CASE("window") {
  CircularSequence s("ACGTACGCT");
  CHECK(s.window(7, 3) == "CTA");
  CHECK(window(CircularSequence("ACGT"), 0, 4) == "ACGT");
  CHECK(window(CircularSequence("AAAA"), 2, 3) == "AAA");
  CHECK(window(s, 16, 3) == "CTA");
  CHECK_THROWS_AS(s.window(0, 10), InvalidArgument);
  CHECK_THROWS_AS(s.window(0, 0), InvalidArgument);
}

TEST_CASE("hamming") {
  CHECK(hamming("TACGC", "TACGT") == 1);
  CircularSequence s("ACGTACGCT");
  CHECK(hamming(s.window(3, 5), s.window(8, 5)) == 1);
  CHECK(hamming("ACG", "ACG") == 0);
  CHECK(hamming("ACG", "TGA") == 3);
  CHECK_THROWS_AS(hamming("AC", "ACG"), InvalidArgument);
}

TEST_CASE("hamming is a metric") {
  Rng rng(11);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 12);
    auto x = testgen::random_string(rng, n, "ACGT");
    auto y = testgen::random_string(rng, n, "ACGT");
    auto z = testgen::random_string(rng, n, "ACGT");
    CHECK(hamming(x, y) == hamming(y, x));
    CHECK((hamming(x, y) == 0) == (x == y));
    CHECK(hamming(x, z) <= hamming(x, y) + hamming(y, z));
    CHECK(erasure_compatible(x, y) == (x == y));
  }
}

TEST_CASE("erasure_compatible") {
  CHECK(erasure_compatible("ACNT", "ACGT"));
  CHECK_FALSE(erasure_compatible("ACNT", "ACGA"));
  CHECK(erasure_compatible(ErasableString("NNNN"), "TTGA"));
  CHECK(ErasableString("ACNT").to_display() == "AC·T");
  CHECK(ErasableString("ACNT").erasure_count() == 1);
  CHECK_THROWS_AS(erasure_compatible("ACN", "ACGT"), InvalidArgument);
  CHECK_THROWS_AS(ErasableString("ACX"), InvalidArgument);
}

TEST_CASE("rotation_equal and canonical form") {
  CHECK(rotation_equal(CircularSequence("ACGT"), CircularSequence("GTAC")));
  CHECK_FALSE(rotation_equal(CircularSequence("ACGT"), CircularSequence("ACGA")));
  CHECK(rotation_equal(CircularSequence("AAAA"), CircularSequence("AAAA")));
  CHECK_FALSE(rotation_equal(CircularSequence("ACGT"), CircularSequence("ACGTA")));

  Rng rng(5);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + uniform_below(rng, 15);
    CircularSequence s(testgen::random_string(rng, n, it % 2 ? "AC" : "ACGT"));
    std::string brute = s.str();
    for (std::size_t r = 0; r < n; ++r) brute = std::min(brute, s.window(r, n));
    CHECK(s.canonical().str() == brute);
    CHECK(s.canonical().canonical() == s.canonical());
    const std::size_t t = uniform_below(rng, n);
    CHECK(rotation_equal(s, CircularSequence(s.window(t, n))));
    CHECK(rotation_equal(CircularSequence(s.window(t, n)), s));
  }
}

TEST_CASE("minimum period") {
  CHECK(CircularSequence("AAAA").minimum_period() == 1);
  CHECK_FALSE(CircularSequence("ACAC").theorem_grade());
  CHECK(CircularSequence("ACACA").minimum_period() == 5);
  CHECK(CircularSequence("ACGACG").minimum_period() == 3);
  CHECK(CircularSequence("ACGTACGCT").theorem_grade());
  CHECK_THROWS_AS(CircularSequence(""), InvalidArgument);
  CHECK_THROWS_AS(CircularSequence("ACGu"), InvalidArgument);
}
