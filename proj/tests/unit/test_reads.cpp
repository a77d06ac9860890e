#include <algorithm>
#include <map>

#include "doctest.h"
#include "gen.hpp"
#include "spectra/errors.hpp"
#include "spectra/reads.hpp"

using namespace spectra;

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::string> windows(const CircularSequence& s, std::size_t L) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.length(); ++i) out.push_back(s.window(i, L));
  return sorted(out);
}

} // namespace

TEST_CASE("spectrum") {
  auto r = spectrum(CircularSequence("ACGT"), 2, 1);
  CHECK(sorted(r.reads.strings()) == std::vector<std::string>{"AC", "CG", "GT", "TA"});
  CHECK(r.reads.D() == 0);

  auto t = spectrum(CircularSequence("ACGTACGCT"), 3, 4);
  auto strs = t.reads.strings();
  CHECK(strs.size() == 9);
  CHECK(std::count(strs.begin(), strs.end(), "ACG") == 2);

  auto h = spectrum(CircularSequence("AAAA"), 3);
  CHECK(h.reads.strings() == std::vector<std::string>(4, "AAA"));

  CHECK_THROWS_AS(spectrum(CircularSequence("ACGT"), 5), InvalidArgument);
  CHECK_THROWS_AS(spectrum(CircularSequence("ACGT"), 0), InvalidArgument);
}

TEST_CASE("spectrum presentation order is a seeded shuffle") {
  CircularSequence s("ACGTACGCTTAGGCAT");
  auto a = spectrum(s, 5, 99);
  auto b = spectrum(s, 5, 99);
  CHECK(a.reads == b.reads);
  CHECK(a.origin == b.origin);
  for (std::size_t i = 0; i < a.origin.size(); ++i) {
    CHECK(a.reads[i].str() == s.window(a.origin[i], 5));
  }
  auto full = spectrum(s, s.length(), 3);
  for (const auto& r : full.reads.strings()) CHECK(rotation_equal(CircularSequence(r), s));
}

TEST_CASE("suffix_erase") {
  CircularSequence s("ACGTACGCT");
  auto clean = spectrum(s, 6, 1);
  auto noisy = apply_erasures(s, clean, 2, {ErasureStrategy::Kind::suffix_erase, 0});
  std::vector<std::size_t> per_base(9, 0);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto& r = noisy.reads[i];
    CHECK(r.str().substr(4) == "NN");
    CHECK(r.erasure_count() == 2);
    for (std::size_t j = 0; j < 6; ++j)
      if (r.erased(j)) ++per_base[(noisy.origin[i] + j) % 9];
  }
  for (auto c : per_base) CHECK(c == 2);
  // base i is erased by the reads starting at i-5 and i-4
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t k = 0; k < 9; ++k) {
      const std::size_t o = noisy.origin[k];
      const bool covers = (o + 4) % 9 == i || (o + 5) % 9 == i;
      const std::size_t j = (i + 9 - o) % 9;
      if (covers) CHECK(noisy.reads[k].erased(j));
    }
  }
  CHECK(validate_erasure_budget(noisy.reads, s, noisy.origin, 2).valid);

  // dropping the erased suffix leaves the (L-D)-spectrum
  std::vector<std::string> trimmed;
  for (const auto& r : noisy.reads.strings()) trimmed.push_back(r.substr(0, 4));
  CHECK(sorted(trimmed) == windows(s, 4));
}

TEST_CASE("zero budget leaves reads unchanged") {
  CircularSequence s("ACGTACGCT");
  auto clean = spectrum(s, 4, 2);
  for (auto k : {ErasureStrategy::Kind::suffix_erase, ErasureStrategy::Kind::repeat_targeted,
                 ErasureStrategy::Kind::random_budgeted}) {
    auto out = apply_erasures(s, clean, 0, {k, 5});
    CHECK(out.reads == clean.reads);
  }
  CHECK_THROWS_AS(apply_erasures(s, clean, 4, {}), InvalidArgument);
}

TEST_CASE("every strategy respects both budgets") {
  Rng rng(53);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 4 + uniform_below(rng, 40);
    auto s = testgen::random_aperiodic(rng, n, it % 2 ? "AC" : "ACGT");
    const std::size_t L = 2 + uniform_below(rng, n - 1);
    const std::size_t D = uniform_below(rng, std::min<std::size_t>(L, 4));
    auto clean = spectrum(s, L, it);
    for (auto k : {ErasureStrategy::Kind::suffix_erase, ErasureStrategy::Kind::repeat_targeted,
                   ErasureStrategy::Kind::random_budgeted}) {
      auto a = apply_erasures(s, clean, D, {k, std::uint64_t(it)});
      auto b = apply_erasures(s, clean, D, {k, std::uint64_t(it)});
      CHECK(a.reads == b.reads);
      auto rep = validate_erasure_budget(a.reads, s, a.origin, D);
      CHECK(rep.valid);
      CHECK(rep.bases_checked);
    }
  }
}

TEST_CASE("random_budgeted with seed 7") {
  CircularSequence s("ACGTACGCT");
  auto out = apply_erasures(s, spectrum(s, 6), 1, {ErasureStrategy::Kind::random_budgeted, 7});
  CHECK(validate_erasure_budget(out.reads, s, out.origin, 1).valid);
  std::size_t total = 0;
  for (const auto& r : out.reads.reads()) total += r.erasure_count();
  CHECK(total > 0);
}

TEST_CASE("repeat_targeted erases inside repeats") {
  CircularSequence s("ACGTACGCT");
  auto out = apply_erasures(s, spectrum(s, 6), 1, {ErasureStrategy::Kind::repeat_targeted, 3});
  std::size_t total = 0;
  for (const auto& r : out.reads.reads()) total += r.erasure_count();
  CHECK(total > 0);
  CHECK(validate_erasure_budget(out.reads, s, out.origin, 1).valid);
}

TEST_CASE("validator reports violations") {
  ReadSet over({ErasableString("ANNA"), ErasableString("ACGT")}, 4, 1);
  auto rep = validate_erasure_budget(over, 1);
  CHECK_FALSE(rep.valid);
  CHECK(rep.reads_over_budget == std::vector<std::size_t>{0});

  // D+1 erasures stacked on base 2 of "ACGT" with 2-reads, each read within budget
  CircularSequence s("ACGT");
  ReadSet stacked({ErasableString("AC"), ErasableString("NG"), ErasableString("GT"),
                   ErasableString("TA")},
                  2, 1);
  // origins: read 1 covers bases 1,2 so base 1 is erased once; put another on base 1
  ReadSet stacked2({ErasableString("AN"), ErasableString("NG"), ErasableString("GT"),
                    ErasableString("TA")},
                   2, 1);
  std::vector<std::size_t> origin{0, 1, 2, 3};
  CHECK(validate_erasure_budget(stacked, s, origin, 1).valid);
  auto r2 = validate_erasure_budget(stacked2, s, origin, 1);
  CHECK(validate_erasure_budget(stacked2, 1).valid);
  CHECK_FALSE(r2.valid);
  CHECK(r2.bases_over_budget == std::vector<std::size_t>{1});

  ReadSet wrong({ErasableString("AC"), ErasableString("CG"), ErasableString("GA"),
                 ErasableString("TA")},
                2, 0);
  auto r3 = validate_erasure_budget(wrong, s, origin, 0);
  CHECK(r3.reads_mismatching == std::vector<std::size_t>{2});
}

TEST_CASE("reads file round trip") {
  CircularSequence s("ACGTACGCT");
  auto noisy = apply_erasures(s, spectrum(s, 6, 1), 1, {ErasureStrategy::Kind::suffix_erase, 0});
  const std::string text = format_reads(noisy.reads);
  CHECK(text.rfind("#spectrum L=6 D=1 G=9 circular=1 seed=1\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
  auto back = parse_reads(text);
  CHECK(back == noisy.reads);
  CHECK(format_reads(back) == text);

  CHECK_THROWS_AS(parse_reads("ACGT\n"), ParseError);
  CHECK_THROWS_AS(parse_reads("#spectrum L=2 D=0 G=2 circular=1 seed=0\nAC\n"), ParseError);
  CHECK_THROWS_AS(parse_reads("#spectrum L=2 D=0 G=2 circular=1 seed=0\nAC\nCGT\n"), ParseError);
  CHECK_THROWS_AS(parse_reads("#spectrum L=2 D=0 G=2 circular=1 seed=0\nAC\nCX\n"), ParseError);
  CHECK_THROWS_AS(parse_reads("#spectrum L=2 D=0 G=1 circular=0 seed=0\nAC\n"), ParseError);
  CHECK_THROWS_AS(parse_reads("#spectrum L=x D=0 G=1 circular=1 seed=0\nAC\n"), ParseError);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("suffix") == ErasureStrategy::Kind::suffix_erase);
  CHECK(parse_strategy("repeat_targeted") == ErasureStrategy::Kind::repeat_targeted);
  CHECK(parse_strategy("random") == ErasureStrategy::Kind::random_budgeted);
  CHECK(to_string(ErasureStrategy::Kind::random_budgeted) == "random_budgeted");
  CHECK_THROWS_AS(parse_strategy("nope"), InvalidArgument);
}
