#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spectra/approx.hpp"
#include "spectra/assembly.hpp"
#include "spectra/debruijn.hpp"
#include "spectra/errors.hpp"
#include "spectra/fasta.hpp"
#include "spectra/oracle.hpp"
#include "spectra/pipeline.hpp"
#include "spectra/reads.hpp"
#include "spectra/repeats.hpp"

namespace py = pybind11;
using namespace spectra;

namespace {

ApproxMode parse_mode(const std::string& mode) {
  if (mode == "exact") return ApproxMode::exact;
  if (mode == "bracket") return ApproxMode::bracket;
  throw InvalidArgument("mode must be 'exact' or 'bracket', got '" + mode + "'");
}

SearchOptions search_options(std::optional<std::uint64_t> seed) {
  SearchOptions o;
  o.shuffle_seed = seed;
  return o;
}

} // namespace

PYBIND11_MODULE(_spectra, m) {
  m.doc() = "Repeat thresholds, erasure simulation and certified assembly of circular genomes";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
  py::register_exception<OracleBudgetExceeded>(m, "OracleBudgetExceeded", error.ptr());
  py::register_exception<NoConsistentAssembly>(m, "NoConsistentAssembly", error.ptr());

  py::class_<CircularSequence>(m, "CircularSequence")
      .def(py::init<std::string>(), py::arg("symbols"))
      .def("__len__", &CircularSequence::length)
      .def("__str__", &CircularSequence::str)
      .def("__repr__",
           [](const CircularSequence& s) { return "CircularSequence('" + s.str() + "')"; })
      .def("__eq__", [](const CircularSequence& a, const CircularSequence& b) { return a == b; })
      .def("__hash__", [](const CircularSequence& s) { return py::hash(py::str(s.str())); })
      .def("window", &CircularSequence::window, py::arg("start"), py::arg("length"))
      .def("rotated", &CircularSequence::rotated, py::arg("offset"))
      .def("canonical", &CircularSequence::canonical)
      .def_property_readonly("minimum_period", &CircularSequence::minimum_period)
      .def_property_readonly("theorem_grade", &CircularSequence::theorem_grade);
  py::implicitly_convertible<std::string, CircularSequence>();

  m.def("rotation_equal", &rotation_equal, py::arg("a"), py::arg("b"));

  m.def(
      "read_fasta",
      [](const std::filesystem::path& path, bool map_unknown) {
        FastaRecord r = read_fasta_file(path, {map_unknown});
        return py::make_tuple(r.id, r.sequence, r.replaced);
      },
      py::arg("path"), py::arg("map_unknown") = false,
      "Returns (id, sequence, replaced_symbols); gzip input is decompressed.");
  m.def(
      "parse_fasta",
      [](const std::string& text, bool map_unknown) {
        return parse_fasta(text, {map_unknown}).sequence;
      },
      py::arg("text"), py::arg("map_unknown") = false);

  py::class_<RepeatPair>(m, "RepeatPair")
      .def_readonly("pos1", &RepeatPair::pos1)
      .def_readonly("pos2", &RepeatPair::pos2)
      .def_readonly("length", &RepeatPair::length)
      .def("__repr__", [](const RepeatPair& p) {
        std::ostringstream os;
        os << "RepeatPair(" << p.pos1 << ", " << p.pos2 << ", " << p.length << ")";
        return os.str();
      });
  py::class_<InterleavedWitness>(m, "InterleavedWitness")
      .def_readonly("pair_a", &InterleavedWitness::pair_a)
      .def_readonly("pair_b", &InterleavedWitness::pair_b)
      .def_readonly("a1", &InterleavedWitness::a1)
      .def_readonly("b1", &InterleavedWitness::b1)
      .def_readonly("a2", &InterleavedWitness::a2)
      .def_readonly("b2", &InterleavedWitness::b2)
      .def_readonly("length", &InterleavedWitness::length);
  py::class_<RepeatReport>(m, "RepeatReport")
      .def_readonly("l_inter", &RepeatReport::l_inter)
      .def_readonly("l_crit", &RepeatReport::l_crit)
      .def_readonly("witness", &RepeatReport::witness)
      .def_readonly("warnings", &RepeatReport::warnings);

  m.def("l_crit", &l_crit, py::arg("seq"));
  m.def("interleaved_length", &interleaved_length, py::arg("seq"));
  m.def("maximal_repeats", &maximal_repeats, py::arg("seq"), py::arg("min_length") = 1);

  py::class_<MBound>(m, "MBound")
      .def_readonly("d", &MBound::d)
      .def_readonly("length", &MBound::length)
      .def_readonly("lower", &MBound::lower)
      .def_readonly("upper", &MBound::upper)
      .def_readonly("exact", &MBound::exact)
      .def_readonly("trivial_upper", &MBound::trivial_upper);
  py::class_<NoisyThreshold>(m, "NoisyThreshold")
      .def_readonly("D", &NoisyThreshold::D)
      .def_readonly("l_crit", &NoisyThreshold::l_crit)
      .def_readonly("lower", &NoisyThreshold::lower)
      .def_readonly("upper", &NoisyThreshold::upper)
      .def_readonly("argmin_k", &NoisyThreshold::argmin_k)
      .def_readonly("exact", &NoisyThreshold::exact)
      .def_readonly("too_wide", &NoisyThreshold::too_wide)
      .def_readonly("rows", &NoisyThreshold::rows)
      .def_readonly("warnings", &NoisyThreshold::warnings);

  m.def(
      "approx_repeat_bounds",
      [](const CircularSequence& s, std::size_t d, std::size_t length, const std::string& mode) {
        return approx_repeat_bounds(s, d, length, parse_mode(mode));
      },
      py::arg("seq"), py::arg("d"), py::arg("length"), py::arg("mode") = "exact");
  m.def(
      "l_crit_noisy",
      [](const CircularSequence& s, std::size_t D, const std::string& mode, unsigned threads) {
        ApproxConfig config;
        config.threads = threads;
        py::gil_scoped_release release;
        return l_crit_noisy(s, D, parse_mode(mode), config);
      },
      py::arg("seq"), py::arg("D"), py::arg("mode") = "exact", py::arg("threads") = 1);

  py::class_<ReadSet>(m, "ReadSet")
      .def(py::init([](const std::vector<std::string>& reads, std::size_t D) {
             if (reads.empty()) throw InvalidArgument("read set is empty");
             std::vector<ErasableString> rs;
             for (const auto& r : reads) rs.emplace_back(r);
             const std::size_t L = rs.front().length();
             return ReadSet(std::move(rs), L, D);
           }),
           py::arg("reads"), py::arg("D") = 0)
      .def("__len__", &ReadSet::size)
      .def_property_readonly("L", &ReadSet::L)
      .def_property_readonly("D", &ReadSet::D)
      .def_property_readonly("seed", &ReadSet::seed)
      .def("strings", &ReadSet::strings)
      .def("format", &format_reads)
      .def_static("parse", &parse_reads, py::arg("text"));

  m.def(
      "simulate",
      [](const CircularSequence& s, std::size_t L, std::size_t D, const std::string& strategy,
         std::uint64_t seed) {
        SimulatedReads sim = spectrum(s, L, seed);
        if (D > 0) sim = apply_erasures(s, sim, D, {parse_strategy(strategy), seed});
        return py::make_tuple(sim.reads, sim.origin);
      },
      py::arg("seq"), py::arg("L"), py::arg("D") = 0, py::arg("strategy") = "suffix",
      py::arg("seed") = 0, "Returns (reads, origin) where origin[i] is the start of read i.");

  m.def(
      "check_consistency",
      [](const CircularSequence& candidate, const ReadSet& reads, std::size_t D) {
        return check_consistency(candidate, reads, D).consistent;
      },
      py::arg("candidate"), py::arg("reads"), py::arg("D"));

  m.def(
      "find_consistent_assembly",
      [](const ReadSet& reads, std::size_t D, std::optional<std::uint64_t> seed) {
        FoundAssembly f = [&] {
          py::gil_scoped_release release;
          return find_consistent_assembly(reads, D, search_options(seed));
        }();
        return py::make_tuple(f.consensus, f.assembly.sigma);
      },
      py::arg("reads"), py::arg("D"), py::arg("seed") = py::none(),
      "Returns (consensus, sigma) with sigma[i] the position of read i.");

  py::class_<CorrectedSpectrum>(m, "CorrectedSpectrum")
      .def_readonly("k", &CorrectedSpectrum::k)
      .def_readonly("spectrum", &CorrectedSpectrum::spectrum)
      .def_readonly("consensus", &CorrectedSpectrum::consensus)
      .def_readonly("guaranteed", &CorrectedSpectrum::guaranteed)
      .def_readonly("m", &CorrectedSpectrum::m)
      .def_readonly("warnings", &CorrectedSpectrum::warnings);
  m.def(
      "correct_spectrum",
      [](const ReadSet& reads, std::size_t D, std::size_t k, std::optional<std::uint64_t> seed) {
        py::gil_scoped_release release;
        return correct_spectrum(reads, D, k, search_options(seed));
      },
      py::arg("reads"), py::arg("D"), py::arg("k"), py::arg("seed") = py::none());

  py::class_<AmbiguityReport>(m, "AmbiguityReport")
      .def_readonly("reconstructions", &AmbiguityReport::reconstructions)
      .def_readonly("move", &AmbiguityReport::move);
  py::class_<NoiselessAssembly>(m, "NoiselessAssembly")
      .def_readonly("sequence", &NoiselessAssembly::sequence)
      .def_readonly("ambiguity", &NoiselessAssembly::ambiguity)
      .def_property_readonly("unique", &NoiselessAssembly::unique);
  m.def(
      "assemble_noiseless",
      [](const std::vector<std::string>& spectrum) { return assemble_noiseless(spectrum); },
      py::arg("spectrum"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("candidate", &Certificate::candidate)
      .def_readonly("threshold", &Certificate::threshold)
      .def_readonly("L", &Certificate::L)
      .def_readonly("D", &Certificate::D)
      .def_readonly("consistent", &Certificate::consistent)
      .def_readonly("certified", &Certificate::certified)
      .def_readonly("reason", &Certificate::reason);
  m.def(
      "certify",
      [](const CircularSequence& candidate, const ReadSet& reads, std::size_t D) {
        py::gil_scoped_release release;
        return certify(candidate, reads, D);
      },
      py::arg("candidate"), py::arg("reads"), py::arg("D"));

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("sequence", &PipelineResult::sequence)
      .def_readonly("ambiguity", &PipelineResult::ambiguity)
      .def_readonly("consensus", &PipelineResult::consensus)
      .def_readonly("k", &PipelineResult::k)
      .def_readonly("guaranteed", &PipelineResult::guaranteed)
      .def_readonly("certificate", &PipelineResult::certificate)
      .def_readonly("warnings", &PipelineResult::warnings);
  m.def(
      "full_pipeline",
      [](const ReadSet& reads, std::size_t D, std::optional<std::uint64_t> seed) {
        py::gil_scoped_release release;
        return full_pipeline(reads, D, {}, search_options(seed));
      },
      py::arg("reads"), py::arg("D"), py::arg("seed") = py::none());

  auto orc = m.def_submodule("oracle", "Brute-force references for small inputs");
  orc.def(
      "brute_lcrit",
      [](const CircularSequence& s) {
        return oracle::brute_lcrit(s, oracle::OracleBudget::from_environment());
      },
      py::arg("seq"));
  orc.def(
      "exact_center_M",
      [](const CircularSequence& s, std::size_t d, std::size_t length) {
        return oracle::exact_center_M(s, d, length, oracle::OracleBudget::from_environment());
      },
      py::arg("seq"), py::arg("d"), py::arg("length"));
  orc.def(
      "enumerate_consistent",
      [](const ReadSet& reads, std::size_t D, const std::string& alphabet) {
        return oracle::enumerate_consistent(reads, D, alphabet, reads.size(),
                                            oracle::OracleBudget::from_environment());
      },
      py::arg("reads"), py::arg("D"), py::arg("alphabet") = "ACGT");
  orc.def(
      "enumerate_eulerian",
      [](const std::vector<std::string>& spectrum, std::size_t max_classes) {
        return oracle::enumerate_eulerian(spectrum, max_classes,
                                          oracle::OracleBudget::from_environment());
      },
      py::arg("spectrum"), py::arg("max_classes") = 0);
  orc.def(
      "hall_matching_check",
      [](const CircularSequence& truth, const CircularSequence& candidate, std::size_t k) {
        return oracle::hall_matching_check(truth, candidate, k,
                                           oracle::OracleBudget::from_environment());
      },
      py::arg("truth"), py::arg("candidate"), py::arg("k"));
}
