import pytest

import spectra

TINY = "ACGTACGCT"


def test_thresholds():
    s = spectra.CircularSequence(TINY)
    assert spectra.l_crit(s) == 2
    rep = spectra.interleaved_length(s)
    assert rep.l_inter == 1 and rep.witness.b1 == 3
    t = spectra.l_crit_noisy(s, 1)
    assert (t.lower, t.upper, t.exact) == (5, 5, True)
    assert spectra.approx_repeat_bounds(s, 1, 3).upper == 3
    assert spectra.approx_repeat_bounds(TINY, 1, 4, mode="bracket").lower <= 2


def test_simulate_and_assemble():
    s = spectra.CircularSequence(TINY)
    for strategy in ("suffix", "repeat", "random"):
        reads, origin = spectra.simulate(s, 6, 1, strategy, seed=4)
        assert len(reads) == 9 and sorted(origin) == list(range(9))
        result = spectra.full_pipeline(reads, 1)
        assert spectra.rotation_equal(result.sequence, s)
        assert result.certificate.certified
    consensus, sigma = spectra.find_consistent_assembly(reads, 1, seed=2)
    assert spectra.rotation_equal(consensus, s) and sorted(sigma) == list(range(9))
    corrected = spectra.correct_spectrum(reads, 1, 3)
    assert corrected.guaranteed
    assert corrected.spectrum == sorted(s.window(i, 4) for i in range(9))


def test_ambiguity_and_certificates():
    s = spectra.CircularSequence(TINY)
    two = spectra.assemble_noiseless([s.window(i, 2) for i in range(9)])
    assert not two.unique and len(two.ambiguity.reconstructions) >= 2
    reads, _ = spectra.simulate(s, 6, 1)
    assert spectra.certify(s, reads, 1).certified
    bad = spectra.certify(spectra.CircularSequence("ACGTACGCA"), reads, 1)
    assert not bad.certified and bad.reason == "inconsistent"


def test_reads_round_trip():
    reads, _ = spectra.simulate(spectra.CircularSequence(TINY), 4, 1, "random", 9)
    again = spectra.ReadSet.parse(reads.format())
    assert again.strings() == reads.strings() and again.D == 1


def test_oracles_agree():
    s = spectra.CircularSequence(TINY)
    assert spectra.oracle.brute_lcrit(s) == 2
    assert spectra.oracle.exact_center_M(s, 1, 4) == 2
    reads, _ = spectra.simulate(s, 6, 1)
    assert spectra.oracle.enumerate_consistent(reads, 1) == [s.canonical().__str__()]
    assert spectra.oracle.hall_matching_check(s, s.rotated(4), 3)


def test_errors():
    with pytest.raises(spectra.InvalidArgument):
        spectra.CircularSequence("ACGX")
    with pytest.raises(spectra.ParseError):
        spectra.parse_fasta("no header")
    with pytest.raises(spectra.InvalidArgument):
        spectra.simulate(spectra.CircularSequence(TINY), 3, 3)
    assert issubclass(spectra.NoConsistentAssembly, spectra.Error)
