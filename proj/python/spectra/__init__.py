"""Repeat thresholds, erasure simulation and certified assembly of circular genomes."""

from ._spectra import (
    AmbiguityReport,
    Certificate,
    CircularSequence,
    CorrectedSpectrum,
    Error,
    InfeasibleError,
    InvalidArgument,
    MBound,
    NoConsistentAssembly,
    NoisyThreshold,
    OracleBudgetExceeded,
    ParseError,
    PipelineResult,
    ReadSet,
    RepeatReport,
    approx_repeat_bounds,
    assemble_noiseless,
    certify,
    check_consistency,
    correct_spectrum,
    find_consistent_assembly,
    full_pipeline,
    interleaved_length,
    l_crit,
    l_crit_noisy,
    maximal_repeats,
    oracle,
    parse_fasta,
    read_fasta,
    rotation_equal,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
