"""Desk-scale workbench for Kolmogorov complexity experiments.

Everything the package reports about the complexity of a specific string is
an upper bound with a replayable witness program (or an explicit NotFound);
lower bounds on K/H of specific strings are uncomputable and are never
emitted.  The halting-probability estimate is the one certified lower bound,
and it bounds the machine's halting probability, not any string's complexity.
"""

from .census import CensusReport, census, deficiency_profile
from .codec import DecodeError, bin_nat, decode_pair, encode_pair, pad
from .complexity import (
    ComplexityBound,
    compose_program,
    estimate_k,
    estimate_k_given,
    estimate_k_pair,
    info_estimate,
    mix_programs,
)
from .dovetail import HaltingEvent, reconstruct_level_set, sweep
from .machines import (
    E_COMP,
    E_FLIP,
    E_FST,
    E_ID,
    E_LOOP,
    E_MIX,
    E_SND,
    E_ZEROS,
    TABLE_ZONE_START,
    ExecBudget,
    Machine,
    ResourceRefusal,
    RunOutcome,
    conditional_run,
    enumerate_machine,
    run,
    universal_run,
    wrap_program,
)
from .palindrome import crossing_sequences, quadratic_report, run_palindrome_tm
from .prefixfree import (
    OmegaEstimate,
    estimate_h,
    kraft_sum,
    lift_to_prefix,
    omega_estimate,
    prefix_universal_run,
)
from .randomness import (
    FiniteMLTest,
    cylinder_measure,
    frequency_stats,
    lil_statistic,
    ml_test_eval,
    select_subsequence,
    source_from_spec,
)

__version__ = "0.1.0"

__all__ = [
    "DecodeError",
    "pad",
    "bin_nat",
    "encode_pair",
    "decode_pair",
    "E_ID",
    "E_LOOP",
    "E_SND",
    "E_COMP",
    "E_MIX",
    "E_FLIP",
    "E_FST",
    "E_ZEROS",
    "TABLE_ZONE_START",
    "ExecBudget",
    "RunOutcome",
    "Machine",
    "ResourceRefusal",
    "enumerate_machine",
    "wrap_program",
    "run",
    "universal_run",
    "conditional_run",
    "HaltingEvent",
    "sweep",
    "reconstruct_level_set",
    "ComplexityBound",
    "estimate_k",
    "estimate_k_given",
    "estimate_k_pair",
    "compose_program",
    "mix_programs",
    "info_estimate",
    "OmegaEstimate",
    "lift_to_prefix",
    "prefix_universal_run",
    "estimate_h",
    "kraft_sum",
    "omega_estimate",
    "CensusReport",
    "census",
    "deficiency_profile",
    "FiniteMLTest",
    "source_from_spec",
    "frequency_stats",
    "select_subsequence",
    "lil_statistic",
    "cylinder_measure",
    "ml_test_eval",
    "run_palindrome_tm",
    "crossing_sequences",
    "quadratic_report",
]
