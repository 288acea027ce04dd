"""Quantum expander codes: hypergraph products of biregular bipartite
graphs, with sequential and parallel small-set-flip decoding."""

from ._kernels import MODE as kernel_mode
from .analysis import (OutcomeClass, SyndromeAdjacencyGraph,
                       brute_force_decode, build_syndrome_graph, classify,
                       connected_components, find_witness, locality_check,
                       max_conn_alpha, normalized_weight)
from .code import (CssCode, build_code, code_dimension,
                   css_orthogonality_violations, swap_roles, syndrome_x)
from .constants import ConstantsLedger, to_fraction
from .decoder import (DecodeOutcome, DecoderParams, FlipTable,
                      check_coloring, check_flip_log, color_generators,
                      decode_beta, decode_parallel, decode_ratio, f0_steps,
                      precompute_flips, run_decoder, write_flip_log)
from .errors import (BudgetError, CapacityError, InvariantViolation,
                     ParameterError, PreconditionError, QExpanderError,
                     SamplingError, UnsupportedModelError)
from .graph import (BipartiteGraph, check_biregular, expansion_profile,
                    load_graph, sample_biregular, save_graph)
from .harness import (ExperimentConfig, build_instance, mann_kendall,
                      run_cycles, run_invariant_audit, run_sweep,
                      support_slack, wilson_interval)
from .noise import NoiseSpec, ls_audit, observed_syndrome, sample_error, trial_rng

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "BudgetError", "CapacityError", "ConstantsLedger",
    "CssCode", "DecodeOutcome", "DecoderParams", "ExperimentConfig",
    "FlipTable", "InvariantViolation", "NoiseSpec", "OutcomeClass",
    "ParameterError", "PreconditionError", "QExpanderError", "SamplingError",
    "SyndromeAdjacencyGraph", "UnsupportedModelError",
    "brute_force_decode", "build_code", "build_instance",
    "build_syndrome_graph", "check_biregular", "check_coloring",
    "check_flip_log", "classify", "code_dimension", "color_generators",
    "connected_components", "css_orthogonality_violations", "decode_beta",
    "decode_parallel", "decode_ratio", "expansion_profile", "f0_steps",
    "find_witness", "kernel_mode", "load_graph", "locality_check",
    "ls_audit", "mann_kendall", "max_conn_alpha", "normalized_weight",
    "observed_syndrome", "precompute_flips", "run_cycles", "run_decoder",
    "run_invariant_audit", "run_sweep", "sample_biregular", "sample_error",
    "save_graph", "support_slack", "swap_roles", "syndrome_x", "to_fraction",
    "trial_rng", "wilson_interval", "write_flip_log",
]
