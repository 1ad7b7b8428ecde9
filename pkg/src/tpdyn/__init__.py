"""Dynamics of language change for populations of threshold-based rule learners."""

from .deterministic import (
    EnvParams,
    FixedPointReport,
    HomogeneousReport,
    Trajectory,
    derivative,
    exception_prob,
    fixed_points,
    homogeneous_report,
    step,
    trajectory,
    variant_frequency,
)
from .markov import (
    ChainSpec,
    ResourceLimitError,
    StationaryResult,
    absorbing_states,
    convergence_prob,
    sample_trajectory,
    stationary_distribution,
    transition_matrix,
)
from .multigen import CohortWeights, g_term, step_multigen, trajectory_multigen
from .oracle import empirical_convergence_prob, empirical_generation, simulate_learner
from .tolerance import (
    RuleStats,
    ZipfSpec,
    expected_cost_ecm,
    expected_cost_ranked,
    harmonic,
    intermediate_threshold,
    is_productive,
    productive_base_form,
    threshold_agreement_table,
    tolerance_threshold,
    zipf_frequency,
)

__all__ = [
    "EnvParams", "FixedPointReport", "HomogeneousReport", "Trajectory",
    "derivative", "exception_prob", "fixed_points", "homogeneous_report",
    "step", "trajectory", "variant_frequency",
    "ChainSpec", "ResourceLimitError", "StationaryResult", "absorbing_states",
    "convergence_prob", "sample_trajectory", "stationary_distribution",
    "transition_matrix",
    "CohortWeights", "g_term", "step_multigen", "trajectory_multigen",
    "empirical_convergence_prob", "empirical_generation", "simulate_learner",
    "RuleStats", "ZipfSpec", "expected_cost_ecm", "expected_cost_ranked",
    "harmonic", "intermediate_threshold", "is_productive",
    "productive_base_form", "threshold_agreement_table", "tolerance_threshold",
    "zipf_frequency",
]

__version__ = "0.1.0"
