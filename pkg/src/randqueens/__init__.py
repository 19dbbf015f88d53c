"""Random greedy construction of n-queens solutions with an absorption repair phase."""

from .absorption import (
    AbsorberQuery,
    AbsorptionError,
    AbsorptionResult,
    absorber_counts,
    absorbers,
    apply_absorber,
    balanced_pair_count,
    balanced_region,
    in_balanced_region,
    is_balanced,
    is_ell_absorbing,
    run_absorption,
    safe_absorbers,
)
from .analysis import (
    BoundWitness,
    CouplingReport,
    TrajectoryPrediction,
    concentration_report,
    counting_witness,
    coupling_experiment,
    predict,
)
from .board import ConfigError, LineId, LineKind, PartialConfig, Position, Rule, available_set, verify
from .greedy import (
    GreedyOutcome,
    GreedyParams,
    RankGrid,
    Trajectory,
    default_stop,
    run_greedy,
    run_greedy_coupled,
    step_change_audit,
)
from .pipeline import solve, trial_seed

__version__ = "0.1.0"
