"""Seminar topic assignment by reduced variable neighborhood search.

Students rank m seminar topics with weights summing to a fixed total; the
solver assigns each student one topic within per-topic capacity bounds,
maximizing total utility, optionally trading it off against the imbalance
of supervision load across staff groups.
"""

from .errors import (ConfigError, InconsistentMoveError,
                     InfeasibleAssignmentError, InvalidInstanceError,
                     NoMoveAvailable, OracleGuardError, RunCancelled,
                     SchemaError, SeminarAssignError)
from .kernels import BACKEND, NUMBA_ENABLED
from .model import (Assignment, Instance, Labels, Outcome, default_capacities,
                    imbalance, imbalance_delta, is_feasible,
                    normalize_weight_rows, outcome, utility, utility_delta)
from .neighborhoods import (ALL_KINDS, Move, NeighborhoodKind,
                            applicable_kinds, apply, inapplicability_reasons,
                            propose, propose_shift, propose_shift_swap2,
                            propose_swap2, propose_swap3)
from .search import (EqualQualityArchive, Mode, ParetoArchive, RunReport,
                     SearchConfig, count_alternatives, initial_solution,
                     run_vns, update_equal_quality, update_pareto)

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS", "Assignment", "BACKEND", "ConfigError",
    "EqualQualityArchive", "InconsistentMoveError",
    "InfeasibleAssignmentError", "Instance", "InvalidInstanceError", "Labels",
    "Mode", "Move", "NUMBA_ENABLED", "NeighborhoodKind", "NoMoveAvailable",
    "OracleGuardError", "Outcome", "ParetoArchive", "RunCancelled",
    "RunReport", "SchemaError", "SearchConfig", "SeminarAssignError",
    "applicable_kinds", "apply", "count_alternatives", "default_capacities",
    "imbalance", "imbalance_delta", "inapplicability_reasons",
    "initial_solution", "is_feasible", "normalize_weight_rows", "outcome",
    "propose", "propose_shift", "propose_shift_swap2", "propose_swap2",
    "propose_swap3", "run_vns", "update_equal_quality", "update_pareto",
    "utility", "utility_delta",
]
