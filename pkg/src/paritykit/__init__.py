"""Parity game toolkit: solvers, kernelizers, and dominion searches."""

from .errors import (
    BudgetExceeded,
    InvalidFamilyParams,
    MissingStrategies,
    NotBipartite,
    NotSmallerSide,
    ParityKitError,
    ParseError,
    PreconditionViolated,
    TraceMismatch,
)
from .game import (
    GameStats,
    ParityGame,
    Player,
    SubgameMap,
    ValidationReport,
    is_bipartite,
    p1_value,
    p_value,
    stats,
    subgame,
    swap_roles,
    validate,
)
from .generate import FAMILIES, generate
from .reach import AttractorResult, attractor, attractor_masked, is_closed
from .oracle import (
    SolveResult,
    Strategy,
    solve_brute,
    solve_solitary,
    verify_partition,
    verify_partition_report,
    verify_strategy,
)
from .zielonka import win
from .kernel import (
    Contracted,
    DominionRemoved,
    EdgesDeleted,
    NoPredecessorRemoved,
    PriorityRemapped,
    ReductionTrace,
    SyntheticAdded,
    kernelize_auto,
    kernelize_bipartite,
    kernelize_general,
    lift_solution,
    trace_lines,
)
from .dominion import (
    DegreeBudget,
    DominionResult,
    find_dominion_by_degree,
    find_dominion_by_odd_nodes,
)
from .fpt import (
    ALGORITHMS,
    FptConfig,
    choose_j,
    new_win1,
    new_win2,
    old_win1,
    old_win2,
    solve,
)
from . import pgsolver

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AttractorResult",
    "BudgetExceeded",
    "Contracted",
    "DegreeBudget",
    "DominionRemoved",
    "DominionResult",
    "EdgesDeleted",
    "FAMILIES",
    "FptConfig",
    "GameStats",
    "InvalidFamilyParams",
    "MissingStrategies",
    "NoPredecessorRemoved",
    "NotBipartite",
    "NotSmallerSide",
    "ParityGame",
    "ParityKitError",
    "ParseError",
    "Player",
    "PreconditionViolated",
    "PriorityRemapped",
    "ReductionTrace",
    "SolveResult",
    "Strategy",
    "SubgameMap",
    "SyntheticAdded",
    "TraceMismatch",
    "ValidationReport",
    "attractor",
    "attractor_masked",
    "choose_j",
    "find_dominion_by_degree",
    "find_dominion_by_odd_nodes",
    "generate",
    "is_bipartite",
    "is_closed",
    "kernelize_auto",
    "kernelize_bipartite",
    "kernelize_general",
    "lift_solution",
    "new_win1",
    "new_win2",
    "old_win1",
    "old_win2",
    "p1_value",
    "p_value",
    "pgsolver",
    "solve",
    "solve_brute",
    "solve_solitary",
    "stats",
    "subgame",
    "swap_roles",
    "trace_lines",
    "validate",
    "verify_partition",
    "verify_partition_report",
    "verify_strategy",
    "win",
]
