"""Swap minimization (qubit routing) on path and star architectures.

Solvers: an exhaustive BFS oracle (`oracle.solve_exact`), a fixed-parameter
signature solver for paths (`fpt.solve_fpt`), and a polynomial algorithm for
disjoint gate pairs on paths (`disjoint.solve_disjoint`). `reductions` builds
hardness-reduction instances; `service`/`cli` expose everything over HTTP and
the command line.
"""

from .core import (
    BudgetExceededError,
    ChainSchedule,
    CompressedChain,
    Gate,
    Graph,
    Instance,
    InvalidEdgeError,
    Poset,
    RoutingError,
    Schedule,
    SwapSequence,
    TokenPlacement,
    UnknownTokenError,
    apply_swap,
    is_realized,
    linear_extensions,
    trivial_length_bound,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ChainSchedule",
    "CompressedChain",
    "Gate",
    "Graph",
    "Instance",
    "InvalidEdgeError",
    "Poset",
    "RoutingError",
    "Schedule",
    "SwapSequence",
    "TokenPlacement",
    "UnknownTokenError",
    "apply_swap",
    "is_realized",
    "linear_extensions",
    "trivial_length_bound",
    "verify",
    "__version__",
]
