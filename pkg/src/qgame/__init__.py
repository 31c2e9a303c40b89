"""Correlated two-player quantum games on a four-dimensional state space.

Strategies are single-qubit superpositions with a relative phase, a
coordinator entangles them through the correlation unitary J(gamma),
and payoffs are expectations of the correlated payoff operator.  The
package provides the operator algebra, closed-form payoffs and their
pseudo-classical/interference split, Nash equilibrium classification
over the correlation plane, brute-force oracles, entanglement
diagnostics, and a CLI for sweeps and reports.
"""

from .analysis import (
    DensityMatrix2,
    entanglement_entropy,
    entropy_of_lambda,
    moderated_operator,
    reduced_density,
)
from .equilibria import (
    DEFAULT_BOUNDARY_TOL,
    EquilibriumKind,
    EquilibriumRecord,
    EquilibriumReport,
    GridSpec,
    OptimalEdge,
    SurfaceRow,
    SurfaceTable,
    classify_edges,
    equilibria_at,
    mixed_plateau_bounds,
    optimal_edge_gamma,
    payoff_surface,
    phase_equilibrium,
    surface_rows,
    symmetric_interior,
)
from .errors import DomainError, GridTooLarge, NotSelfAdjoint
from .operators import (
    CorrelationParams,
    JointState,
    StrategyVector,
    build_conversion,
    build_correlation,
    build_swap,
    build_t,
    expectation,
    joint_state,
)
from .oracle import (
    DeviationReport,
    StrategyGrid,
    cluster_pairs,
    discrete_equilibria,
    phase_dynamics,
    verify_nash,
)
from .payoff import (
    GameFunctions,
    PayoffMatrix,
    correlated_payoff_operator,
    decompose,
    game_functions,
    payoff,
    payoff_components,
    pc_diagonal,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationParams",
    "DEFAULT_BOUNDARY_TOL",
    "DensityMatrix2",
    "DeviationReport",
    "DomainError",
    "EquilibriumKind",
    "EquilibriumRecord",
    "EquilibriumReport",
    "GameFunctions",
    "GridSpec",
    "GridTooLarge",
    "JointState",
    "NotSelfAdjoint",
    "OptimalEdge",
    "PayoffMatrix",
    "StrategyGrid",
    "StrategyVector",
    "SurfaceRow",
    "SurfaceTable",
    "build_conversion",
    "build_correlation",
    "build_swap",
    "build_t",
    "classify_edges",
    "cluster_pairs",
    "correlated_payoff_operator",
    "decompose",
    "discrete_equilibria",
    "entanglement_entropy",
    "entropy_of_lambda",
    "equilibria_at",
    "expectation",
    "game_functions",
    "joint_state",
    "mixed_plateau_bounds",
    "moderated_operator",
    "optimal_edge_gamma",
    "payoff",
    "payoff_components",
    "payoff_surface",
    "pc_diagonal",
    "phase_dynamics",
    "phase_equilibrium",
    "reduced_density",
    "surface_rows",
    "symmetric_interior",
    "verify_nash",
]
