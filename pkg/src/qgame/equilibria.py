"""Closed-form Nash equilibrium classification on the correlation plane.

The signs of H+ and H- select which of the four edge equilibria exist,
the ratio -G-/G+ fixes the equilibrium phase, and the symmetric
interior solution a0* = sqrt[(H- - Delta)/(H+ + H- - 2 Delta)] covers
the coherent (Delta > 0) and phase-scrambled (Delta = 0) regimes.
Also here: the optimal-correlation formulas (lambda, eta) and payoff
surface generation over a gamma grid for plotting and sweeps.
"""

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .operators import TWO_PI, CorrelationParams, StrategyVector
from .payoff import (
    GameFunctions,
    PayoffMatrix,
    game_functions,
    payoff,
)

DEFAULT_BOUNDARY_TOL = 1e-9

SELECTIONS = ("max", "all", "mixed")

CSV_COLUMNS = (
    "gamma1",
    "gamma2",
    "kind",
    "a0_star",
    "payoff_a",
    "payoff_b",
    "h_plus",
    "h_minus",
    "delta",
)

_PURE_ZERO = StrategyVector(1.0, 0.0)
_PURE_ONE = StrategyVector(0.0, 1.0)

# Interior x outside [0,1] by more than this is rejected rather than clipped.
_X_SLACK = 1e-12


class EquilibriumKind(IntEnum):
    """Equilibrium families, ordered for deterministic tie-breaking.

    The four edge kinds name the joint basis strategy (player A's bit
    first).  The two symmetric kinds are the interior solution with a
    definite equilibrium phase (coherent) and with uniformly random
    phases whose interference contribution averages to zero
    (phase-scrambled).
    """

    EDGE_00 = 0
    EDGE_11 = 1
    EDGE_01 = 2
    EDGE_10 = 3
    SYMMETRIC_COHERENT = 4
    SYMMETRIC_PHASE_SCRAMBLED = 5


@dataclass(frozen=True)
class EquilibriumRecord:
    """One equilibrium: strategies, payoffs and classification flags.

    phase_star is the common equilibrium phase for SYMMETRIC_COHERENT
    records and None otherwise.  boundary marks records admitted by an
    inequality that holds only within the boundary tolerance.
    """

    kind: EquilibriumKind
    alpha: StrategyVector
    beta: StrategyVector
    payoff_a: float
    payoff_b: float
    phase_star: Optional[float] = None
    boundary: bool = False


@dataclass(frozen=True)
class EquilibriumReport:
    """All equilibria at one gamma, with the game functions snapshot."""

    gamma: CorrelationParams
    functions: GameFunctions
    records: Tuple[EquilibriumRecord, ...]


def classify_edges(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> List[EquilibriumRecord]:
    """Edge equilibria present at gamma, by the signs of H+ and H-.

    EDGE_00 requires H+ >= 0, EDGE_11 requires H- >= 0, and the two
    asymmetric edges require both H+ <= 0 and H- <= 0.  Inequalities
    are evaluated weakly within boundary_tol, and records admitted
    only through the tolerance band carry boundary=True.
    """
    if boundary_tol < 0.0:
        raise ValueError(f"boundary_tol must be non-negative, got {boundary_tol}")
    gf = game_functions(A, gamma)
    near_plus = abs(gf.h_plus) <= boundary_tol
    near_minus = abs(gf.h_minus) <= boundary_tol

    def make(kind, alpha, beta, flagged):
        return EquilibriumRecord(
            kind=kind,
            alpha=alpha,
            beta=beta,
            payoff_a=payoff(A, gamma, alpha, beta, "A"),
            payoff_b=payoff(A, gamma, alpha, beta, "B"),
            phase_star=None,
            boundary=flagged,
        )

    records = []
    if gf.h_plus > -boundary_tol:
        records.append(make(EquilibriumKind.EDGE_00, _PURE_ZERO, _PURE_ZERO, near_plus))
    if gf.h_minus > -boundary_tol:
        records.append(make(EquilibriumKind.EDGE_11, _PURE_ONE, _PURE_ONE, near_minus))
    if gf.h_plus < boundary_tol and gf.h_minus < boundary_tol:
        flagged = near_plus or near_minus
        records.append(make(EquilibriumKind.EDGE_01, _PURE_ZERO, _PURE_ONE, flagged))
        records.append(make(EquilibriumKind.EDGE_10, _PURE_ONE, _PURE_ZERO, flagged))
    return records


def phase_equilibrium(A: PayoffMatrix, gamma: CorrelationParams) -> Optional[float]:
    """The stable common phase xi* in [0, pi), or None.

    Solves cos 2xi* = -G-/G+ on the branch where the interference
    payoff at the symmetric point is +a0 a1 b0 b1 Delta (the
    maximizing choice of sin 2xi*).  Returns None in the
    phase-scrambled regime |G-| > |G+| and when the interference term
    vanishes identically (G+ = G- = 0).
    """
    gf = game_functions(A, gamma)
    if gf.g_plus == 0.0 and gf.g_minus == 0.0:
        return None
    if abs(gf.g_minus) > abs(gf.g_plus):
        return None
    doubled = math.atan2(-gf.delta / gf.g_plus, -gf.g_minus / gf.g_plus) % TWO_PI
    return 0.5 * doubled


def symmetric_interior(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> Optional[EquilibriumRecord]:
    """The symmetric interior equilibrium at gamma, or None.

    Both players use a0* = sqrt[(H- - Delta)/(H+ + H- - 2 Delta)],
    valid when (H+ - Delta)(H- - Delta) >= 0, the denominator is
    nonzero and the squared amplitude lands in [0, 1].  With Delta > 0
    the record is SYMMETRIC_COHERENT and carries the phase xi*; with
    Delta = 0 it is SYMMETRIC_PHASE_SCRAMBLED and the payoff is the
    pseudo-classical value (zero-phase strategies, so the interference
    term contributes nothing, matching its zero average under
    scrambled phases).
    """
    gf = game_functions(A, gamma)
    numer = gf.h_minus - gf.delta
    denom = gf.h_plus + gf.h_minus - 2.0 * gf.delta
    if denom == 0.0:
        return None
    if (gf.h_plus - gf.delta) * numer < 0.0:
        return None
    x = numer / denom
    if x < -_X_SLACK or x > 1.0 + _X_SLACK:
        return None
    x = min(max(x, 0.0), 1.0)

    if gf.delta > 0.0:
        kind = EquilibriumKind.SYMMETRIC_COHERENT
        phase_star = phase_equilibrium(A, gamma)
        phase = phase_star if phase_star is not None else 0.0
    else:
        kind = EquilibriumKind.SYMMETRIC_PHASE_SCRAMBLED
        phase_star = None
        phase = 0.0

    strategy = StrategyVector(math.sqrt(x), math.sqrt(1.0 - x), phase)
    boundary = (
        min(abs(gf.h_plus - gf.delta), abs(gf.h_minus - gf.delta)) <= boundary_tol
    )
    return EquilibriumRecord(
        kind=kind,
        alpha=strategy,
        beta=strategy,
        payoff_a=payoff(A, gamma, strategy, strategy, "A"),
        payoff_b=payoff(A, gamma, strategy, strategy, "B"),
        phase_star=phase_star,
        boundary=boundary,
    )


def equilibria_at(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> EquilibriumReport:
    """Every equilibrium the classification admits at gamma."""
    records = classify_edges(A, gamma, boundary_tol)
    interior = symmetric_interior(A, gamma, boundary_tol)
    if interior is not None:
        records.append(interior)
    return EquilibriumReport(
        gamma=gamma,
        functions=game_functions(A, gamma),
        records=tuple(records),
    )


@dataclass(frozen=True)
class OptimalEdge:
    """Where the asymmetric-edge payoff peaks, and what it pays.

    The favored player collects a01 + a10 - a11 at gamma = (2 arcsin
    sqrt(lam), 0); the partner point (pi - 2 arcsin sqrt(lam), pi)
    attains the same value by reflection.
    """

    lam: float
    gamma: CorrelationParams
    payoff: float
    partner_gamma: CorrelationParams


def optimal_edge_gamma(A: PayoffMatrix) -> OptimalEdge:
    """Correlation angles maximizing the asymmetric-edge payoff.

    lam = (a11 - a01)/(a10 - a01) must land in [0, 1] (always true
    for a Prisoner's Dilemma ordering); otherwise the formula's
    precondition fails and DomainError is raised.
    """
    denom = A.a10 - A.a01
    if denom == 0.0:
        raise DomainError("a10 = a01 leaves the optimal angle undefined")
    lam = (A.a11 - A.a01) / denom
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda = {lam} outside [0, 1]; no optimal edge angle")
    gamma1 = 2.0 * math.asin(math.sqrt(lam))
    return OptimalEdge(
        lam=lam,
        gamma=CorrelationParams(gamma1, 0.0),
        payoff=A.a01 + A.a10 - A.a11,
        partner_gamma=CorrelationParams(math.pi - gamma1, math.pi),
    )


def mixed_plateau_bounds(A: PayoffMatrix) -> Tuple[float, float]:
    """(eta, gamma1_lo) bounding the gamma2 = 0 plateau at payoff a00.

    The symmetric equilibrium payoff attains a00 exactly for gamma1 in
    [2 arcsin sqrt(eta), pi] along gamma2 = 0, with eta = (a10 -
    a00)/(a10 - a01).
    """
    denom = A.a10 - A.a01
    if denom == 0.0:
        raise DomainError("a10 = a01 leaves the plateau bound undefined")
    eta = (A.a10 - A.a00) / denom
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta = {eta} outside [0, 1]; no plateau bound")
    return eta, 2.0 * math.asin(math.sqrt(eta))


@dataclass(frozen=True)
class GridSpec:
    """Rectangular gamma grid, the same interval on both axes.

    endpoint=False spans [lo, hi) in equal steps (a full period when
    hi = lo + 2 pi); endpoint=True includes hi, for closed intervals
    like [0, pi].
    """

    gamma1_steps: int
    gamma2_steps: int
    lo: float = 0.0
    hi: float = TWO_PI
    endpoint: bool = False

    def __post_init__(self) -> None:
        if self.gamma1_steps < 2 or self.gamma2_steps < 2:
            raise ValueError("grid needs at least 2 steps per axis")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("grid range must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"empty grid range [{self.lo}, {self.hi}]")

    def gamma1_values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.gamma1_steps, endpoint=self.endpoint)

    def gamma2_values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.gamma2_steps, endpoint=self.endpoint)


@dataclass(frozen=True)
class SurfaceRow:
    gamma1: float
    gamma2: float
    kind: EquilibriumKind
    a0_star: float
    payoff_a: float
    payoff_b: float
    h_plus: float
    h_minus: float
    delta: float


def _fmt(value: float) -> str:
    if value == 0.0:
        value = 0.0
    return format(value, ".9g")


@dataclass(frozen=True)
class SurfaceTable:
    """Equilibrium rows over a gamma grid, gamma1-major order."""

    grid: GridSpec
    selection: str
    rows: Tuple[SurfaceRow, ...]

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            lines.append(
                ",".join(
                    (
                        _fmt(r.gamma1),
                        _fmt(r.gamma2),
                        r.kind.name,
                        _fmt(r.a0_star),
                        _fmt(r.payoff_a),
                        _fmt(r.payoff_b),
                        _fmt(r.h_plus),
                        _fmt(r.h_minus),
                        _fmt(r.delta),
                    )
                )
            )
        return "\n".join(lines) + "\n"


def surface_rows(
    A: PayoffMatrix,
    gamma1_values: Sequence[float],
    gamma2_values: Sequence[float],
    selection: str = "max",
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> List[SurfaceRow]:
    """Surface rows for an explicit pair of axis arrays.

    Vectorized equivalent of running equilibria_at over the product
    grid; the closed pseudo-classical forms used here are pinned to
    the matrix decomposition by tests.  "max" keeps the single record
    with the best payoff for player A (ties broken toward the lowest
    EquilibriumKind), "mixed" does the same over symmetric records
    only (edges 01/10 excluded), "all" emits every record.
    """
    if selection not in SELECTIONS:
        raise ValueError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    g1 = np.asarray(gamma1_values, dtype=float)
    g2 = np.asarray(gamma2_values, dtype=float)
    G1, G2 = np.meshgrid(g1, g2, indexing="ij")
    G1 = G1.ravel()
    G2 = G2.ravel()

    a00, a01, a10, a11 = A.entries()
    c1sq = np.cos(0.5 * G1) ** 2
    c2sq = np.cos(0.5 * G2) ** 2
    s2sq = 1.0 - c2sq
    p00 = c2sq * a00 + s2sq * a11
    p11 = c2sq * a11 + s2sq * a00
    p01 = c1sq * a01 + (1.0 - c1sq) * a10
    p10 = c1sq * a10 + (1.0 - c1sq) * a01

    tau = a00 - a01 - a10 + a11
    g_plus = (a00 - a11) * np.sin(G2)
    g_minus = (a01 - a10) * np.sin(G1)
    h_plus = tau + (a00 - a11) * np.cos(G2) + (a01 - a10) * np.cos(G1)
    h_minus = 2.0 * tau - h_plus
    delta = np.sqrt(np.clip(g_plus * g_plus - g_minus * g_minus, 0.0, None))

    numer = h_minus - delta
    denom = h_plus + h_minus - 2.0 * delta
    x = numer / np.where(denom == 0.0, 1.0, denom)
    valid = (
        (denom != 0.0)
        & ((h_plus - delta) * numer >= 0.0)
        & (x >= -_X_SLACK)
        & (x <= 1.0 + _X_SLACK)
    )
    x = np.clip(x, 0.0, 1.0)
    pay_interior = (
        x * x * p00
        + x * (1.0 - x) * (p01 + p10 + delta)
        + (1.0 - x) * (1.0 - x) * p11
    )
    a0_interior = np.sqrt(x)

    exist_00 = h_plus > -boundary_tol
    exist_11 = h_minus > -boundary_tol
    exist_asym = (h_plus < boundary_tol) & (h_minus < boundary_tol)

    # Candidate slots in tie-break order; the interior slot resolves to
    # a coherent or scrambled kind pointwise.
    if selection == "mixed":
        slots = (
            (EquilibriumKind.EDGE_00, exist_00, p00, p00, None),
            (EquilibriumKind.EDGE_11, exist_11, p11, p11, None),
            (None, valid, pay_interior, pay_interior, a0_interior),
        )
    else:
        slots = (
            (EquilibriumKind.EDGE_00, exist_00, p00, p00, None),
            (EquilibriumKind.EDGE_11, exist_11, p11, p11, None),
            (EquilibriumKind.EDGE_01, exist_asym, p01, p10, None),
            (EquilibriumKind.EDGE_10, exist_asym, p10, p01, None),
            (None, valid, pay_interior, pay_interior, a0_interior),
        )

    kind_interior = np.where(
        delta > 0.0,
        int(EquilibriumKind.SYMMETRIC_COHERENT),
        int(EquilibriumKind.SYMMETRIC_PHASE_SCRAMBLED),
    )
    edge_a0 = {
        EquilibriumKind.EDGE_00: 1.0,
        EquilibriumKind.EDGE_11: 0.0,
        EquilibriumKind.EDGE_01: 1.0,
        EquilibriumKind.EDGE_10: 0.0,
    }

    def build_row(k: int, slot) -> SurfaceRow:
        kind, _, pa, pb, a0 = slot
        if kind is None:
            kind = EquilibriumKind(int(kind_interior[k]))
            a0_star = float(a0[k])
        else:
            a0_star = edge_a0[kind]
        return SurfaceRow(
            gamma1=float(G1[k]),
            gamma2=float(G2[k]),
            kind=kind,
            a0_star=a0_star,
            payoff_a=float(pa[k]),
            payoff_b=float(pb[k]),
            h_plus=float(h_plus[k]),
            h_minus=float(h_minus[k]),
            delta=float(delta[k]),
        )

    rows: List[SurfaceRow] = []
    if selection == "all":
        for k in range(G1.size):
            for slot in slots:
                if slot[1][k]:
                    rows.append(build_row(k, slot))
        return rows

    stacked = np.stack(
        [np.where(mask, pa, -np.inf) for (_, mask, pa, _, _) in slots]
    )
    best = np.argmax(stacked, axis=0)
    for k in range(G1.size):
        rows.append(build_row(k, slots[int(best[k])]))
    return rows


def payoff_surface(
    A: PayoffMatrix,
    grid: GridSpec,
    selection: str = "max",
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> SurfaceTable:
    """Equilibrium payoffs over the whole grid as a SurfaceTable.

    Every grid point yields at least one row: the edge conditions and
    the interior validity condition jointly cover all sign patterns of
    (H+, H-), including under the "mixed" restriction.
    """
    rows = surface_rows(
        A, grid.gamma1_values(), grid.gamma2_values(), selection, boundary_tol
    )
    return SurfaceTable(grid=grid, selection=selection, rows=tuple(rows))
