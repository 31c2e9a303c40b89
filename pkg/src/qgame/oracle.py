"""Brute-force certification of equilibria, independent of the closed forms.

verify_nash scans a strategy grid for profitable unilateral
deviations, discrete_equilibria exhaustively solves the discretized
game, and phase_dynamics iterates exact phase best responses to
exhibit both the convergent and the stone-scissor-paper regimes.
"""

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, GridTooLarge
from .operators import TWO_PI, CorrelationParams, StrategyVector
from .payoff import GameFunctions, PayoffMatrix, game_functions, pc_diagonal

DEFAULT_TOL = 1e-6

MAX_PAIR_GRID = 10_000

Pair = Tuple[StrategyVector, StrategyVector]


@dataclass(frozen=True)
class StrategyGrid:
    """Uniform strategy discretization: amplitudes on [0, 1], phases on [0, 2pi)."""

    n_amp: int
    n_phase: int

    def __post_init__(self) -> None:
        if self.n_amp < 2:
            raise ValueError(f"n_amp must be at least 2, got {self.n_amp}")
        if self.n_phase < 1:
            raise ValueError(f"n_phase must be at least 1, got {self.n_phase}")

    def total(self) -> int:
        return self.n_amp * self.n_phase

    def amplitudes(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_amp)

    def phases(self) -> np.ndarray:
        return np.arange(self.n_phase) * (TWO_PI / self.n_phase)

    def spacing(self) -> float:
        """The larger of the amplitude and phase step sizes."""
        return max(1.0 / (self.n_amp - 1), TWO_PI / self.n_phase)


@dataclass(frozen=True)
class DeviationReport:
    """Outcome of a grid deviation scan for one candidate pair.

    Gains are best-deviation payoff minus candidate payoff, never
    negative because the candidate itself is in the scanned set.
    allowance is the curvature term max|A_ij| * h^2 added to the
    tolerance: a grid of spacing h cannot distinguish a true optimum
    from a point that much below it.
    """

    max_gain_a: float
    max_gain_b: float
    best_deviation_a: StrategyVector
    best_deviation_b: StrategyVector
    allowance: float
    is_nash: bool


def _mover_payoffs(P, gf, mover_a0, mover_phase, other_a0, other_phase, averaged):
    """Payoff to the mover; arguments broadcast like numpy arrays.

    The symmetric-game swap puts the mover's strategy first in both
    the bilinear term and the phase arguments, so the same expression
    serves either player.
    """
    x = mover_a0 * mover_a0
    y = other_a0 * other_a0
    pc = (
        x * y * P[0]
        + x * (1.0 - y) * P[1]
        + (1.0 - x) * y * P[2]
        + (1.0 - x) * (1.0 - y) * P[3]
    )
    if averaged:
        return pc
    amp = mover_a0 * np.sqrt(1.0 - x) * other_a0 * np.sqrt(1.0 - y)
    inter = amp * (
        gf.g_plus * np.sin(mover_phase + other_phase)
        + gf.g_minus * np.sin(mover_phase - other_phase)
    )
    return pc - inter


def verify_nash(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    alpha: StrategyVector,
    beta: StrategyVector,
    grid: StrategyGrid,
    tol: float = DEFAULT_TOL,
    phase_averaged: bool = False,
) -> DeviationReport:
    """Scan all grid strategies as unilateral deviations from (alpha, beta).

    The candidate passes when neither player's best grid deviation
    gains more than tol plus the documented curvature allowance.  With
    phase_averaged=True the interference term is dropped on both
    sides, certifying equilibria of the phase-averaged game (the
    relevant notion for phase-scrambled records).
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if grid.total() < 4:
        raise DomainError(f"deviation grid too coarse: total {grid.total()} < 4")
    gf = game_functions(A, gamma)
    P = pc_diagonal(A, gamma)
    allowance = A.max_abs() * grid.spacing() ** 2

    amp_mesh, phase_mesh = np.meshgrid(
        grid.amplitudes(), grid.phases(), indexing="ij"
    )
    dev_a0 = amp_mesh.ravel()
    dev_phase = phase_mesh.ravel()

    def scan(mover: StrategyVector, other: StrategyVector):
        base = float(
            _mover_payoffs(
                P, gf, mover.a0, mover.phase, other.a0, other.phase, phase_averaged
            )
        )
        scanned = _mover_payoffs(
            P, gf, dev_a0, dev_phase, other.a0, other.phase, phase_averaged
        )
        best = int(np.argmax(scanned))
        gain = float(scanned[best]) - base
        if gain <= 0.0:
            return 0.0, mover
        return gain, StrategyVector.from_a0(float(dev_a0[best]), float(dev_phase[best]))

    gain_a, best_a = scan(alpha, beta)
    gain_b, best_b = scan(beta, alpha)
    threshold = tol + allowance
    return DeviationReport(
        max_gain_a=gain_a,
        max_gain_b=gain_b,
        best_deviation_a=best_a,
        best_deviation_b=best_b,
        allowance=allowance,
        is_nash=gain_a <= threshold and gain_b <= threshold,
    )


def discrete_equilibria(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    grid: StrategyGrid,
    tol: float,
    kernel: str = "auto",
) -> List[Pair]:
    """All pure Nash pairs of the discretized game, within tol.

    kernel selects the payoff evaluation: "full" keeps the
    interference term, "averaged" drops it (amplitude-only grid,
    phases reported as 0), and "auto" picks "averaged" exactly in the
    phase-scrambled regime |G-| > |G+|, where the full game has no
    stable phase pair and the averaged game is the one with
    well-defined equilibria.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if kernel not in ("auto", "full", "averaged"):
        raise ValueError(f"unknown kernel {kernel!r}")
    if grid.total() > MAX_PAIR_GRID:
        raise GridTooLarge(
            f"{grid.n_amp} x {grid.n_phase} = {grid.total()} strategies per player "
            f"exceeds the pair-enumeration bound {MAX_PAIR_GRID}"
        )
    gf = game_functions(A, gamma)
    P = pc_diagonal(A, gamma)
    averaged = kernel == "averaged" or (
        kernel == "auto" and abs(gf.g_minus) > abs(gf.g_plus)
    )

    if averaged:
        a0s = grid.amplitudes()
        phases = np.zeros_like(a0s)
    else:
        amp_mesh, phase_mesh = np.meshgrid(
            grid.amplitudes(), grid.phases(), indexing="ij"
        )
        a0s = amp_mesh.ravel()
        phases = phase_mesh.ravel()

    M = _mover_payoffs(
        P,
        gf,
        a0s[:, None],
        phases[:, None],
        a0s[None, :],
        phases[None, :],
        averaged,
    )
    col_best = M.max(axis=0)
    stable = (M >= col_best[None, :] - tol) & (M.T >= col_best[:, None] - tol)

    pairs: List[Pair] = []
    for i, j in zip(*np.nonzero(stable)):
        pairs.append(
            (
                StrategyVector.from_a0(float(a0s[i]), float(phases[i])),
                StrategyVector.from_a0(float(a0s[j]), float(phases[j])),
            )
        )
    return pairs


def _pair_key(pair: Pair, grid: StrategyGrid) -> Tuple[int, int, int, int]:
    ia = round(pair[0].a0 * (grid.n_amp - 1))
    ib = round(pair[1].a0 * (grid.n_amp - 1))
    scale = grid.n_phase / TWO_PI
    ipa = round(pair[0].phase * scale) % grid.n_phase
    ipb = round(pair[1].phase * scale) % grid.n_phase
    return int(ia), int(ipa), int(ib), int(ipb)


_NEIGHBOR_OFFSETS = [d for d in product((-1, 0, 1), repeat=4) if any(d)]


def cluster_pairs(pairs: Sequence[Pair], grid: StrategyGrid) -> List[List[Pair]]:
    """Group grid pairs into connected components under grid adjacency.

    Two pairs are adjacent when every coordinate index (both
    amplitudes, both phases) differs by at most one step, phases
    wrapping around.  Plateaus of near-equal payoff then collapse to
    single clusters for comparison against analytic records.
    """
    keys = [_pair_key(p, grid) for p in pairs]
    index: Dict[Tuple[int, int, int, int], int] = {}
    parent = list(range(len(pairs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for i, key in enumerate(keys):
        if key in index:
            union(i, index[key])
        else:
            index[key] = i
    n_phase = grid.n_phase
    for i, (ia, ipa, ib, ipb) in enumerate(keys):
        for da, dpa, db, dpb in _NEIGHBOR_OFFSETS:
            neighbor = (ia + da, (ipa + dpa) % n_phase, ib + db, (ipb + dpb) % n_phase)
            j = index.get(neighbor)
            if j is not None:
                union(i, j)

    groups: Dict[int, List[Pair]] = {}
    for i, pair in enumerate(pairs):
        groups.setdefault(find(i), []).append(pair)
    return list(groups.values())


def phase_dynamics(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    amp_a: float,
    amp_b: float,
    steps: int,
    init: Tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """Alternating exact phase best responses at fixed amplitudes.

    Player A moves on odd steps, player B on even steps; each move
    maximizes the mover's interference payoff against the opponent's
    current phase.  When every phase is optimal (the interference term
    is flat) the mover keeps its current phase.  Returns the (steps+1,
    2) trajectory of (xi, chi) including the initial point.

    Amplitudes must lie strictly inside (0, 1): at the endpoints the
    interference term is identically zero and the dynamics say
    nothing.
    """
    if not (0.0 < amp_a < 1.0 and 0.0 < amp_b < 1.0):
        raise DomainError("amplitudes must lie strictly inside (0, 1)")
    if steps < 1:
        raise DomainError(f"steps must be at least 1, got {steps}")
    gf = game_functions(A, gamma)
    xi = float(init[0]) % TWO_PI
    chi = float(init[1]) % TWO_PI
    trajectory = np.empty((steps + 1, 2))
    trajectory[0] = (xi, chi)
    for step in range(1, steps + 1):
        if step % 2 == 1:
            xi = _phase_best_response(gf, xi, chi)
        else:
            chi = _phase_best_response(gf, chi, xi)
        trajectory[step] = (xi, chi)
    return trajectory


def _phase_best_response(gf: GameFunctions, current: float, opponent: float) -> float:
    """The mover's optimal phase against a fixed opponent phase."""
    p = (gf.g_plus + gf.g_minus) * math.cos(opponent)
    q = (gf.g_plus - gf.g_minus) * math.sin(opponent)
    if p == 0.0 and q == 0.0:
        return current
    return math.atan2(-p, -q) % TWO_PI
