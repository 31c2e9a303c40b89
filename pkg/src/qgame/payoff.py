"""Payoff matrices, the correlated payoff operator and its exact split.

The correlated payoff operator J^dag A J separates into a diagonal
"pseudo-classical" part (a gamma-weighted mixture of the classical
games A, SAS and CAC) and a zero-diagonal self-adjoint "interference"
part built from commutators.  Closed-form payoffs and the scalar game
functions (tau, G, G', H, Delta) that drive every equilibrium formula
downstream live here too.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .operators import (
    CorrelationParams,
    Operator4,
    StrategyVector,
    build_conversion,
    build_correlation,
    build_swap,
    build_t,
)


@dataclass(frozen=True)
class PayoffMatrix:
    """The 2x2 real classical payoff table A_ij for the row player.

    The column player's table in a symmetric game is the transpose
    A_ji; see :meth:`swapped`.  No ordering between the entries is
    assumed; Prisoner's Dilemma structure is a property of specific
    instances, checkable with :meth:`is_prisoners_dilemma`.
    """

    a00: float
    a01: float
    a10: float
    a11: float

    def __post_init__(self) -> None:
        for v in (self.a00, self.a01, self.a10, self.a11):
            if not np.isfinite(v):
                raise ValueError("payoff entries must be finite")

    def entries(self) -> Tuple[float, float, float, float]:
        return (self.a00, self.a01, self.a10, self.a11)

    def as_diagonal(self) -> Operator4:
        """The payoff operator at zero correlation: diag(a00, a01, a10, a11)."""
        return np.diag([self.a00, self.a01, self.a10, self.a11]).astype(float)

    def swapped(self) -> "PayoffMatrix":
        """The other player's table A_ji (eigenvalues swapped)."""
        return PayoffMatrix(self.a00, self.a10, self.a01, self.a11)

    def is_prisoners_dilemma(self) -> bool:
        return self.a01 < self.a11 < self.a00 < self.a10

    def max_abs(self) -> float:
        return max(abs(v) for v in self.entries())


@dataclass(frozen=True)
class GameFunctions:
    """Scalar functions of (A, gamma) controlling phases and equilibria.

    tau      = a00 - a01 - a10 + a11
    g_plus   = (a00 - a11) sin(gamma2),  g_minus  = (a01 - a10) sin(gamma1)
    gp_plus  = (a00 - a11) cos(gamma2),  gp_minus = (a01 - a10) cos(gamma1)
    h_plus   = tau + gp_plus + gp_minus, h_minus  = tau - gp_plus - gp_minus
    delta    = sqrt(g_plus^2 - g_minus^2), clamped to 0 in the
               phase-scrambled regime |g_minus| > |g_plus|
    """

    tau: float
    g_plus: float
    g_minus: float
    gp_plus: float
    gp_minus: float
    h_plus: float
    h_minus: float
    delta: float


def game_functions(A: PayoffMatrix, gamma: CorrelationParams) -> GameFunctions:
    tau = A.a00 - A.a01 - A.a10 + A.a11
    g_plus = (A.a00 - A.a11) * np.sin(gamma.gamma2)
    g_minus = (A.a01 - A.a10) * np.sin(gamma.gamma1)
    gp_plus = (A.a00 - A.a11) * np.cos(gamma.gamma2)
    gp_minus = (A.a01 - A.a10) * np.cos(gamma.gamma1)
    disc = g_plus * g_plus - g_minus * g_minus
    delta = float(np.sqrt(disc)) if disc >= 0.0 else 0.0
    return GameFunctions(
        tau=float(tau),
        g_plus=float(g_plus),
        g_minus=float(g_minus),
        gp_plus=float(gp_plus),
        gp_minus=float(gp_minus),
        h_plus=float(tau + gp_plus + gp_minus),
        h_minus=float(tau - gp_plus - gp_minus),
        delta=delta,
    )


def correlated_payoff_operator(
    A: PayoffMatrix, gamma: CorrelationParams, player: str = "A"
) -> Operator4:
    """J^dag(gamma) X J(gamma) with X the player's diagonal payoff operator.

    Player "B" uses the swapped table S A S, so both payoffs come from
    the same correlation unitary.
    """
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    base = A.as_diagonal() if player == "A" else A.swapped().as_diagonal()
    J = build_correlation(gamma)
    return J.conj().T @ base @ J


def decompose(
    A: PayoffMatrix, gamma: CorrelationParams
) -> Tuple[Operator4, Operator4]:
    """Split the correlated payoff operator into (pseudo_classical, interference).

    pseudo_classical = cos^2(g1/2) A + (cos^2(g2/2) - cos^2(g1/2)) SAS
                       + sin^2(g2/2) CAC            (diagonal)
    interference     = (i/2) sin(g1) (AS - SA) + (i/2) sin(g2) (AT - TA)
                                                     (self-adjoint, zero diagonal)

    Their sum equals correlated_payoff_operator(A, gamma, "A") exactly.
    """
    diag = A.as_diagonal()
    S = build_swap()
    C = build_conversion()
    T = build_t()
    c1_sq = np.cos(0.5 * gamma.gamma1) ** 2
    c2_sq = np.cos(0.5 * gamma.gamma2) ** 2
    s2_sq = np.sin(0.5 * gamma.gamma2) ** 2
    pc = c1_sq * diag + (c2_sq - c1_sq) * (S @ diag @ S) + s2_sq * (C @ diag @ C)
    interference = 0.5j * np.sin(gamma.gamma1) * (diag @ S - S @ diag) + 0.5j * np.sin(
        gamma.gamma2
    ) * (diag @ T - T @ diag)
    return pc, interference


def pc_diagonal(A: PayoffMatrix, gamma: CorrelationParams) -> np.ndarray:
    """The four diagonal entries of the pseudo-classical operator.

    Read from the decomposition matrix itself so there is a single
    source of truth; order (00, 01, 10, 11).
    """
    pc, _ = decompose(A, gamma)
    return np.diag(pc).real.copy()


def payoff_components(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    alpha: StrategyVector,
    beta: StrategyVector,
) -> Tuple[float, float]:
    """Player A's payoff split (pseudo_classical, interference).

    The pseudo-classical term is the bilinear form sum_ij a_i^2 b_j^2 P_ij
    over the diagonal P of the pseudo-classical operator.  The
    interference term is

        -a0 a1 b0 b1 [G+ sin(xi + chi) + G- sin(xi - chi)]

    and vanishes whenever either player forgoes superposition.
    """
    P = pc_diagonal(A, gamma)
    x0 = alpha.a0 * alpha.a0
    x1 = alpha.a1 * alpha.a1
    y0 = beta.a0 * beta.a0
    y1 = beta.a1 * beta.a1
    pc = x0 * y0 * P[0] + x0 * y1 * P[1] + x1 * y0 * P[2] + x1 * y1 * P[3]
    gf = game_functions(A, gamma)
    xi = alpha.phase
    chi = beta.phase
    interference = (
        -alpha.a0
        * alpha.a1
        * beta.a0
        * beta.a1
        * (gf.g_plus * np.sin(xi + chi) + gf.g_minus * np.sin(xi - chi))
    )
    return float(pc), float(interference)


def payoff(
    A: PayoffMatrix,
    gamma: CorrelationParams,
    alpha: StrategyVector,
    beta: StrategyVector,
    player: str = "A",
) -> float:
    """Closed-form payoff for either player.

    Player B's payoff is obtained by the symmetric-game argument swap
    Pi_B(alpha, beta) = Pi_A(beta, alpha); the operator route through
    the swapped table exists independently and is exercised as a test
    oracle.
    """
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    if player == "B":
        alpha, beta = beta, alpha
    pc, interference = payoff_components(A, gamma, alpha, beta)
    return pc + interference
