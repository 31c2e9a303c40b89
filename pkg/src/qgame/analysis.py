"""Entanglement diagnostics and the correlation-averaged game.

Reduced density matrices of the shared two-qubit state, the
entanglement entropy both as a function of the state and of the
single Schmidt parameter, and the operator obtained by averaging the
correlated payoff operator uniformly over both correlation angles.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError
from .operators import JointState, Operator4, build_swap, build_t
from .payoff import PayoffMatrix

_EIG_CLIP = 1e-15


@dataclass(frozen=True)
class DensityMatrix2:
    """A single-qubit density matrix: 2x2, self-adjoint, trace one, PSD."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=1e-10):
            raise ValueError("density matrix must be self-adjoint")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> Tuple[float, float]:
        """Both eigenvalues, descending.

        For a trace-one 2x2 matrix they are (1 +- sqrt(1 - 4 det)) / 2;
        tiny negative determinants from roundoff are clipped.
        """
        det = np.linalg.det(self.matrix).real
        disc = max(1.0 - 4.0 * det, 0.0)
        root = math.sqrt(disc)
        return (0.5 * (1.0 + root), 0.5 * (1.0 - root))


def reduced_density(state: JointState, subsystem: str = "A") -> DensityMatrix2:
    """Trace out one player from a pure two-qubit state.

    With the amplitudes reshaped to M[i, j] (row = player A's qubit),
    rho_A = M M^dag and rho_B = M^T conj(M^T)^dag = M^T M^*.
    """
    if subsystem not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    M = state.amps.reshape(2, 2)
    if subsystem == "A":
        rho = M @ M.conj().T
    else:
        rho = M.T @ M.conj()
    return DensityMatrix2(rho)


def _binary_entropy(p: float, base: str) -> float:
    if p <= _EIG_CLIP or p >= 1.0 - _EIG_CLIP:
        return 0.0
    h = -(p * math.log(p) + (1.0 - p) * math.log(1.0 - p))
    if base == "two":
        h /= math.log(2.0)
    return h


def entanglement_entropy(state: JointState, base: str = "natural") -> float:
    """Von Neumann entropy of either reduced state of a pure state.

    Zero for product states, log 2 (or 1 bit) for maximally entangled
    ones.  The two subsystems give identical values, so only one
    reduction is computed.
    """
    if base not in ("natural", "two"):
        raise ValueError(f"base must be 'natural' or 'two', got {base!r}")
    p, _ = reduced_density(state, "A").eigenvalues()
    return _binary_entropy(p, base)


def entropy_of_lambda(lam: float, base: str = "natural") -> float:
    """Binary entropy of a Schmidt weight lambda in [0, 1].

    This is the entanglement entropy of any pure state whose reduced
    eigenvalues are (lambda, 1 - lambda).
    """
    if base not in ("natural", "two"):
        raise ValueError(f"base must be 'natural' or 'two', got {base!r}")
    if not np.isfinite(lam) or lam < 0.0 or lam > 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    return _binary_entropy(float(lam), base)


def moderated_operator(A: PayoffMatrix, n_quad: int = 64) -> Operator4:
    """Average of the correlated payoff operator over both angles.

    (2 pi)^-2 times the double integral of J^dag A J over the full
    correlation square, evaluated with the periodic rectangle rule on
    an n_quad x n_quad grid.  The integrand is a trigonometric
    polynomial of degree two in each angle, so any n_quad >= 8 is
    already exact to roundoff; the closed form is (A + CAC) / 2.
    """
    if n_quad < 8:
        raise DomainError(f"n_quad must be at least 8, got {n_quad}")
    angles = np.linspace(0.0, 2.0 * np.pi, n_quad, endpoint=False)
    g1, g2 = np.meshgrid(angles, angles, indexing="ij")
    g1 = g1.ravel()
    g2 = g2.ravel()

    c1 = np.cos(0.5 * g1)
    s1 = np.sin(0.5 * g1)
    c2 = np.cos(0.5 * g2)
    s2 = np.sin(0.5 * g2)
    # Stack every J(gamma) on the grid: J = (c1 I + i s1 S)(c2 I + i s2 T).
    n = g1.size
    eye = np.eye(4, dtype=complex)
    S = build_swap().astype(complex)
    T = build_t().astype(complex)
    f1 = c1[:, None, None] * eye + 1j * s1[:, None, None] * S
    f2 = c2[:, None, None] * eye + 1j * s2[:, None, None] * T
    Js = np.einsum("kij,kjl->kil", f1, f2)

    diag = A.as_diagonal().astype(complex)
    avg = np.einsum("kji,jl,klm->im", Js.conj(), diag, Js) / n
    return avg
