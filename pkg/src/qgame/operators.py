"""Linear algebra for the four-dimensional joint strategy space.

Everything in this package works in the product basis with the fixed
ordering (|00>, |01>, |10>, |11>).  This module provides the basis
permutation operators S (swap), C (conversion) and T (their product),
the two-parameter correlation unitary J, joint strategy states, and
expectation values of self-adjoint operators.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotSelfAdjoint

TWO_PI = 2.0 * np.pi

# Public aliases: a 4x4 complex ndarray and a plain complex number.
# Kept as aliases rather than wrapper classes; numpy already enforces
# shape and dtype where it matters.
Operator4 = np.ndarray
ComplexScalar = complex

_NORM_TOL = 1e-12
_UNITARY_TOL = 1e-12
_SELF_ADJOINT_TOL = 1e-10


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not np.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class StrategyVector:
    """One player's strategy (alpha0, alpha1) = (a0, a1 * e^{i*phase}).

    The global phase is fixed so the first amplitude is real and
    non-negative; ``phase`` is the relative phase of the second
    amplitude, stored reduced to [0, 2*pi).  When a1 == 0 the phase is
    physically irrelevant and is canonicalized to 0.
    """

    a0: float
    a1: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("strategy component", self.a0, self.a1, self.phase)
        if self.a0 < 0.0 or self.a1 < 0.0:
            raise ValueError("amplitudes must be non-negative")
        if abs(self.a0 * self.a0 + self.a1 * self.a1 - 1.0) > _NORM_TOL:
            raise ValueError("amplitudes must satisfy a0^2 + a1^2 = 1")
        phase = float(self.phase) % TWO_PI if self.a1 > 0.0 else 0.0
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a1", float(self.a1))
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_a0(cls, a0: float, phase: float = 0.0) -> "StrategyVector":
        """Build a strategy from its first amplitude alone."""
        a0 = float(a0)
        if not 0.0 <= a0 <= 1.0:
            raise ValueError(f"a0 must lie in [0, 1], got {a0!r}")
        a1 = np.sqrt(max(0.0, 1.0 - a0 * a0))
        return cls(a0, a1, phase)

    @classmethod
    def basis(cls, index: int) -> "StrategyVector":
        """The pure strategy |0> or |1>."""
        if index not in (0, 1):
            raise ValueError("basis index must be 0 or 1")
        return cls(1.0, 0.0) if index == 0 else cls(0.0, 1.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1 * np.exp(1j * self.phase)])


@dataclass(frozen=True)
class CorrelationParams:
    """The coordinator's correlation angles (gamma1, gamma2), in radians.

    Values are reduced to the canonical range [0, 2*pi) on construction.
    """

    gamma1: float
    gamma2: float

    def __post_init__(self) -> None:
        _require_finite("gamma", self.gamma1, self.gamma2)
        object.__setattr__(self, "gamma1", float(self.gamma1) % TWO_PI)
        object.__setattr__(self, "gamma2", float(self.gamma2) % TWO_PI)


@dataclass(frozen=True, eq=False)
class JointState:
    """Normalized state of the joint four-dimensional space.

    ``amps`` holds the four complex amplitudes in basis order
    (00, 01, 10, 11).
    """

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (4,):
            raise ValueError("joint state needs exactly 4 amplitudes")
        if not np.all(np.isfinite(amps)):
            raise ValueError("joint state amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"joint state must be normalized, |psi|^2 = {norm_sq}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)


def build_swap() -> Operator4:
    """The swap operator S with S|i,j> = |j,i>."""
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def build_conversion() -> Operator4:
    """The conversion operator C with C|i,j> = |1-i, 1-j>.

    Both players' strategy labels are renamed simultaneously.
    """
    return np.array(
        [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]
    )


def build_t() -> Operator4:
    """The combined conversion-and-swap operator T with T|i,j> = |1-j, 1-i>.

    Satisfies T = S C = C S and, together with S, C and the identity,
    closes the commuting involution set S + T - C = I.
    """
    return np.array(
        [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]
    )


def build_correlation(gamma: CorrelationParams) -> Operator4:
    """The correlation unitary J(gamma).

    Closed form [cos(g1/2) I + i sin(g1/2) S][cos(g2/2) I + i sin(g2/2) T],
    which equals the exponential exp(i(g1 S + g2 T)/2) because S and T
    are commuting involutions.  J((0, 0)) is the identity.
    """
    eye = np.eye(4)
    half1 = 0.5 * gamma.gamma1
    half2 = 0.5 * gamma.gamma2
    factor1 = np.cos(half1) * eye + 1j * np.sin(half1) * build_swap()
    factor2 = np.cos(half2) * eye + 1j * np.sin(half2) * build_t()
    return factor1 @ factor2


def joint_state(
    alpha: StrategyVector, beta: StrategyVector, gamma: CorrelationParams
) -> JointState:
    """The correlated joint strategy state J(gamma) (|alpha> x |beta>)."""
    product = np.kron(alpha.as_array(), beta.as_array())
    return JointState(build_correlation(gamma) @ product)


def expectation(op: Operator4, state: JointState) -> float:
    """<state| op |state> for a self-adjoint operator.

    Raises NotSelfAdjoint when ``op`` deviates from its conjugate
    transpose by more than 1e-10 in any entry; the imaginary residue of
    the quadratic form (guaranteed tiny by self-adjointness) is
    discarded.
    """
    op = np.asarray(op)
    if np.max(np.abs(op - op.conj().T)) > _SELF_ADJOINT_TOL:
        raise NotSelfAdjoint("operator is not self-adjoint within 1e-10")
    value = np.vdot(state.amps, op @ state.amps)
    return float(value.real)
