"""Shared numerical oracles for the test suite.

The closed-form payoff implemented by the package has two independent
matrix routes: evaluating the bare diagonal payoff operator in the
correlated state, and evaluating the correlated (conjugated) operator
in the bare product state.  Both are provided here, along with a
matrix-exponential construction of the correlation unitary and helpers
for drawing random inputs and for matching discrete equilibrium
clusters against analytic records.
"""

import numpy as np
from scipy.linalg import expm

from qgame import (
    CorrelationParams,
    JointState,
    PayoffMatrix,
    StrategyVector,
    build_swap,
    build_t,
    correlated_payoff_operator,
    expectation,
    joint_state,
)

TWO_PI = 2.0 * np.pi


def payoff_in_correlated_state(A, gamma, alpha, beta, player="A"):
    """Bare diagonal payoff operator, evaluated in the correlated state."""
    table = A if player == "A" else A.swapped()
    return expectation(table.as_diagonal(), joint_state(alpha, beta, gamma))


def payoff_via_correlated_operator(A, gamma, alpha, beta, player="A"):
    """Conjugated payoff operator, evaluated in the bare product state."""
    product = np.kron(alpha.as_array(), beta.as_array())
    op = correlated_payoff_operator(A, gamma, player)
    return expectation(op, JointState(product))


def exponential_correlation(gamma):
    """Reference correlation unitary exp(i (gamma1 S + gamma2 T) / 2)."""
    generator = gamma.gamma1 * build_swap() + gamma.gamma2 * build_t()
    return expm(0.5j * generator)


def random_strategy(rng):
    return StrategyVector.from_a0(np.sqrt(rng.uniform()), rng.uniform(0.0, TWO_PI))


def random_gamma(rng):
    return CorrelationParams(rng.uniform(0.0, TWO_PI), rng.uniform(0.0, TWO_PI))


def random_payoff_matrix(rng, scale=5.0):
    return PayoffMatrix(*rng.uniform(-scale, scale, size=4))


def cluster_matches_any(cluster, records, grid):
    """True when some cluster member lands within one amplitude index of
    some record's (a0, b0) pair."""
    steps = grid.n_amp - 1
    for record in records:
        ra = round(record.alpha.a0 * steps)
        rb = round(record.beta.a0 * steps)
        for a, b in cluster:
            if abs(round(a.a0 * steps) - ra) <= 1 and abs(round(b.a0 * steps) - rb) <= 1:
                return True
    return False
