import numpy as np
import pytest

from qgame import (
    CorrelationParams,
    JointState,
    NotSelfAdjoint,
    StrategyVector,
    build_conversion,
    build_correlation,
    build_swap,
    build_t,
    expectation,
    joint_state,
)

import support

S = build_swap()
C = build_conversion()
T = build_t()
I4 = np.eye(4)


def test_permutation_operators_pinned():
    np.testing.assert_array_equal(
        S, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )
    np.testing.assert_array_equal(
        C, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    )
    np.testing.assert_array_equal(
        T, [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]
    )


@pytest.mark.parametrize("op", [S, C, T], ids=["S", "C", "T"])
def test_operators_are_involutions(op):
    np.testing.assert_array_equal(op @ op, I4)


def test_operator_algebra():
    # the three permutations commute, generate each other pairwise, and
    # close the linear identity S + T - C = I
    np.testing.assert_array_equal(S @ C, C @ S)
    np.testing.assert_array_equal(S @ T, T @ S)
    np.testing.assert_array_equal(C @ T, T @ C)
    np.testing.assert_array_equal(T, S @ C)
    np.testing.assert_array_equal(C, S @ T)
    np.testing.assert_array_equal(S, C @ T)
    np.testing.assert_array_equal(S + T - C, I4)


def test_correlation_special_points():
    np.testing.assert_allclose(
        build_correlation(CorrelationParams(0.0, 0.0)), I4, atol=1e-15
    )
    np.testing.assert_allclose(
        build_correlation(CorrelationParams(np.pi, 0.0)), 1j * S, atol=1e-15
    )
    np.testing.assert_allclose(
        build_correlation(CorrelationParams(0.0, np.pi)), 1j * T, atol=1e-15
    )


def test_correlation_is_unitary_and_matches_exponential(rng):
    for _ in range(50):
        gamma = support.random_gamma(rng)
        J = build_correlation(gamma)
        np.testing.assert_allclose(J.conj().T @ J, I4, atol=1e-12)
        np.testing.assert_allclose(
            J, support.exponential_correlation(gamma), atol=1e-12
        )


def test_correlation_factors_commute(rng):
    # applying the two single-angle factors in either order gives the
    # same unitary, because S and T commute
    for _ in range(20):
        g1 = rng.uniform(0.0, support.TWO_PI)
        g2 = rng.uniform(0.0, support.TWO_PI)
        first = build_correlation(CorrelationParams(g1, 0.0))
        second = build_correlation(CorrelationParams(0.0, g2))
        np.testing.assert_allclose(
            first @ second, second @ first, atol=1e-14
        )
        np.testing.assert_allclose(
            first @ second,
            build_correlation(CorrelationParams(g1, g2)),
            atol=1e-14,
        )


def test_strategy_vector_validation():
    with pytest.raises(ValueError):
        StrategyVector(0.5, 0.5)  # norm is 0.5, not 1
    with pytest.raises(ValueError):
        StrategyVector(-1.0, 0.0)
    with pytest.raises(ValueError):
        StrategyVector(1.0, 0.0, float("nan"))
    with pytest.raises(ValueError):
        StrategyVector(float("inf"), 0.0)


def test_strategy_vector_phase_canonicalization():
    s = StrategyVector(0.6, 0.8, 7.0)
    assert 0.0 <= s.phase < support.TWO_PI
    assert s.phase == pytest.approx(7.0 - support.TWO_PI)
    # a vanishing second amplitude makes the phase irrelevant
    assert StrategyVector(1.0, 0.0, 1.234).phase == 0.0


def test_strategy_vector_from_a0():
    s = StrategyVector.from_a0(0.6, 0.5)
    assert s.a0 == 0.6
    assert s.a1 == pytest.approx(0.8, abs=1e-15)
    assert s.phase == 0.5
    with pytest.raises(ValueError):
        StrategyVector.from_a0(1.5)
    with pytest.raises(ValueError):
        StrategyVector.from_a0(-0.1)


def test_strategy_vector_basis_and_array():
    zero = StrategyVector.basis(0)
    one = StrategyVector.basis(1)
    np.testing.assert_array_equal(zero.as_array(), [1.0, 0.0])
    np.testing.assert_array_equal(one.as_array(), [0.0, 1.0])
    with pytest.raises(ValueError):
        StrategyVector.basis(2)
    arr = StrategyVector(0.6, 0.8, np.pi / 2).as_array()
    np.testing.assert_allclose(arr, [0.6, 0.8j], atol=1e-15)


def test_correlation_params_reduced_to_period():
    gamma = CorrelationParams(support.TWO_PI + 0.5, -0.5)
    assert gamma.gamma1 == pytest.approx(0.5, abs=1e-12)
    assert gamma.gamma2 == pytest.approx(support.TWO_PI - 0.5, abs=1e-12)
    with pytest.raises(ValueError):
        CorrelationParams(float("nan"), 0.0)


def test_joint_state_validation():
    with pytest.raises(ValueError):
        JointState(np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        JointState(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        JointState(np.array([np.inf, 0.0, 0.0, 0.0]))
    state = JointState(np.array([1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        state.amps[0] = 0.0  # amplitudes are read-only


def test_joint_state_is_correlated_product(rng):
    for _ in range(20):
        alpha = support.random_strategy(rng)
        beta = support.random_strategy(rng)
        gamma = support.random_gamma(rng)
        state = joint_state(alpha, beta, gamma)
        expected = build_correlation(gamma) @ np.kron(
            alpha.as_array(), beta.as_array()
        )
        np.testing.assert_allclose(state.amps, expected, atol=1e-14)


def test_expectation_rejects_non_self_adjoint():
    state = JointState(np.array([1.0, 0.0, 0.0, 0.0]))
    bad = np.zeros((4, 4), dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(NotSelfAdjoint):
        expectation(bad, state)


def test_expectation_matches_quadratic_form(rng):
    for _ in range(20):
        raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        op = raw + raw.conj().T
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        amps /= np.linalg.norm(amps)
        state = JointState(amps)
        expected = np.vdot(amps, op @ amps).real
        assert expectation(op, state) == pytest.approx(expected, abs=1e-12)
