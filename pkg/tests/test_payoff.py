import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import floats

from qgame import (
    CorrelationParams,
    PayoffMatrix,
    StrategyVector,
    build_conversion,
    build_correlation,
    build_t,
    correlated_payoff_operator,
    decompose,
    game_functions,
    payoff,
    payoff_components,
    pc_diagonal,
)

import support

angles = floats(min_value=0.0, max_value=support.TWO_PI)


@given(angles, angles)
def test_decomposition_matches_conjugated_operator(g1, g2):
    A = PayoffMatrix(3.0, 0.0, 5.0, 1.0)
    gamma = CorrelationParams(g1, g2)
    pc, interference = decompose(A, gamma)
    J = build_correlation(gamma)
    np.testing.assert_allclose(
        pc + interference, J.conj().T @ A.as_diagonal() @ J, atol=1e-12
    )
    # the split is structural: a diagonal part plus a self-adjoint
    # zero-diagonal part
    np.testing.assert_array_equal(pc, np.diag(np.diag(pc)))
    np.testing.assert_array_equal(np.diag(interference), np.zeros(4))
    np.testing.assert_allclose(interference, interference.conj().T, atol=1e-15)


def test_decomposition_random_matrices(rng):
    for _ in range(200):
        A = support.random_payoff_matrix(rng)
        gamma = support.random_gamma(rng)
        pc, interference = decompose(A, gamma)
        J = build_correlation(gamma)
        np.testing.assert_allclose(
            pc + interference, J.conj().T @ A.as_diagonal() @ J, atol=1e-12
        )


def test_decomposition_limits(pd):
    # at (pi, pi) only the converted game survives; at (0, pi) the
    # diagonal equals the T-conjugated game
    diag = pd.as_diagonal()
    C = build_conversion()
    T = build_t()
    pc, _ = decompose(pd, CorrelationParams(np.pi, np.pi))
    np.testing.assert_allclose(pc, C @ diag @ C, atol=1e-15)
    pc, _ = decompose(pd, CorrelationParams(0.0, np.pi))
    np.testing.assert_allclose(pc, T @ diag @ T, atol=1e-15)
    pc, interference = decompose(pd, CorrelationParams(0.0, 0.0))
    np.testing.assert_allclose(pc, diag, atol=1e-15)
    np.testing.assert_array_equal(interference, np.zeros((4, 4)))


def test_pc_diagonal_closed_forms(pd, rng):
    for _ in range(100):
        gamma = support.random_gamma(rng)
        c1 = np.cos(0.5 * gamma.gamma1) ** 2
        c2 = np.cos(0.5 * gamma.gamma2) ** 2
        a00, a01, a10, a11 = pd.entries()
        expected = [
            c2 * a00 + (1.0 - c2) * a11,
            c1 * a01 + (1.0 - c1) * a10,
            c1 * a10 + (1.0 - c1) * a01,
            c2 * a11 + (1.0 - c2) * a00,
        ]
        np.testing.assert_allclose(pc_diagonal(pd, gamma), expected, atol=1e-12)


def test_payoff_agrees_with_both_operator_routes(rng):
    for _ in range(200):
        A = support.random_payoff_matrix(rng)
        gamma = support.random_gamma(rng)
        alpha = support.random_strategy(rng)
        beta = support.random_strategy(rng)
        for player in ("A", "B"):
            closed = payoff(A, gamma, alpha, beta, player)
            state_route = support.payoff_in_correlated_state(
                A, gamma, alpha, beta, player
            )
            operator_route = support.payoff_via_correlated_operator(
                A, gamma, alpha, beta, player
            )
            assert closed == pytest.approx(state_route, abs=1e-12)
            assert closed == pytest.approx(operator_route, abs=1e-12)


def test_payoff_swap_symmetry(pd, rng):
    # the column player's payoff is the row player's with the
    # strategies exchanged
    for _ in range(50):
        gamma = support.random_gamma(rng)
        alpha = support.random_strategy(rng)
        beta = support.random_strategy(rng)
        assert payoff(pd, gamma, alpha, beta, "B") == pytest.approx(
            payoff(pd, gamma, beta, alpha, "A"), abs=1e-14
        )


def test_interference_vanishes_for_pure_strategies(pd, rng):
    pure = StrategyVector.basis(0)
    for _ in range(20):
        gamma = support.random_gamma(rng)
        other = support.random_strategy(rng)
        assert payoff_components(pd, gamma, pure, other)[1] == 0.0
        assert payoff_components(pd, gamma, other, pure)[1] == 0.0


def test_game_functions_pinned_values(pd):
    # gamma = (2 arcsin sqrt(0.2), 0): the optimal-edge angle
    gstar = 2.0 * np.arcsin(np.sqrt(0.2))
    gf = game_functions(pd, CorrelationParams(gstar, 0.0))
    assert gf.tau == -1.0
    assert gf.g_plus == 0.0
    assert gf.g_minus == pytest.approx(-4.0, abs=1e-12)
    assert gf.gp_plus == 2.0
    assert gf.gp_minus == pytest.approx(-3.0, abs=1e-12)
    assert gf.h_plus == pytest.approx(-2.0, abs=1e-12)
    assert gf.h_minus == pytest.approx(0.0, abs=1e-12)
    assert gf.delta == 0.0

    gf = game_functions(pd, CorrelationParams(np.pi / 2, np.pi / 2))
    assert gf.g_plus == pytest.approx(2.0, abs=1e-12)
    assert gf.g_minus == pytest.approx(-5.0, abs=1e-12)
    assert gf.h_plus == pytest.approx(-1.0, abs=1e-12)
    assert gf.h_minus == pytest.approx(-1.0, abs=1e-12)
    assert gf.delta == 0.0  # clamped: |G-| exceeds |G+|

    gf = game_functions(pd, CorrelationParams(0.0, np.pi / 2))
    assert gf.g_plus == pytest.approx(2.0, abs=1e-12)
    assert gf.g_minus == 0.0
    assert gf.delta == pytest.approx(2.0, abs=1e-12)
    assert gf.h_plus == pytest.approx(-6.0, abs=1e-12)
    assert gf.h_minus == pytest.approx(4.0, abs=1e-12)


def test_game_functions_h_sum_identity(rng):
    # H+ + H- telescopes to 2 tau for any matrix and any angles
    for _ in range(100):
        A = support.random_payoff_matrix(rng)
        gf = game_functions(A, support.random_gamma(rng))
        assert gf.h_plus + gf.h_minus == pytest.approx(2.0 * gf.tau, abs=1e-12)
        assert gf.delta >= 0.0


def test_correlated_payoff_operator_players(pd, rng):
    gamma = support.random_gamma(rng)
    J = build_correlation(gamma)
    np.testing.assert_allclose(
        correlated_payoff_operator(pd, gamma, "A"),
        J.conj().T @ pd.as_diagonal() @ J,
        atol=1e-14,
    )
    np.testing.assert_allclose(
        correlated_payoff_operator(pd, gamma, "B"),
        J.conj().T @ pd.swapped().as_diagonal() @ J,
        atol=1e-14,
    )
    with pytest.raises(ValueError):
        correlated_payoff_operator(pd, gamma, "C")


def test_payoff_matrix_methods(pd):
    assert pd.entries() == (3.0, 0.0, 5.0, 1.0)
    assert pd.swapped().entries() == (3.0, 5.0, 0.0, 1.0)
    assert pd.is_prisoners_dilemma()
    assert not pd.swapped().is_prisoners_dilemma()
    assert pd.max_abs() == 5.0
    assert PayoffMatrix(-7.0, 1.0, 2.0, 3.0).max_abs() == 7.0
    np.testing.assert_array_equal(
        pd.as_diagonal(), np.diag([3.0, 0.0, 5.0, 1.0])
    )
    with pytest.raises(ValueError):
        PayoffMatrix(np.nan, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        PayoffMatrix(0.0, np.inf, 0.0, 0.0)


def test_payoff_player_validation(pd):
    alpha = StrategyVector.basis(0)
    with pytest.raises(ValueError):
        payoff(pd, CorrelationParams(0.0, 0.0), alpha, alpha, "both")
