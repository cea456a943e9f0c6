"""
Tests for indicial data, the Frobenius recursion and apparent-singularity verification.

Run with:
    pytest tests/test_frobenius.py
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from fuchsian_app.services.exact_core import Poly
from fuchsian_app.services.frobenius import (
    INFINITY_LABEL,
    check_log_obstructions,
    default_order,
    frobenius_series,
    indicial_at,
    verify_apparent_all,
)
from fuchsian_app.services.sampling import random_config
from fuchsian_app.services.system_builder import solve_connection
from fuchsian_app.types import FuchsianEquation, NotASingularPoint, PointKind, WrongExponents

F = Fraction


def _perturb_i(equation: FuchsianEquation, extra: Poly) -> FuchsianEquation:
    return FuchsianEquation(
        n=equation.n, t=equation.t, q=equation.q,
        G=equation.G, H=equation.H, I=equation.I + extra, psi=equation.psi,
    )


def test_default_order():
    assert default_order() == 11
    assert default_order(0) == 3


def test_indicial_roots_at_infinity_and_parabolic_points(sample_config):
    equation = solve_connection(sample_config)
    at_infinity = indicial_at(equation, None)
    assert at_infinity.label == INFINITY_LABEL
    assert at_infinity.roots == sorted(sample_config.rho[0])
    for i, ti in enumerate(sample_config.t, start=1):
        data = indicial_at(equation, ti)
        assert data.label == f"t{i}"
        assert data.roots == sorted(sample_config.rho[i])
        assert data.all_roots_rational


def test_indicial_roots_at_apparent_point(config_n3):
    equation = solve_connection(config_n3)
    data = indicial_at(equation, config_n3.q[0])
    assert data.label == "q1"
    assert data.roots == [0, 1, 3]


def test_not_a_singular_point(sample_config):
    equation = solve_connection(sample_config)
    with pytest.raises(NotASingularPoint):
        indicial_at(equation, F(1, 2))


def test_series_at_parabolic_point_has_no_resonance(sample_config):
    equation = solve_connection(sample_config)
    series = frobenius_series(equation, sample_config.t[0], sample_config.rho[1][0], 6)
    assert series.coefficients[0] == 1
    assert len(series.coefficients) == 7
    assert series.resonant_steps == []


def test_series_rejects_non_exponent(sample_config):
    equation = solve_connection(sample_config)
    with pytest.raises(WrongExponents):
        frobenius_series(equation, sample_config.t[0], F(1, 3), 4)


def test_apparent_series_resonates_consistently(config_n3):
    equation = solve_connection(config_n3)
    series = frobenius_series(equation, config_n3.q[0], F(0), default_order())
    assert series.resonant_steps == [1, 3]
    assert check_log_obstructions(equation, 1) == (0, 0, 0)


def test_verify_passes_with_defect_one(config_n3):
    equation = solve_connection(config_n3)
    report = verify_apparent_all(equation, config_n3)
    assert report.passed
    apparent = [p for p in report.points if p.kind is PointKind.APPARENT]
    assert len(apparent) == config_n3.N
    for j, check in enumerate(apparent):
        assert check.defect == 1
        assert check.h1 == config_n3.p[j]
        assert check.obstructions == []


def test_perturbed_i_is_obstructed():
    config = random_config(3, 99)
    equation = solve_connection(config)
    # vanishes to order 2 at every q_j and order 3 at every t_i, below the top degree of I
    bump = Poly.from_roots(list(config.q) * 2 + list(config.t) * 3)
    report = verify_apparent_all(_perturb_i(equation, bump), config)
    assert not report.passed
    failures = report.failures()
    assert failures
    assert all(p.kind is PointKind.APPARENT for p in failures)
    for check in failures:
        assert any(r != 0 for r in check.residuals)
        assert check.obstructions


def test_perturbed_constant_term_breaks_exponents(config_n3):
    equation = solve_connection(config_n3)
    report = verify_apparent_all(_perturb_i(equation, Poly([1])), config_n3)
    assert not report.passed
    assert any(p.message == "exponents are not 0, 1, 3" for p in report.failures())


def test_wrong_psi_is_reported(sample_config):
    equation = solve_connection(sample_config)
    moved = FuchsianEquation(
        n=equation.n, t=equation.t, q=equation.q,
        G=equation.G, H=equation.H, I=equation.I, psi=equation.psi * Poly([-5, 1]),
    )
    report = verify_apparent_all(moved, sample_config)
    assert any(p.kind is PointKind.EXTRA for p in report.failures())


def test_indicial_at_point_where_i_has_a_triple_root():
    # I = z^3 over psi^3 = z^3 (z - 1)^3 is regular at 0, so i0 = 0
    equation = FuchsianEquation(
        n=2, t=(F(0), F(1)), q=(F(2),),
        G=Poly([1]), H=Poly([1]), I=Poly([0, 0, 0, 1]), psi=Poly([0, -1, 1]),
    )
    data = indicial_at(equation, F(0))
    assert (data.g0, data.h0, data.i0) == (-1, 1, 0)
    assert data.roots == [0, 2, 2]


def test_psi_missing_an_apparent_point_is_reported():
    config = random_config(3, 41)
    equation = solve_connection(config)
    short = FuchsianEquation(
        n=equation.n, t=equation.t, q=equation.q,
        G=equation.G, H=equation.H, I=equation.I,
        psi=Poly.from_roots(list(config.t) + list(config.q[:-1])),
    )
    report = verify_apparent_all(short, config)
    assert not report.passed
    last = next(p for p in report.points if p.label == f"q{config.N}")
    assert not last.passed
    assert last.message.startswith("NotASingularPoint")
    assert any(p.kind is PointKind.EXTRA for p in report.failures())


@pytest.mark.parametrize("order", [4, 9, 14])
def test_resonance_does_not_depend_on_order(config_n3, order):
    equation = solve_connection(config_n3)
    series = frobenius_series(equation, config_n3.q[0], F(0), order)
    assert series.resonant_steps == [1, 3]


def test_verdicts_agree_at_longer_order():
    config = random_config(3, 99)
    equation = solve_connection(config)
    bump = Poly.from_roots(list(config.q) * 2 + list(config.t) * 3)
    perturbed = _perturb_i(equation, bump)
    for candidate in (equation, perturbed):
        short = verify_apparent_all(candidate, config, default_order())
        longer = verify_apparent_all(candidate, config, default_order() + 5)
        assert [(p.label, p.passed) for p in short.points] == [(p.label, p.passed) for p in longer.points]
    assert verify_apparent_all(equation, config, default_order() + 5).passed
