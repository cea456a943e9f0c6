"""
Tests for sigma_1, its block expansion and factorization, the minors of M_b,
degree probes, and the intersection and blow-up experiments.

Run with:
    pytest tests/test_discriminant.py
    pytest tests/test_discriminant.py -m "not slow"
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest

from fuchsian_app.services.confvand import Node, NodeSpec, confvand_det
from fuchsian_app.services.discriminant import (
    block_expansion,
    blowup_family,
    chi_f,
    chi_phi_factorization,
    cramer_coordinates,
    degree_probe,
    expected_sigma1_degree,
    first_common_row,
    interpolate_exact,
    intersect_v1_vhat,
    minor_label,
    phi1,
    phi_f,
    pinned_indices,
    pinned_ratios,
    rank_profile,
    sigma1_by_blocks,
    sigma1_by_elimination,
    sigma_f_by_blocks,
    sigma_f_by_elimination,
    sigma_f_column,
    sigma_f_minor,
    sigma_k,
    sigma_minors,
)
from fuchsian_app.services.exact_core import Poly
from fuchsian_app.services.sampling import random_config, sample_intersection_base
from fuchsian_app.services.system_builder import derive_constants, exponent_sums, validate_config
from fuchsian_app.types import (
    DegenerateLinear,
    G1Convention,
    InterpolationInconsistent,
    InvalidConfig,
    OutsideOpenStratum,
)

F = Fraction


# ---------------------------------------------------------------------------
# Index bookkeeping
# ---------------------------------------------------------------------------

def test_indices_for_n3():
    assert first_common_row(3) == 12
    assert sigma_f_column(3) == 11
    assert pinned_indices(3) == (2, 14, 15, 33)
    assert minor_label(3, 1) == "b"
    assert minor_label(3, 2) == "H0"
    assert minor_label(3, 15) == "I0"
    assert expected_sigma1_degree(3) == 24


# ---------------------------------------------------------------------------
# sigma_1
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("convention", list(G1Convention))
def test_blocks_match_elimination(config_n3, convention):
    total, terms = sigma1_by_blocks(config_n3, convention)
    assert len(terms) == config_n3.N
    assert total == sigma1_by_elimination(config_n3, convention)


def test_blocks_match_elimination_n2():
    config = random_config(2, 8)
    total, terms = sigma1_by_blocks(config)
    assert len(terms) == 1
    assert total == sigma1_by_elimination(config)


@pytest.mark.slow
def test_blocks_match_elimination_n4():
    config = random_config(4, 44)
    total, _ = sigma1_by_blocks(config)
    assert total == sigma1_by_elimination(config)


def test_block_order_limit():
    with pytest.raises(InvalidConfig):
        block_expansion(random_config(5, 1))


def test_r_term_is_confluent_vandermonde(config_n3):
    _, terms = sigma1_by_blocks(config_n3)
    first = next(term for term in terms if term.J == (1,))
    spec = NodeSpec(
        tuple(Node(t, 1) for t in config_n3.t)
        + (Node(config_n3.q[0], 3),)
        + tuple(Node(q, 2) for q in config_n3.q[1:])
        + (Node(None, 1),)
    )
    assert first.r == confvand_det(spec)
    assert first.s_hat is not None


def _closed_form(config, q1_power, q_pair_power, q1_t_power, q_t_power):
    """prod (q_b - q_a)^e (q_j - t_i)^e (t_b - t_a) with q_1 carrying its own exponents."""
    q, t = config.q, config.t
    value = F(1)
    for b in range(len(q)):
        for a in range(b):
            value *= (q[b] - q[a]) ** (q1_power if a == 0 else q_pair_power)
    for j, qj in enumerate(q):
        for ti in t:
            value *= (qj - ti) ** (q1_t_power if j == 0 else q_t_power)
    for b in range(len(t)):
        for a in range(b):
            value *= t[b] - t[a]
    return value


def _check_first_block_term(config):
    _, terms = sigma1_by_blocks(config)
    first = next(term for term in terms if term.J == (1,))
    assert first.r == _closed_form(config, 6, 4, 3, 2)
    assert first.s == _closed_form(config, 12, 16, 3, 4)


def test_r1_and_s1_closed_forms(config_n3):
    _check_first_block_term(config_n3)


@pytest.mark.parametrize("order", [(1, 0, 2, 3), (3, 2, 1, 0), (1, 2, 3, 0)])
def test_sigma1_is_symmetric_in_apparent_points(config_n3, order):
    permuted = replace(
        config_n3,
        q=tuple(config_n3.q[j] for j in order),
        p=tuple(config_n3.p[j] for j in order),
    )
    assert sigma1_by_elimination(permuted) == sigma1_by_elimination(config_n3)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(500, 520))
def test_block_oracle_and_factorizations(seed):
    config = random_config(3, seed)
    sigma1 = sigma1_by_elimination(config)
    assert sigma1_by_blocks(config)[0] == sigma1
    _check_first_block_term(config)
    chi, phi = chi_phi_factorization(config, sigma1=sigma1)
    assert chi * phi == sigma1
    assert sigma_f_minor(config) == chi_f(config) * phi_f(config, derive_constants(config))


def test_chi_phi_factorization(config_n3):
    sigma1 = sigma1_by_elimination(config_n3)
    chi, phi = chi_phi_factorization(config_n3, sigma1=sigma1)
    assert chi * phi == sigma1
    assert chi != 0


def test_chi_phi_factorization_requires_n3(sample_config):
    with pytest.raises(InvalidConfig):
        chi_phi_factorization(sample_config)


def test_sigma1_degree_in_q1_and_p1():
    config = random_config(3, 321)
    in_q1 = degree_probe(sigma1_by_elimination, config, "q1", expected_sigma1_degree(3) + 1)
    assert in_q1.degree == 24
    in_p1 = degree_probe(sigma1_by_elimination, config, "p1", 3)
    assert in_p1.degree == 1


@pytest.mark.slow
def test_sigma1_degree_in_q1_n4():
    config = random_config(4, 654)
    probe = degree_probe(sigma1_by_elimination, config, "q1", expected_sigma1_degree(4) + 1)
    assert probe.degree == 47


def test_phi1_degree_and_leading_coefficient_in_q1():
    config = random_config(3, 321)
    probe = degree_probe(lambda c: phi1(c, derive_constants(c)), config, "q1", 7)
    q2, q3, q4 = config.q[1:]
    assert probe.degree == 6
    assert probe.leading_coefficient == config.p[0] * ((q2 - q3) * (q2 - q4) * (q3 - q4)) ** 2


def test_phi_f_leading_coefficient_in_q1():
    config = random_config(3, 321)
    probe = degree_probe(lambda c: phi_f(c, derive_constants(c)), config, "q1", 8)
    assert probe.leading_coefficient == -config.p[0]


def test_interpolation_detects_too_few_samples():
    with pytest.raises(InterpolationInconsistent):
        interpolate_exact(lambda x: x ** 3, [F(0), F(1), F(2)], [F(3)])
    assert interpolate_exact(lambda x: x ** 2, [F(0), F(1), F(2)], [F(5)]) == Poly([0, 0, 1])


# ---------------------------------------------------------------------------
# sigma_f
# ---------------------------------------------------------------------------

def test_sigma_f_block_form(config_n3):
    value = sigma_f_by_elimination(config_n3)
    assert sigma_f_by_blocks(config_n3) == value
    assert sigma_f_minor(config_n3) == value


def test_sigma_f_vanishing_convention(config_n3):
    convention = G1Convention.VANISHING
    assert sigma_f_by_blocks(config_n3, convention) == sigma_f_by_elimination(config_n3, convention)


# ---------------------------------------------------------------------------
# Minors of M_b
# ---------------------------------------------------------------------------

def test_pinned_ratios_at_infinity(config_n3):
    n = config_n3.n
    alpha, beta, gamma = exponent_sums(config_n3.rho[0])
    ratios = pinned_ratios(config_n3)
    assert ratios[8 * n - 10] == (beta - alpha + 1, beta - alpha + 1)
    assert ratios[20 * n - 27] == (gamma, gamma)
    for expected, found in ratios.values():
        assert expected == found


def test_pinned_ratios_with_t1_at_zero(config_n3):
    config = config_n3.with_t(1, F(0))
    assert validate_config(config).passed
    ratios = pinned_ratios(config)
    assert set(ratios) == set(pinned_indices(config.n))
    for expected, found in ratios.values():
        assert expected == found


@pytest.mark.slow
def test_unpinned_ratios_vary_between_configs():
    first, second = random_config(3, 21), random_config(3, 22)
    ks = [k for k in range(2, first.system_size + 1) if k not in pinned_indices(3)]
    ratios = []
    for config in (first, second):
        sigma1 = sigma1_by_elimination(config)
        minors = sigma_minors(config, ks)
        ratios.append({k: minors[k] / sigma1 for k in ks})
    assert [k for k in ks if ratios[0][k] == ratios[1][k]] == []


def test_pinned_ratios_need_sigma1(config_n3):
    with pytest.raises(DegenerateLinear):
        pinned_ratios(config_n3, sigma1=F(0))


@pytest.mark.parametrize("k", [3, 10, 20, 32])
def test_cramer_matches_solve(config_n3, k):
    from_minors, solved = cramer_coordinates(config_n3, k)
    assert from_minors == solved


def test_sigma_k_rejects_pinned_index_for_intersection(config_n3):
    with pytest.raises(InvalidConfig):
        intersect_v1_vhat(config_n3, k=14)
    with pytest.raises(InvalidConfig):
        intersect_v1_vhat(config_n3, k=config_n3.system_size + 2)


def test_sigma_one_is_first_minor(config_n3):
    assert sigma_k(config_n3, 1) == sigma1_by_elimination(config_n3)


# ---------------------------------------------------------------------------
# Intersection and blow-up
# ---------------------------------------------------------------------------

def test_intersection_needs_two_parameters(sample_config):
    with pytest.raises(InvalidConfig):
        intersect_v1_vhat(sample_config)


def test_generic_point_is_outside_open_stratum(config_n3):
    assert rank_profile(config_n3) == (config_n3.system_size, config_n3.system_size)
    with pytest.raises(OutsideOpenStratum):
        blowup_family(config_n3)


PLANTED_SEEDS = [7, 8, 9]


@pytest.mark.slow
@pytest.mark.parametrize("seed", PLANTED_SEEDS)
def test_planted_intersection_is_certified(seed):
    base = sample_intersection_base(seed)
    result = intersect_v1_vhat(base)
    certified = result.certified_points
    assert certified
    assert base.p[1] in [point.p2 for point in certified]
    for point in certified:
        assert point.sigma1 == 0
        assert point.sigma_k == 0
        assert point.rank_m1 == point.rank_mb == base.system_size - 1
        assert point.sigma_f != 0


@pytest.mark.slow
@pytest.mark.parametrize("seed", PLANTED_SEEDS)
def test_blowup_members_are_apparent(seed):
    base = sample_intersection_base(seed)
    report = blowup_family(base)
    assert report.family.dimension == 1
    assert report.rank_m1 == base.system_size - 1
    assert report.all_verified
    for member in report.members:
        assert member.chart_u1[0] == 0
        assert member.chart_u1[1] == member.vector[report.k - 2]
