"""
Tests for confluent Vandermonde matrices.

Run with:
    pytest tests/test_confvand.py
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fuchsian_app.services.confvand import (
    Node,
    NodeSpec,
    RowSequence,
    build_confvand,
    confvand_det,
    confvand_row,
    inversion_count,
    inversion_sign,
    raised_confvand_det,
    sequence_det,
)
from fuchsian_app.services.exact_core import ExactMatrix, det
from fuchsian_app.types import DuplicateNode

F = Fraction


def _random_spec(rng: random.Random, max_size: int) -> NodeSpec:
    pairs = []
    used = set()
    size = 0
    while size < max_size:
        m = rng.randint(1, min(3, max_size - size))
        x = F(rng.randint(-30, 30), rng.randint(1, 6))
        if x in used:
            continue
        used.add(x)
        pairs.append((x, m))
        size += m
        if rng.random() < 0.3:
            break
    return NodeSpec.of(pairs)


def test_unit_row_for_infinity():
    assert confvand_row(None, 0, 4) == [0, 0, 0, 1]


def test_row_is_scaled_derivative():
    assert confvand_row(F(2), 1, 4) == [0, 1, 4, 12]
    assert confvand_row(F(2), 2, 4) == [0, 0, 1, 6]


@pytest.mark.parametrize("seed", range(20))
def test_product_formula_matches_elimination(seed):
    rng = random.Random(seed)
    spec = _random_spec(rng, rng.randint(1, 8))
    assert det(build_confvand(spec)) == confvand_det(spec)


def test_node_at_infinity_contributes_factor_one():
    finite = NodeSpec.of([(F(1), 2), (F(-3, 2), 1), (F(4), 2)])
    with_inf = NodeSpec(finite.nodes + (Node(None, 1),))
    assert det(build_confvand(with_inf)) == confvand_det(finite)
    assert confvand_det(with_inf) == confvand_det(finite)


def test_simple_vandermonde():
    a, b, c = F(1), F(2), F(5)
    spec = NodeSpec.of([(a, 1), (b, 1), (c, 1)])
    assert confvand_det(spec) == (b - a) * (c - a) * (c - b)


def test_duplicate_node_rejected():
    with pytest.raises(DuplicateNode):
        build_confvand(NodeSpec.of([(F(1), 1), (F(1), 2)]))


def test_permuted_sequence_changes_sign_by_inversions():
    spec = NodeSpec.of([(F(0), 2), (F(3), 1), (F(-1, 2), 2)])
    sequence = RowSequence(((0, 1), (0, 0), (1, 0), (2, 0), (2, 1)))
    assert det(build_confvand(spec, sequence)) == sequence_det(spec, sequence)
    assert inversion_count(sequence) == 1
    assert sequence_det(spec, sequence) == -confvand_det(spec)


def test_raised_determinant_matches_direct_matrix():
    a, b, c = F(1, 3), F(2), F(-5, 4)
    spec = NodeSpec.of([(a, 2), (b, 1), (c, 2)])
    width = spec.size
    rows = [
        confvand_row(a, 0, width),
        confvand_row(a, 2, width),
        confvand_row(b, 0, width),
        confvand_row(c, 0, width),
        confvand_row(c, 1, width),
    ]
    assert det(ExactMatrix(rows, width)) == raised_confvand_det(spec, 0)


# ---------------------------------------------------------------------------
# Row orders of the n = 3 blocks: t1..t3 are nodes 0..2, q1..q4 are 3..6, infinity is 7
# ---------------------------------------------------------------------------

_Q0 = tuple((j, 0) for j in range(3, 7))
_Q1 = tuple((j, 1) for j in range(3, 7))
_T = tuple((i, 0) for i in range(3))
_PIN = ((7, 0),)


def test_r_block_inversions():
    without_pin = _T + _Q0 + _Q1 + ((3, 2),)
    assert inversion_count(without_pin) == 12
    assert inversion_sign(_PIN + without_pin) == 1


def test_s_block_inversions():
    head = ((4, 2), (5, 2), (6, 2))
    tail = _T + _Q0 + _Q1 + ((3, 2), (4, 3), (5, 3), (6, 3))
    assert inversion_count(head + _PIN + tail) == 66
    assert inversion_count(head + tail) == 51
    assert inversion_sign(head + _PIN + tail) == 1
