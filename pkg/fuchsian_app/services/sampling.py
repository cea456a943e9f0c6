"""
Seeded random configurations and planted intersection bases.
"""
from __future__ import annotations

import logging
import random
from dataclasses import replace
from fractions import Fraction
from math import ceil, floor
from typing import List, Optional, Set, Union

from ..constants import SAMPLE_HIGH, SAMPLE_LOW, SAMPLE_MAX_ATTEMPTS, SAMPLE_MAX_DENOMINATOR
from ..types import DegenerateLinear, G1Convention, InvalidConfig, ProblemConfig
from .exact_core import Scalar, det, left_nullspace, rank
from .system_builder import (
    augmented_matrix,
    build_t_system,
    derive_constants,
    rhs_vector,
    validate_config,
)

logger = logging.getLogger(__name__)


def random_rational(rng: random.Random) -> Fraction:
    """Uniform denominator in 1..40, numerator chosen so the value lies in [1/40, 70]."""
    den = rng.randint(1, SAMPLE_MAX_DENOMINATOR)
    low = ceil(SAMPLE_LOW * den)
    high = floor(SAMPLE_HIGH * den)
    return Fraction(rng.randint(low, high), den)


def _distinct(rng: random.Random, count: int, avoid: Set[Fraction]) -> List[Fraction]:
    values: List[Fraction] = []
    while len(values) < count:
        x = random_rational(rng)
        if x not in avoid and x not in values:
            values.append(x)
    return values


def _finite_exponents(rng: random.Random, beta_zero: bool):
    a, b = random_rational(rng), random_rational(rng)
    # a*b + (a + b)*c = 0 makes beta vanish
    c = -a * b / (a + b) if beta_zero else random_rational(rng)
    return (a, b, c)


def random_config(
    n: int,
    rng: Union[random.Random, int, None] = None,
    beta_zero: bool = False,
) -> ProblemConfig:
    """
    A valid configuration: exponents at infinity have their third entry solved from the
    Fuchs relation, and draws repeat until validate_config passes.
    """
    if n < 2:
        raise InvalidConfig(f"n must be at least 2, got {n}")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    N = 3 * n - 5
    for attempt in range(1, SAMPLE_MAX_ATTEMPTS + 1):
        t = _distinct(rng, n, set())
        q = _distinct(rng, N, set(t))
        p = tuple(random_rational(rng) for _ in range(N))
        finite = [_finite_exponents(rng, beta_zero) for _ in range(n)]
        r01, r02 = random_rational(rng), random_rational(rng)
        r03 = sum((sum(triple) for triple in finite), Fraction(0)) - r01 - r02 - 2
        config = ProblemConfig(
            n=n,
            t=tuple(t),
            rho=((r01, r02, r03),) + tuple(finite),
            q=tuple(q),
            p=p,
        )
        if validate_config(config).passed:
            logger.debug("random_config: n=%s accepted after %s attempt(s)", n, attempt)
            return config
    raise InvalidConfig(f"no valid configuration for n={n} after {SAMPLE_MAX_ATTEMPTS} attempts")


# ---------------------------------------------------------------------------
# Planted bases for the intersection experiment
# ---------------------------------------------------------------------------

def _shift_exponents(config: ProblemConfig, w: Scalar, p_hat, convention: G1Convention) -> ProblemConfig:
    """
    Adds w to rho_{1,3} and rho_{0,3} (Fuchs is preserved) and resets p so that
    p_hat = p + g1 stays fixed, which leaves M_1 unchanged.
    """
    rho = [list(triple) for triple in config.rho]
    rho[0][2] = rho[0][2] + w
    rho[1][2] = rho[1][2] + w
    shifted = replace(config, rho=tuple(tuple(triple) for triple in rho))
    g1 = derive_constants(shifted, convention).g1
    return replace(shifted, p=tuple(hat - g for hat, g in zip(p_hat, g1)))


def _consistency(config: ProblemConfig, left: tuple, convention: G1Convention) -> Scalar:
    b = rhs_vector(config, derive_constants(config, convention))
    total = Fraction(0)
    for v, x in zip(left, b):
        if v != 0 and x != 0:
            total = total + v * x
    return total


def plant_on_intersection(
    config: ProblemConfig,
    convention: G1Convention = G1Convention.EXACT,
) -> Optional[ProblemConfig]:
    """
    Moves p_1 onto sigma_1 = 0, then shifts one exponent pair so the singular system
    becomes consistent. Returns None when this base is degenerate for planting.
    """
    def sigma_at(p1: Scalar) -> Scalar:
        return det(build_t_system(config.with_p(1, p1), convention).t_matrix)

    s0, s1 = sigma_at(Fraction(0)), sigma_at(Fraction(1))
    if s1 == s0:
        return None
    on_v1 = config.with_p(1, -s0 / (s1 - s0))
    constants = derive_constants(on_v1, convention)
    matrix = build_t_system(on_v1, convention, constants).t_matrix
    left = left_nullspace(matrix)
    if len(left) != 1:
        return None
    v = left[0]
    c0 = _consistency(_shift_exponents(on_v1, Fraction(0), constants.p_hat, convention), v, convention)
    c1 = _consistency(_shift_exponents(on_v1, Fraction(1), constants.p_hat, convention), v, convention)
    if c1 == c0:
        return None
    planted = _shift_exponents(on_v1, -c0 / (c1 - c0), constants.p_hat, convention)
    if not validate_config(planted).passed:
        return None
    size = planted.system_size
    if rank(build_t_system(planted, convention).t_matrix) != size - 1:
        return None
    if rank(augmented_matrix(planted, convention)) != size - 1:
        return None
    return planted


def sample_intersection_base(
    seed: Optional[int] = None,
    convention: G1Convention = G1Convention.EXACT,
    beta_zero: bool = False,
) -> ProblemConfig:
    """An n=3 configuration whose (p_1, p_2) lies on a rational point of V_1 and V-hat."""
    rng = random.Random(seed)
    for attempt in range(1, SAMPLE_MAX_ATTEMPTS + 1):
        planted = plant_on_intersection(random_config(3, rng, beta_zero), convention)
        if planted is not None:
            logger.info("planted intersection base after %s attempt(s): p1=%s p2=%s", attempt, planted.p[0], planted.p[1])
            return planted
    raise DegenerateLinear(f"could not plant an intersection point in {SAMPLE_MAX_ATTEMPTS} attempts")
