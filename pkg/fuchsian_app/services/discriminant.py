"""
Discriminant varieties of system (T).

sigma_1 = det M_1 cuts out V_1. The minors sigma_k of M_b = [b | M_1] (column k removed)
cut out V_k, and sigma_f, the minor without the first common row and column H_{8n-13},
cuts out W. On (V_1 and V-hat) minus W the rank of M_1 drops by exactly one and the
solutions form an affine line, which is what the blow-up reports.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..constants import (
    BLOWUP_SAMPLE_PARAMETERS,
    DEFAULT_INTERSECT_K,
    DEGREE_PROBE_EXTRA_SAMPLES,
    INTERSECT_CHECK_SAMPLES,
    INTERSECT_SAMPLES,
    MAX_BLOCK_ORDER,
    PROBE_START,
)
from ..types import (
    AffineFamily,
    BlockExpansionTerm,
    BlowupReport,
    DegenerateLinear,
    DegreeProbe,
    DerivedConstants,
    FactorizationMismatch,
    FamilyMember,
    G1Convention,
    InterpolationInconsistent,
    IntersectionPoint,
    IntersectionResult,
    InvalidConfig,
    OutsideOpenStratum,
    ProblemConfig,
    RankMismatch,
)
from .confvand import (
    Node,
    NodeSpec,
    RowSequence,
    confvand_det,
    confvand_row,
    inversion_sign,
    product,
    raised_confvand_det,
)
from .exact_core import (
    ONE,
    ZERO,
    ExactMatrix,
    Poly,
    Scalar,
    as_scalar,
    det,
    factor_rational,
    quadratic_roots,
    radicand_of,
    rank,
    solve,
)
from .frobenius import verify_apparent_all
from .system_builder import (
    augmented_matrix,
    build_t_system,
    column_labels,
    derive_constants,
    equation_from_vector,
    h_width,
    i_width,
    solve_connection,
)

logger = logging.getLogger(__name__)

Convention = Union[G1Convention, str]


# ---------------------------------------------------------------------------
# Index bookkeeping
# ---------------------------------------------------------------------------

def first_common_row(n: int) -> int:
    """0-based row of common(q_1) in M_1."""
    return 1 + n + 2 * (3 * n - 5)


def sigma_f_column(n: int) -> int:
    """0-based column of H_{8n-13}."""
    return 8 * n - 13


def pinned_indices(n: int) -> Tuple[int, ...]:
    """Minor indices whose ratio to sigma_1 is constant once t_1 = 0: 2, 8n-10, 8n-9, 20n-27."""
    return 2, 8 * n - 10, 8 * n - 9, 20 * n - 27


def minor_label(n: int, k: int) -> str:
    """Name of the M_1 column removed by sigma_k."""
    if k == 1:
        return "b"
    return column_labels(n)[k - 2]


def _check_k(config: ProblemConfig, k: int, allow_pinned: bool = False) -> None:
    last = config.system_size + 1
    if not 2 <= k <= last:
        raise InvalidConfig(f"k must lie in 2..{last}, got {k}")
    if not allow_pinned and k in pinned_indices(config.n):
        raise InvalidConfig(f"k={k} is a pinned index {pinned_indices(config.n)}: V_k coincides with V_1")


# ---------------------------------------------------------------------------
# sigma_1
# ---------------------------------------------------------------------------

def m1_matrix(config: ProblemConfig, convention: Convention = G1Convention.EXACT,
              constants: Optional[DerivedConstants] = None) -> ExactMatrix:
    return build_t_system(config, convention, constants).t_matrix


def sigma1_by_elimination(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Scalar:
    return det(m1_matrix(config, convention))


def _laplace_sign(rows: Iterable[int], cols: Iterable[int]) -> int:
    total = sum(r + 1 for r in rows) + sum(c + 1 for c in cols)
    return -1 if total % 2 else 1


def block_expansion(
    config: ProblemConfig,
    convention: Convention = G1Convention.EXACT,
    constants: Optional[DerivedConstants] = None,
) -> List[BlockExpansionTerm]:
    """
    Laplace expansion of det M_1 along the H columns. The H minor of an index set J
    (|J| = n - 2 common rows) is mu_J times a confluent Vandermonde determinant; the
    complementary I minor splits into 2^|J| confluent pieces after reducing the third
    rows of q_l, l not in J, by their common rows.
    """
    n, N = config.n, config.N
    if n > MAX_BLOCK_ORDER:
        raise InvalidConfig(f"block expansion is implemented for n <= {MAX_BLOCK_ORDER}, got n={n}")
    constants = constants or derive_constants(config, convention)
    hw, iw = h_width(n), i_width(n)
    t_nodes = [Node(ti, 1, f"t{i}") for i, ti in enumerate(config.t, start=1)]
    inf_index = n + N
    common_start = first_common_row(n)
    terms: List[BlockExpansionTerm] = []

    for J in combinations(range(N), n - 2):
        in_j = set(J)
        rows = list(range(common_start)) + [common_start + j for j in J]
        sign = _laplace_sign(rows, range(hw))

        r_spec = NodeSpec(tuple(t_nodes) + tuple(
            Node(qj, 3 if j in in_j else 2, f"q{j + 1}") for j, qj in enumerate(config.q)
        ) + (Node(None, 1, "inf"),))
        r_sequence = RowSequence(
            ((inf_index, 0),)
            + tuple((i, 0) for i in range(n))
            + tuple((n + j, 0) for j in range(N))
            + tuple((n + j, 1) for j in range(N))
            + tuple((n + j, 2) for j in J)
        )
        r_value = as_scalar(inversion_sign(r_sequence) * confvand_det(r_spec))

        s_spec = NodeSpec(tuple(t_nodes) + tuple(
            Node(qj, 3 if j in in_j else 4, f"q{j + 1}") for j, qj in enumerate(config.q)
        ) + (Node(None, 1, "inf"),))
        s_sequence = RowSequence(
            tuple((n + l, 2) for l in range(N) if l not in in_j)
            + ((inf_index, 0),)
            + tuple((i, 0) for i in range(n))
            + tuple((n + j, 0) for j in range(N))
            + tuple((n + j, 1) for j in range(N))
            + tuple((n + j, 2 if j in in_j else 3) for j in range(N))
        )
        s_sign = inversion_sign(s_sequence)

        s_total: Scalar = ZERO
        s_plain: Scalar = ZERO
        s_hat: Optional[Scalar] = None
        for size in range(len(J) + 1):
            for D in combinations(J, size):
                if size == 0:
                    piece = as_scalar(s_sign * confvand_det(s_spec))
                    s_plain = piece
                elif size == 1:
                    piece = as_scalar(s_sign * raised_confvand_det(s_spec, n + D[0]))
                    if len(J) == 1:
                        s_hat = piece
                else:
                    piece = det(_raised_matrix(s_spec, s_sequence, set(n + d for d in D), iw))
                coefficient = product(constants.omega[j] for j in J if j not in D) * product(constants.nu[d] for d in D)
                s_total = s_total + coefficient * piece

        weight = product(constants.mu[j] for j in J) * product(constants.nu[l] ** 2 for l in range(N) if l not in in_j)
        value = as_scalar(sign * weight * r_value * s_total)
        terms.append(BlockExpansionTerm(
            J=tuple(j + 1 for j in J),
            sign=sign,
            r=r_value,
            s=s_plain,
            s_hat=s_hat,
            weight=as_scalar(weight),
            value=value,
        ))
        logger.debug("block term J=%s sign=%s", tuple(j + 1 for j in J), sign)
    return terms


def _raised_matrix(spec: NodeSpec, sequence: RowSequence, raised: set, width: int) -> ExactMatrix:
    """Confluent rows in sequence order with the top row of every raised node moved up one order."""
    rows = []
    for index, k in sequence.entries:
        node = spec.nodes[index]
        order = k + 1 if index in raised and k == node.multiplicity - 1 else k
        rows.append(confvand_row(node.x, order, width))
    return ExactMatrix(rows, width)


def sigma1_by_blocks(
    config: ProblemConfig,
    convention: Convention = G1Convention.EXACT,
) -> Tuple[Scalar, List[BlockExpansionTerm]]:
    terms = block_expansion(config, convention)
    return as_scalar(sum((term.value for term in terms), ZERO)), terms


# ---------------------------------------------------------------------------
# Factorizations (n = 3)
# ---------------------------------------------------------------------------

def _require_n3(config: ProblemConfig) -> None:
    if config.n != 3:
        raise InvalidConfig(f"the closed-form factorization is stated for n = 3, got n={config.n}")


def _pair_product(values: Sequence[Scalar], power: int) -> Scalar:
    return product((values[a] - values[b]) ** power for a, b in combinations(range(len(values)), 2))


def _partial_sums(config: ProblemConfig, j: int) -> Tuple[Scalar, Scalar]:
    """(sum_i 1/(q_j - t_i), sum_{l != j} 1/(q_j - q_l)), j 0-based."""
    qj = config.q[j]
    s_t = sum((ONE / (qj - t) for t in config.t), ZERO)
    s_q = sum((ONE / (qj - ql) for l, ql in enumerate(config.q) if l != j), ZERO)
    return s_t, s_q


def chi1(config: ProblemConfig) -> Scalar:
    return as_scalar(_pair_product(config.q, 6) * _pair_product(config.t, 2))


def phi1(config: ProblemConfig, constants: DerivedConstants) -> Scalar:
    total: Scalar = ZERO
    for j, qj in enumerate(config.q):
        others = [ql for l, ql in enumerate(config.q) if l != j]
        bracket = (
            _pair_product(others, 2)
            * product(qj - ql for ql in others)
            * product(qj - t for t in config.t)
        )
        s_t, s_q = _partial_sums(config, j)
        total = total + bracket * (constants.p_hat[j] + s_q - 2 * s_t)
    return as_scalar(total)


def chi_phi_factorization(
    config: ProblemConfig,
    convention: Convention = G1Convention.EXACT,
    sigma1: Optional[Scalar] = None,
) -> Tuple[Scalar, Scalar]:
    """(chi_1, phi_1) with sigma_1 = chi_1 * phi_1; FactorizationMismatch if the product disagrees."""
    _require_n3(config)
    constants = derive_constants(config, convention)
    chi, phi = chi1(config), phi1(config, constants)
    sigma1 = sigma1_by_elimination(config, convention) if sigma1 is None else sigma1
    if chi * phi != sigma1:
        raise FactorizationMismatch(f"chi_1 * phi_1 = {chi * phi} but sigma_1 = {sigma1}")
    return chi, phi


# ---------------------------------------------------------------------------
# Minors of M_b
# ---------------------------------------------------------------------------

def sigma_k(config: ProblemConfig, k: int, convention: Convention = G1Convention.EXACT,
            mb: Optional[ExactMatrix] = None) -> Scalar:
    """det of M_b without its k-th column (1-based): k = 1 gives sigma_1."""
    mb = mb if mb is not None else augmented_matrix(config, convention)
    return det(mb.delete_columns(k - 1))


def sigma_minors(
    config: ProblemConfig,
    ks: Optional[Iterable[int]] = None,
    convention: Convention = G1Convention.EXACT,
) -> Dict[int, Scalar]:
    mb = augmented_matrix(config, convention)
    ks = list(range(1, mb.ncols + 1)) if ks is None else list(ks)
    out = {}
    for k in ks:
        out[k] = sigma_k(config, k, convention, mb)
        logger.debug("sigma_%s computed", k)
    return out


def pinned_ratio_constants(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Dict[int, Scalar]:
    """
    For every row of M_1 with a single nonzero entry e in column c (1-based), sigma_{c+1}/sigma_1
    equals (-1)^(c+1) b_r / e.
    """
    system = build_t_system(config, convention)
    matrix, rhs = system.t_matrix, system.t_rhs
    out: Dict[int, Scalar] = {}
    for r in range(matrix.nrows):
        support = [c for c in range(matrix.ncols) if matrix[r, c] != 0]
        if len(support) != 1:
            continue
        c = support[0] + 1
        sign = 1 if (c + 1) % 2 == 0 else -1
        out[c + 1] = as_scalar(sign * rhs[r] / matrix[r, support[0]])
    return out


def pinned_ratios(
    config: ProblemConfig,
    convention: Convention = G1Convention.EXACT,
    sigma1: Optional[Scalar] = None,
) -> Dict[int, Tuple[Scalar, Scalar]]:
    """k -> (expected constant, sigma_k / sigma_1) for every single-entry row."""
    sigma1 = sigma1_by_elimination(config, convention) if sigma1 is None else sigma1
    if sigma1 == 0:
        raise DegenerateLinear("sigma_1 vanishes: ratios are undefined on V_1")
    expected = pinned_ratio_constants(config, convention)
    minors = sigma_minors(config, expected.keys(), convention)
    return {k: (expected[k], as_scalar(minors[k] / sigma1)) for k in expected}


def cramer_coordinates(
    config: ProblemConfig,
    k: int,
    convention: Convention = G1Convention.EXACT,
) -> Tuple[Scalar, Scalar]:
    """
    (x from minors, x from solving) for the unknown in M_1 column k-1: x = (-1)^k sigma_k / sigma_1.
    Only defined off V_1.
    """
    _check_k(config, k, allow_pinned=True)
    system = build_t_system(config, convention)
    sigma1 = det(system.t_matrix)
    if sigma1 == 0:
        raise DegenerateLinear("sigma_1 vanishes: Cramer's rule needs a point off V_1")
    mb = system.t_matrix.insert_column(0, system.t_rhs)
    sign = 1 if k % 2 == 0 else -1
    from_minors = as_scalar(sign * sigma_k(config, k, convention, mb) / sigma1)
    solved = solve(system.t_matrix, system.t_rhs).particular[k - 2]
    return from_minors, solved


# ---------------------------------------------------------------------------
# sigma_f
# ---------------------------------------------------------------------------

def sigma_f_matrix(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> ExactMatrix:
    n = config.n
    return m1_matrix(config, convention).delete_rows(first_common_row(n)).delete_columns(sigma_f_column(n))


def sigma_f_by_elimination(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Scalar:
    return det(sigma_f_matrix(config, convention))


def chi_f(config: ProblemConfig) -> Scalar:
    _require_n3(config)
    q1, rest = config.q[0], config.q[1:]
    return as_scalar(
        _pair_product(config.t, 2)
        * product(q1 - t for t in config.t)
        * product((q1 - ql) ** 6 for ql in rest)
        * _pair_product(rest, 8)
    )


def phi_f(config: ProblemConfig, constants: DerivedConstants) -> Scalar:
    _require_n3(config)
    q1, rest = config.q[0], config.q[1:]
    t_pairs = sum(((q1 - a) * (q1 - b) for a, b in combinations(config.t, 2)), ZERO)
    q_pairs = sum(((q1 - a) * (q1 - b) for a, b in combinations(rest, 2)), ZERO)
    q_prod = product(q1 - ql for ql in rest)
    t_prod = product(q1 - t for t in config.t)
    return as_scalar(2 * q_prod * t_pairs - t_prod * (q_pairs + constants.p_hat[0] * q_prod))


def sigma_f_by_blocks(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Scalar:
    """
    The minor is block lower-triangular: -ConfVand(t^(1), q^(2)) times the I minor of J = {1}.
    """
    _require_n3(config)
    constants = derive_constants(config, convention)
    terms = block_expansion(config, convention, constants)
    first = next(term for term in terms if term.J == (1,))
    n, N = config.n, config.N
    upper_spec = NodeSpec(tuple(Node(t, 1) for t in config.t) + tuple(Node(q, 2) for q in config.q))
    upper_sequence = RowSequence(
        tuple((i, 0) for i in range(n))
        + tuple((n + j, 0) for j in range(N))
        + tuple((n + j, 1) for j in range(N))
    )
    # the pin row sits first with its 1 in the last column of the H block
    upper = -inversion_sign(upper_sequence) * confvand_det(upper_spec)
    lower = product(constants.nu[l] ** 2 for l in range(1, config.N)) * (
        constants.omega[0] * first.s + constants.nu[0] * first.s_hat
    )
    return as_scalar(upper * lower)


def sigma_f_minor(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Scalar:
    """sigma_f by elimination; for n = 3 also cross-checked against the block form and chi_f * phi_f."""
    value = sigma_f_by_elimination(config, convention)
    if config.n == 3:
        blocks = sigma_f_by_blocks(config, convention)
        factored = chi_f(config) * phi_f(config, derive_constants(config, convention))
        if blocks != value or factored != value:
            raise FactorizationMismatch(f"sigma_f = {value}, blocks give {blocks}, chi_f * phi_f = {factored}")
    return value


# ---------------------------------------------------------------------------
# Degree probes
# ---------------------------------------------------------------------------

def probe_values(config: ProblemConfig, variable: str, count: int) -> List[Fraction]:
    """Integers from PROBE_START on, skipping any that collide with t or q."""
    taken = set(config.t) | set(config.q)
    values: List[Fraction] = []
    x = PROBE_START
    while len(values) < count:
        candidate = Fraction(x)
        if variable[0] == "p" or candidate not in taken:
            values.append(candidate)
        x += 1
    return values


def interpolate_exact(
    f: Callable[[Scalar], Scalar],
    xs: Sequence[Scalar],
    checks: Sequence[Scalar],
) -> Poly:
    """Interpolates f through xs and confirms the interpolant at every check node."""
    poly = Poly.interpolate(list(xs), [f(x) for x in xs])
    for x in checks:
        if poly(x) != f(x):
            raise InterpolationInconsistent(
                f"interpolant of degree {poly.degree} through {len(xs)} nodes misses the check node {x}"
            )
    return poly


def degree_probe(
    f: Callable[[ProblemConfig], Scalar],
    config: ProblemConfig,
    variable: str,
    samples: int,
) -> DegreeProbe:
    """Degree and leading coefficient of f in one coordinate, by exact interpolation."""
    values = probe_values(config, variable, samples + DEGREE_PROBE_EXTRA_SAMPLES)
    poly = interpolate_exact(
        lambda x: f(config.with_value(variable, x)),
        values[:samples],
        values[samples:],
    )
    logger.info("degree probe %s: degree %s from %s samples", variable, poly.degree, samples)
    return DegreeProbe(variable=variable, degree=poly.degree, leading_coefficient=poly.leading_coefficient, samples=samples)


def expected_sigma1_degree(n: int) -> int:
    """deg_{q_1} sigma_1 for n >= 3. At n = 2, sigma_1 = -(t_1 - t_2)^2 does not involve q_1."""
    return 23 * n - 45


# ---------------------------------------------------------------------------
# Intersection of V_1 and V-hat in the (p_1, p_2) plane
# ---------------------------------------------------------------------------

def rank_profile(config: ProblemConfig, convention: Convention = G1Convention.EXACT) -> Tuple[int, int]:
    system = build_t_system(config, convention)
    return rank(system.t_matrix), rank(system.t_matrix.insert_column(0, system.t_rhs))


def _p1_line(base: ProblemConfig, convention: Convention) -> Tuple[Scalar, Scalar]:
    """p_1*(p_2) = u + v p_2 solving sigma_1 = 0; sigma_1 is affine in p_1 and p_2."""
    def sigma(p1: Scalar, p2: Scalar) -> Scalar:
        return sigma1_by_elimination(base.with_p(1, p1).with_p(2, p2), convention)

    def root(p2: Scalar) -> Scalar:
        s0, s1 = sigma(ZERO, p2), sigma(ONE, p2)
        if s1 == s0:
            raise DegenerateLinear(f"sigma_1 does not depend on p1 at p2 = {p2}")
        return -s0 / (s1 - s0)

    u = root(ZERO)
    v = root(ONE) - u
    check = Fraction(2)
    if sigma(u + v * check, check) != 0:
        raise InterpolationInconsistent("sigma_1 = 0 is not a line in the (p1, p2) plane")
    return as_scalar(u), as_scalar(v)


def certify_point(
    config: ProblemConfig,
    k: int,
    convention: Convention = G1Convention.EXACT,
) -> IntersectionPoint:
    size = config.system_size
    system = build_t_system(config, convention)
    mb = system.t_matrix.insert_column(0, system.t_rhs)
    rank_m1 = rank(system.t_matrix)
    rank_mb = rank(mb)
    s1 = ZERO if rank_m1 < size else det(system.t_matrix)
    sk = sigma_k(config, k, convention, mb)
    sf = sigma_f_by_elimination(config, convention)
    reasons = []
    if s1 != 0:
        reasons.append("sigma_1 does not vanish")
    if sk != 0:
        reasons.append(f"sigma_{k} does not vanish")
    if rank_m1 != size - 1:
        reasons.append(f"rank(M_1) = {rank_m1}, expected {size - 1}")
    if rank_mb != rank_m1:
        reasons.append(f"rank(M_b) = {rank_mb} > rank(M_1): system inconsistent (Cramer factor of column {k - 1})")
    if sf == 0:
        reasons.append("sigma_f vanishes: the point lies on W")
    p1, p2 = config.p[0], config.p[1]
    return IntersectionPoint(
        p1=p1,
        p2=p2,
        radicand=radicand_of(p2) or radicand_of(p1),
        config=config,
        sigma1=s1,
        sigma_k=sk,
        rank_m1=rank_m1,
        rank_mb=rank_mb,
        sigma_f=sf,
        certified=not reasons,
        reason="; ".join(reasons),
    )


def intersect_v1_vhat(
    base: ProblemConfig,
    k: int = DEFAULT_INTERSECT_K,
    convention: Convention = G1Convention.EXACT,
    samples: int = INTERSECT_SAMPLES,
) -> IntersectionResult:
    """
    Fixes everything but (p_1, p_2), solves sigma_1 = 0 for p_1, interpolates
    F(p_2) = sigma_k(p_1*(p_2), p_2) exactly, factors F over Q and certifies every root
    of its linear and quadratic factors.
    """
    _check_k(base, k)
    if base.N < 2:
        raise InvalidConfig(f"the (p1, p2) plane needs at least two apparent singularities, n={base.n} has {base.N}")
    u, v = _p1_line(base, convention)

    def on_line(p2: Scalar) -> ProblemConfig:
        return base.with_p(1, as_scalar(u + v * p2)).with_p(2, p2)

    xs = [Fraction(x) for x in range(samples + INTERSECT_CHECK_SAMPLES)]
    polynomial = interpolate_exact(lambda p2: sigma_k(on_line(p2), k, convention), xs[:samples], xs[samples:])
    logger.info("intersect: F(p2) = sigma_%s along sigma_1 = 0 has degree %s", k, polynomial.degree)
    if polynomial.is_zero():
        raise DegenerateLinear(f"sigma_{k} vanishes identically along sigma_1 = 0")

    _, factors = factor_rational(polynomial)
    candidates: List[Scalar] = []
    degrees: List[int] = []
    for factor, _ in factors:
        degrees.append(factor.degree)
        if factor.degree == 1:
            candidates.append(as_scalar(-factor.coefficient(0) / factor.coefficient(1)))
        elif factor.degree == 2:
            candidates.extend(quadratic_roots(factor))
        else:
            logger.warning("intersect: factor of degree %s left uncertified", factor.degree)

    points = [certify_point(on_line(p2), k, convention) for p2 in candidates]
    logger.info("intersect: %s candidate(s), %s certified", len(points), sum(1 for p in points if p.certified))
    return IntersectionResult(
        k=k,
        p1_line=(u, v),
        sigma1_p1_degree=1,
        polynomial=polynomial,
        factor_degrees=sorted(degrees),
        points=points,
    )


# ---------------------------------------------------------------------------
# Blow-up
# ---------------------------------------------------------------------------

def _chart_coordinates(config: ProblemConfig, x2: Scalar) -> Tuple[Tuple[Scalar, ...], Optional[Tuple[Scalar, ...]]]:
    tail = tuple(config.q[1:]) + tuple(config.p[1:])
    u1 = (ZERO, x2) + tail
    u2 = (as_scalar(ONE / x2), ZERO) + tail if x2 != 0 else None
    return u1, u2


def blowup_family(
    point: ProblemConfig,
    k: int = DEFAULT_INTERSECT_K,
    convention: Convention = G1Convention.EXACT,
    parameters: Sequence[Scalar] = BLOWUP_SAMPLE_PARAMETERS,
    order: Optional[int] = None,
) -> BlowupReport:
    """
    The affine family of equations over a point of (V_1 and V-hat) minus W, sampled at a few
    values of its free coordinate, each member verified and placed in both blow-up charts.
    """
    _check_k(point, k)
    size = point.system_size
    rank_m1, rank_mb = rank_profile(point, convention)
    if rank_mb > rank_m1:
        raise RankMismatch(f"rank(M_b) = {rank_mb} > rank(M_1) = {rank_m1}: no solution over this point")
    if rank_m1 == size:
        raise OutsideOpenStratum("M_1 is nonsingular: the point is not on V_1")
    sf = sigma_f_by_elimination(point, convention)
    if sf == 0:
        raise OutsideOpenStratum("sigma_f vanishes: the point is outside the open stratum")

    family = solve_connection(point, convention)
    if not isinstance(family, AffineFamily):
        raise OutsideOpenStratum("system (T) has a unique solution at this point")

    labels = column_labels(point.n)
    members: List[FamilyMember] = []
    for s in parameters:
        values = [as_scalar(s)] + [ZERO] * (family.dimension - 1)
        vector = family.member(values)
        equation = equation_from_vector(point, family.G, vector)
        report = verify_apparent_all(equation, point, order)
        u1, u2 = _chart_coordinates(point, vector[k - 2])
        members.append(FamilyMember(
            parameter=as_scalar(s),
            vector=vector,
            equation=equation,
            report=report,
            chart_u1=u1,
            chart_u2=u2,
        ))
    logger.info(
        "blowup: free coordinate %s, %s member(s), all verified=%s",
        family.free_labels[0], len(members), all(m.report.passed for m in members),
    )
    return BlowupReport(
        k=k,
        k_label=labels[k - 2],
        free_column=family.free_columns[0],
        free_label=family.free_labels[0],
        rank_m1=rank_m1,
        rank_mb=rank_mb,
        sigma_f=sf,
        family=family,
        members=members,
    )
