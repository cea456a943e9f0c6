"""
Local analysis of a solved equation: indicial data, Frobenius recursion and the
logarithmic obstructions at the apparent singularities.

At a finite point c write zeta = z - c and

    zeta * G/psi = sum_m P_m zeta^m,  zeta^2 * H/psi^2 = sum_m Q_m zeta^m,  zeta^3 * I/psi^3 = sum_m R_m zeta^m.

For w = sum_k a_k zeta^(k + rho) the coefficient of zeta^(s + rho) gives
f(s + rho) a_s = -sum_{k<s} F_{s-k}(k + rho) a_k with F_m(x) = P_m x(x-1) + Q_m x + R_m
(plus x(x-1)(x-2) when m = 0) and f = F_0, the indicial polynomial.
"""
from __future__ import annotations

import logging
from typing import Callable, List, Optional, Sequence, Tuple

from ..constants import APPARENT_EXPONENTS, DEFAULT_FROBENIUS_MARGIN
from ..types import (
    FrobeniusReport,
    FrobeniusSeries,
    FuchsianEquation,
    FuchsianError,
    IndicialData,
    NotASingularPoint,
    Obstruction,
    PointCheck,
    PointKind,
    ProblemConfig,
    WrongExponents,
)
from .exact_core import (
    ONE,
    ZERO,
    Poly,
    Scalar,
    factor_rational,
    laurent_coefficients,
    rational_roots,
    real_root_intervals,
)
from .system_builder import exponent_sums, g_width, h_width, i_width, psi_of

logger = logging.getLogger(__name__)

INFINITY_LABEL = "inf"

LocalCoefficients = Tuple[List[Scalar], List[Scalar], List[Scalar]]


def _point_label(equation: FuchsianEquation, point: Optional[Scalar]) -> str:
    if point is None:
        return INFINITY_LABEL
    for i, ti in enumerate(equation.t, start=1):
        if ti == point:
            return f"t{i}"
    for j, qj in enumerate(equation.q, start=1):
        if qj == point:
            return f"q{j}"
    return str(point)


def local_coefficients(equation: FuchsianEquation, point: Scalar, count: int) -> LocalCoefficients:
    """P_m, Q_m, R_m for m = 0..count-1 at a finite singular point."""
    if equation.psi(point) != 0:
        raise NotASingularPoint(f"{point} is not a root of psi")
    psi = equation.psi
    P = laurent_coefficients(equation.G, psi, point, -1, count - 2)
    Q = laurent_coefficients(equation.H, psi * psi, point, -2, count - 3)
    R = laurent_coefficients(equation.I, psi * psi * psi, point, -3, count - 4)
    return P, Q, R


def _indicial_from(g0: Scalar, h0: Scalar, i0: Scalar) -> Tuple[Scalar, Scalar, Scalar]:
    # rho(rho-1)(rho-2) + g0 rho(rho-1) + h0 rho + i0
    return g0 - 3, h0 - g0 + 2, i0


def indicial_at(equation: FuchsianEquation, point: Optional[Scalar]) -> IndicialData:
    """
    Indicial data at a root of psi, or at infinity when `point` is None (exponents in the
    w ~ z^rho convention, read off the leading coefficients of G, H and I).
    """
    if point is None:
        n = equation.n
        g0 = equation.G.coefficient(g_width(n) - 1)
        h0 = equation.H.coefficient(h_width(n) - 1)
        i0 = equation.I.coefficient(i_width(n) - 1)
    else:
        P, Q, R = local_coefficients(equation, point, 1)
        g0, h0, i0 = P[0], Q[0], R[0]
    c2, c1, c0 = _indicial_from(g0, h0, i0)
    cubic = Poly([c0, c1, c2, ONE])
    roots: List[Scalar] = []
    intervals: List[Tuple[Scalar, Scalar]] = []
    if cubic.is_rational():
        _, factors = factor_rational(cubic)
        for factor, multiplicity in factors:
            if factor.degree == 1:
                roots.extend([-factor.coefficient(0) / factor.coefficient(1)] * multiplicity)
        roots.sort()
        if len(roots) < 3:
            intervals = real_root_intervals(cubic)
    return IndicialData(
        label=_point_label(equation, point),
        point=point,
        g0=g0,
        h0=h0,
        i0=i0,
        coefficients=(c2, c1, c0),
        roots=roots,
        isolating_intervals=intervals,
    )


def check_log_obstructions(equation: FuchsianEquation, j: int) -> Tuple[Scalar, Scalar, Scalar]:
    """
    The three log-vanishing residuals at q_j (1-based):
    I_1, G_1 H_1 + H_1^2 + H_2 + I_2 and G_1 I_2 + H_1 I_2 + I_3.
    """
    qj = equation.q[j - 1]
    psi = equation.psi
    g = laurent_coefficients(equation.G, psi, qj, -1, 0)
    h = laurent_coefficients(equation.H, psi * psi, qj, -2, 0)
    c = laurent_coefficients(equation.I, psi * psi * psi, qj, -3, 0)
    if g[0] != -1 or h[0] != 0 or c[0] != 0:
        raise WrongExponents(
            f"q{j}: leading Laurent coefficients ({g[0]}, {h[0]}, {c[0]}) do not give exponents 0, 1, 3"
        )
    first = c[1]
    second = g[1] * h[1] + h[1] * h[1] + h[2] + c[2]
    third = g[1] * c[2] + h[1] * c[2] + c[3]
    return first, second, third


def _recursion(coefficients: LocalCoefficients, exponent: Scalar, order: int, point: Scalar) -> FrobeniusSeries:
    P, Q, R = coefficients

    def F(m: int, x: Scalar) -> Scalar:
        value = P[m] * x * (x - 1) + Q[m] * x + R[m]
        if m == 0:
            value = value + x * (x - 1) * (x - 2)
        return value

    if F(0, exponent) != 0:
        raise WrongExponents(f"{exponent} is not a root of the indicial polynomial at {point}")
    a: List[Scalar] = [ONE]
    resonant: List[int] = []
    for s in range(1, order + 1):
        rhs: Scalar = ZERO
        for k in range(s):
            if a[k] != 0:
                rhs = rhs - F(s - k, k + exponent) * a[k]
        leading = F(0, s + exponent)
        if leading == 0:
            if rhs != 0:
                raise Obstruction(s, rhs, exponent)
            resonant.append(s)
            a.append(ZERO)
        else:
            a.append(rhs / leading)
    return FrobeniusSeries(point=point, exponent=exponent, coefficients=a, resonant_steps=resonant)


def frobenius_series(equation: FuchsianEquation, point: Scalar, exponent: Scalar, order: int) -> FrobeniusSeries:
    """
    Coefficients a_0..a_order of the series with a_0 = 1. A resonant step whose
    consistency condition holds keeps its free coefficient at 0; otherwise Obstruction.
    """
    coefficients = local_coefficients(equation, point, order + 1)
    return _recursion(coefficients, exponent, order, point)


def default_order(margin: int = DEFAULT_FROBENIUS_MARGIN) -> int:
    return max(APPARENT_EXPONENTS) - min(APPARENT_EXPONENTS) + margin


# ---------------------------------------------------------------------------
# Whole-equation verification
# ---------------------------------------------------------------------------

def _vieta_check(equation: FuchsianEquation, point: Optional[Scalar], rho: Sequence[Scalar], kind: PointKind) -> PointCheck:
    data = indicial_at(equation, point)
    c2, c1, c0 = data.coefficients
    expected = exponent_sums(rho)
    found = (-c2, c1, -c0)
    passed = found == expected
    return PointCheck(
        label=data.label,
        kind=kind,
        passed=passed,
        expected=expected,
        found=found,
        exponents=list(data.roots),
        message="" if passed else "exponent symmetric functions differ from the configuration",
    )


def _apparent_check(equation: FuchsianEquation, config: ProblemConfig, j: int, order: int) -> PointCheck:
    qj = config.q[j - 1]
    label = f"q{j}"
    data = indicial_at(equation, qj)
    check = PointCheck(label=label, kind=PointKind.APPARENT, passed=False, exponents=list(data.roots))
    c2, c1, c0 = data.coefficients
    check.found = (-c2, c1, -c0)
    check.expected = (ONE * 4, ONE * 3, ZERO)
    if data.all_roots_rational:
        check.defect = sum(data.roots, ZERO) - 3
    if check.found != check.expected:
        check.message = "exponents are not 0, 1, 3"
        return check

    coefficients = local_coefficients(equation, qj, order + 1)
    check.h1 = coefficients[1][1]
    check.residuals = check_log_obstructions(equation, j)
    for exponent in APPARENT_EXPONENTS:
        try:
            _recursion(coefficients, ONE * exponent, order, qj)
        except Obstruction as exc:
            check.obstructions.append(f"exponent {exponent}: step {exc.step} residual {exc.residual}")

    problems = []
    if any(r != 0 for r in check.residuals):
        problems.append("logarithmic terms do not vanish")
    if check.obstructions:
        problems.append("Frobenius recursion is obstructed")
    if check.h1 != config.p[j - 1]:
        problems.append(f"H_1 = {check.h1} differs from p{j}")
    check.passed = not problems
    check.message = "; ".join(problems)
    return check


def _extra_singularities(equation: FuchsianEquation, config: ProblemConfig) -> List[PointCheck]:
    expected = psi_of(config)
    if equation.psi == expected:
        return []
    known = set(config.t) | set(config.q)
    checks = []
    if not equation.psi.is_rational():
        return [PointCheck(label="psi", kind=PointKind.EXTRA, passed=False, message="psi is not defined over Q")]
    for root in rational_roots(equation.psi):
        if root not in known:
            checks.append(PointCheck(
                label=str(root), kind=PointKind.EXTRA, passed=False,
                message=f"psi has the root {root} which is neither a t_i nor a q_j",
            ))
    _, factors = factor_rational(equation.psi)
    for factor, _ in factors:
        if factor.degree >= 2:
            checks.append(PointCheck(
                label=f"factor(deg {factor.degree})", kind=PointKind.EXTRA, passed=False,
                message=f"psi has an irreducible factor of degree {factor.degree}: singular points outside Q",
            ))
    if not checks:
        checks.append(PointCheck(label="psi", kind=PointKind.EXTRA, passed=False,
                                 message="psi does not match the configuration"))
    return checks


def _guarded(label: str, kind: PointKind, run: Callable[[], PointCheck]) -> PointCheck:
    try:
        return run()
    except FuchsianError as exc:
        return PointCheck(label=label, kind=kind, passed=False, message=f"{type(exc).__name__}: {exc}")


def verify_apparent_all(
    equation: FuchsianEquation,
    config: ProblemConfig,
    order: Optional[int] = None,
) -> FrobeniusReport:
    """Checks exponents at infinity and every t_i, and apparentness at every q_j."""
    order = default_order() if order is None else order
    points: List[PointCheck] = [_guarded(
        INFINITY_LABEL, PointKind.INFINITY,
        lambda: _vieta_check(equation, None, config.rho[0], PointKind.INFINITY),
    )]
    for i, ti in enumerate(config.t, start=1):
        points.append(_guarded(
            f"t{i}", PointKind.PARABOLIC,
            lambda ti=ti, i=i: _vieta_check(equation, ti, config.rho[i], PointKind.PARABOLIC),
        ))
    for j in range(1, config.N + 1):
        points.append(_guarded(f"q{j}", PointKind.APPARENT, lambda j=j: _apparent_check(equation, config, j, order)))
    points.extend(_extra_singularities(equation, config))

    report = FrobeniusReport(points=points, order=order)
    if report.passed:
        logger.info("verify: all %d points pass at order %d", len(points), order)
    else:
        logger.warning("verify: %d failing point(s): %s", len(report.failures()), [p.label for p in report.failures()])
    return report
