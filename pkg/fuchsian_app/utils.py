"""Utility functions for data conversion."""
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .services.exact_core import ExactMatrix, Poly, QuadraticScalar, Scalar, split_square
from .types import (
    AffineFamily,
    BlockExpansionTerm,
    BlowupReport,
    DegreeProbe,
    DerivedConstants,
    DiscriminantReport,
    FamilyMember,
    FrobeniusReport,
    FuchsianEquation,
    IndicialData,
    IntersectionPoint,
    IntersectionResult,
    InvalidConfig,
    PointCheck,
    ProblemConfig,
    RunManifest,
)

_QUADRATIC = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>-?\d+)\s*\)\s*$"
)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def scalar_to_str(value: Scalar) -> str:
    """Exact text form: 'p/q', 'p', or 'a+b*sqrt(d)'."""
    if isinstance(value, QuadraticScalar):
        if value.b == 0:
            return str(value.a)
        sign = "-" if value.b < 0 else "+"
        return f"{value.a}{sign}{abs(value.b)}*sqrt({value.d})"
    if isinstance(value, int):
        return str(value)
    return str(Fraction(value))


def str_to_scalar(text: Any) -> Scalar:
    """Parse the text form back; JSON integers are accepted, floats are not."""
    if isinstance(text, bool) or isinstance(text, float):
        raise InvalidConfig(f"inexact value {text!r}: pass rationals as strings like '3/7'")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidConfig(f"cannot read a scalar from {text!r}")
    match = _QUADRATIC.match(text)
    if match:
        a = Fraction(match.group("a"))
        b = Fraction(match.group("b"))
        if match.group("sign") == "-":
            b = -b
        square, radicand = split_square(int(match.group("d")))
        b = b * square
        if radicand == 1 or b == 0:
            return a + b
        return QuadraticScalar(a, b, radicand)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfig(f"cannot read a scalar from {text!r}") from exc


def scalars_to_str(values: Sequence[Scalar]) -> List[str]:
    return [scalar_to_str(v) for v in values]


def optional_scalar(value: Optional[Scalar]) -> Optional[str]:
    return None if value is None else scalar_to_str(value)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def config_to_dict(config: ProblemConfig) -> Dict[str, Any]:
    """Convert ProblemConfig dataclass to dictionary."""
    return {
        'n': config.n,
        't': scalars_to_str(config.t),
        'rho': [scalars_to_str(triple) for triple in config.rho],
        'q': scalars_to_str(config.q),
        'p': scalars_to_str(config.p),
    }


def dict_to_config(data: Dict[str, Any]) -> ProblemConfig:
    """Convert dictionary to ProblemConfig dataclass."""
    missing = [key for key in ('n', 't', 'rho', 'q', 'p') if key not in data]
    if missing:
        raise InvalidConfig(f"configuration is missing {', '.join(missing)}")
    try:
        n = int(data['n'])
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"n must be an integer, got {data['n']!r}") from exc
    return ProblemConfig(
        n=n,
        t=tuple(str_to_scalar(x) for x in data['t']),
        rho=tuple(tuple(str_to_scalar(x) for x in triple) for triple in data['rho']),
        q=tuple(str_to_scalar(x) for x in data['q']),
        p=tuple(str_to_scalar(x) for x in data['p']),
    )


def derived_constants_to_dict(constants: DerivedConstants) -> Dict[str, Any]:
    return {
        'convention': constants.convention.value,
        'alpha': scalars_to_str(constants.alpha),
        'beta': scalars_to_str(constants.beta),
        'gamma': scalars_to_str(constants.gamma),
        'lambda': scalars_to_str(constants.lam),
        'eta': scalars_to_str(constants.eta),
        'mu': scalars_to_str(constants.mu),
        'mu_tilde': scalars_to_str(constants.mu_tilde),
        'nu': scalars_to_str(constants.nu),
        'nu_tilde': scalars_to_str(constants.nu_tilde),
        'g1': scalars_to_str(constants.g1),
        'p_hat': scalars_to_str(constants.p_hat),
        'omega': scalars_to_str(constants.omega),
    }


# ---------------------------------------------------------------------------
# Polynomials, matrices and equations
# ---------------------------------------------------------------------------

def poly_to_list(poly: Poly) -> List[str]:
    """Coefficients from low to high degree."""
    return scalars_to_str(poly.coeffs)


def list_to_poly(values: Sequence[Any]) -> Poly:
    return Poly(str_to_scalar(v) for v in values)


def matrix_to_rows(matrix: ExactMatrix) -> List[List[str]]:
    return [scalars_to_str(row) for row in matrix.rows()]


def equation_to_dict(equation: FuchsianEquation) -> Dict[str, Any]:
    """Convert FuchsianEquation dataclass to dictionary."""
    return {
        'n': equation.n,
        't': scalars_to_str(equation.t),
        'q': scalars_to_str(equation.q),
        'G': poly_to_list(equation.G),
        'H': poly_to_list(equation.H),
        'I': poly_to_list(equation.I),
        'psi': poly_to_list(equation.psi),
    }


def dict_to_equation(data: Dict[str, Any]) -> FuchsianEquation:
    """Convert dictionary to FuchsianEquation dataclass."""
    missing = [key for key in ('n', 't', 'q', 'G', 'H', 'I', 'psi') if key not in data]
    if missing:
        raise InvalidConfig(f"equation is missing {', '.join(missing)}")
    return FuchsianEquation(
        n=int(data['n']),
        t=tuple(str_to_scalar(x) for x in data['t']),
        q=tuple(str_to_scalar(x) for x in data['q']),
        G=list_to_poly(data['G']),
        H=list_to_poly(data['H']),
        I=list_to_poly(data['I']),
        psi=list_to_poly(data['psi']),
    )


def family_to_dict(family: AffineFamily) -> Dict[str, Any]:
    return {
        'dimension': family.dimension,
        'G': poly_to_list(family.G),
        'particular': scalars_to_str(family.particular),
        'null_basis': [scalars_to_str(v) for v in family.null_basis],
        'free_columns': list(family.free_columns),
        'free_labels': list(family.free_labels),
    }


# ---------------------------------------------------------------------------
# Frobenius
# ---------------------------------------------------------------------------

def indicial_to_dict(data: IndicialData) -> Dict[str, Any]:
    return {
        'label': data.label,
        'point': optional_scalar(data.point),
        'g0': scalar_to_str(data.g0),
        'h0': scalar_to_str(data.h0),
        'i0': scalar_to_str(data.i0),
        'coefficients': scalars_to_str(data.coefficients),
        'roots': scalars_to_str(data.roots),
        'isolating_intervals': [scalars_to_str(pair) for pair in data.isolating_intervals],
    }


def point_check_to_dict(check: PointCheck) -> Dict[str, Any]:
    result = {
        'label': check.label,
        'kind': check.kind.value,
        'passed': check.passed,
        'exponents': scalars_to_str(check.exponents),
        'message': check.message,
    }
    if check.expected is not None:
        result['expected'] = scalars_to_str(check.expected)
    if check.found is not None:
        result['found'] = scalars_to_str(check.found)
    if check.defect is not None:
        result['defect'] = scalar_to_str(check.defect)
    if check.residuals is not None:
        result['residuals'] = scalars_to_str(check.residuals)
    if check.h1 is not None:
        result['h1'] = scalar_to_str(check.h1)
    if check.obstructions:
        result['obstructions'] = list(check.obstructions)
    return result


def frobenius_report_to_dict(report: FrobeniusReport) -> Dict[str, Any]:
    return {
        'passed': report.passed,
        'order': report.order,
        'points': [point_check_to_dict(p) for p in report.points],
    }


# ---------------------------------------------------------------------------
# Discriminant
# ---------------------------------------------------------------------------

def term_to_dict(term: BlockExpansionTerm) -> Dict[str, Any]:
    return {
        'J': list(term.J),
        'sign': term.sign,
        'r': scalar_to_str(term.r),
        's': scalar_to_str(term.s),
        's_hat': optional_scalar(term.s_hat),
        'weight': scalar_to_str(term.weight),
        'value': scalar_to_str(term.value),
    }


def degree_probe_to_dict(probe: DegreeProbe) -> Dict[str, Any]:
    return {
        'variable': probe.variable,
        'degree': probe.degree,
        'leading_coefficient': scalar_to_str(probe.leading_coefficient),
        'samples': probe.samples,
    }


def intersection_point_to_dict(point: IntersectionPoint) -> Dict[str, Any]:
    return {
        'p1': scalar_to_str(point.p1),
        'p2': scalar_to_str(point.p2),
        'radicand': point.radicand,
        'sigma1': scalar_to_str(point.sigma1),
        'sigma_k': scalar_to_str(point.sigma_k),
        'rank_m1': point.rank_m1,
        'rank_mb': point.rank_mb,
        'sigma_f': scalar_to_str(point.sigma_f),
        'certified': point.certified,
        'reason': point.reason,
        'config': config_to_dict(point.config),
    }


def intersection_result_to_dict(result: IntersectionResult) -> Dict[str, Any]:
    return {
        'k': result.k,
        'p1_line': scalars_to_str(result.p1_line),
        'sigma1_p1_degree': result.sigma1_p1_degree,
        'polynomial': poly_to_list(result.polynomial),
        'degree': result.polynomial.degree,
        'factor_degrees': list(result.factor_degrees),
        'points': [intersection_point_to_dict(p) for p in result.points],
        'certified': len(result.certified_points),
    }


def family_member_to_dict(member: FamilyMember) -> Dict[str, Any]:
    return {
        'parameter': scalar_to_str(member.parameter),
        'equation': equation_to_dict(member.equation),
        'verify': frobenius_report_to_dict(member.report),
        'chart_u1': scalars_to_str(member.chart_u1),
        'chart_u2': None if member.chart_u2 is None else scalars_to_str(member.chart_u2),
    }


def blowup_report_to_dict(report: BlowupReport) -> Dict[str, Any]:
    return {
        'k': report.k,
        'k_label': report.k_label,
        'free_column': report.free_column,
        'free_label': report.free_label,
        'rank_m1': report.rank_m1,
        'rank_mb': report.rank_mb,
        'sigma_f': scalar_to_str(report.sigma_f),
        'all_verified': report.all_verified,
        'family': family_to_dict(report.family),
        'members': [family_member_to_dict(m) for m in report.members],
    }


def discriminant_report_to_dict(report: DiscriminantReport) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        'config': config_to_dict(report.config),
        'sigma1': scalar_to_str(report.sigma1),
        'rank_m1': report.rank_m1,
        'rank_mb': report.rank_mb,
        'checks': dict(report.checks),
    }
    if report.sigma1_blocks is not None:
        result['sigma1_blocks'] = scalar_to_str(report.sigma1_blocks)
        result['terms'] = [term_to_dict(t) for t in report.terms]
    if report.chi1 is not None:
        result['chi1'] = scalar_to_str(report.chi1)
        result['phi1'] = optional_scalar(report.phi1)
    if report.sigma_k:
        result['sigma_k'] = {str(k): scalar_to_str(v) for k, v in sorted(report.sigma_k.items())}
    if report.pinned_ratios:
        result['pinned_ratios'] = {
            str(k): {'expected': scalar_to_str(e), 'found': scalar_to_str(f)}
            for k, (e, f) in sorted(report.pinned_ratios.items())
        }
    if report.sigma_f is not None:
        result['sigma_f'] = scalar_to_str(report.sigma_f)
        result['chi_f'] = optional_scalar(report.chi_f)
        result['phi_f'] = optional_scalar(report.phi_f)
    if report.degrees:
        result['degrees'] = [degree_probe_to_dict(d) for d in report.degrees]
    if report.intersection is not None:
        result['intersection'] = intersection_result_to_dict(report.intersection)
    return result


# ---------------------------------------------------------------------------
# Manifest
# ---------------------------------------------------------------------------

def manifest_to_dict(manifest: RunManifest) -> Dict[str, Any]:
    """Convert RunManifest dataclass to dictionary."""
    return {
        'command': manifest.command,
        'config_source': manifest.config_source,
        'seed': manifest.seed,
        'output_path': manifest.output_path,
        'frobenius_order': manifest.frobenius_order,
        'samples': manifest.samples,
        'settings': dict(manifest.settings),
        'flags': dict(manifest.flags),
    }
