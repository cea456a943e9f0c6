"""
Assembles and solves the linear systems that fix G, H and I.

G is fixed by the exponent sums at the parabolic points and by G(q_j) = -1/eta_j.
H and I come from system (T): columns H_0..H_{8n-12} followed by I_0..I_{12n-18}, rows
grouped as the H block (pin at infinity, values at t_i, values and first derivatives at
q_j, the common rows) and the I block (pin at infinity, values at t_i, values and first
derivatives at q_j, the third rows).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..types import (
    AffineFamily,
    AssembledSystem,
    DerivedConstants,
    FuchsianEquation,
    G1Convention,
    Inconsistent,
    InvalidConfig,
    ProblemConfig,
    SingularGBlock,
    ValidationReport,
    Violation,
)
from .confvand import confvand_row, product
from .exact_core import (
    ONE,
    ZERO,
    ExactMatrix,
    Poly,
    Scalar,
    as_scalar,
    laurent_coefficients,
    rank,
    solve,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Sizes and labels
# ---------------------------------------------------------------------------

def h_width(n: int) -> int:
    return 8 * n - 11


def i_width(n: int) -> int:
    return 12 * n - 17


def g_width(n: int) -> int:
    return 4 * n - 5


def column_labels(n: int) -> List[str]:
    return [f"H{k}" for k in range(h_width(n))] + [f"I{k}" for k in range(i_width(n))]


def row_labels(n: int) -> List[str]:
    N = 3 * n - 5
    labels = ["H(inf)"]
    labels += [f"H(t{i})" for i in range(1, n + 1)]
    labels += [f"H(q{j})" for j in range(1, N + 1)]
    labels += [f"H'(q{j})" for j in range(1, N + 1)]
    labels += [f"common(q{j})" for j in range(1, N + 1)]
    labels += ["I(inf)"]
    labels += [f"I(t{i})" for i in range(1, n + 1)]
    labels += [f"I(q{j})" for j in range(1, N + 1)]
    labels += [f"I'(q{j})" for j in range(1, N + 1)]
    labels += [f"third(q{j})" for j in range(1, N + 1)]
    return labels


def h_row_count(n: int) -> int:
    return 1 + n + 3 * (3 * n - 5)


def psi_of(config: ProblemConfig) -> Poly:
    return Poly.from_roots(list(config.t) + list(config.q))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def exponent_sums(rho: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
    """(alpha, beta, gamma) = elementary symmetric functions of the three exponents."""
    a, b, c = (as_scalar(x) for x in rho)
    return a + b + c, a * b + a * c + b * c, a * b * c


def validate_config(config: ProblemConfig) -> ValidationReport:
    """Collects every violation; an empty report means the configuration is admissible."""
    violations: List[Violation] = []
    n, N = config.n, config.N
    if n < 2:
        violations.append(Violation("order", f"n must be at least 2, got {n}"))
        return ValidationReport(violations)
    if len(config.t) != n:
        violations.append(Violation("shape", f"expected {n} parabolic points t_i, got {len(config.t)}"))
    if len(config.rho) != n + 1:
        violations.append(Violation("shape", f"expected {n + 1} exponent triples, got {len(config.rho)}"))
    if len(config.q) != N:
        violations.append(Violation("shape", f"expected {N} apparent singularities q_j, got {len(config.q)}"))
    if len(config.p) != N:
        violations.append(Violation("shape", f"expected {N} parameters p_j, got {len(config.p)}"))
    if any(len(triple) != 3 for triple in config.rho):
        violations.append(Violation("shape", "every exponent entry must be a triple"))
    if violations:
        return ValidationReport(violations)

    named = [(f"t{i}", x) for i, x in enumerate(config.t, start=1)]
    named += [(f"q{j}", x) for j, x in enumerate(config.q, start=1)]
    for a in range(len(named)):
        for b in range(a + 1, len(named)):
            if named[a][1] == named[b][1]:
                violations.append(Violation("delta", f"Delta: coincidence {named[b][0]}={named[a][0]}"))

    finite_sum = sum((sum(triple, ZERO) for triple in config.rho[1:]), ZERO)
    infinite_sum = sum(config.rho[0], ZERO)
    fuchs = finite_sum - infinite_sum
    if fuchs != 2:
        violations.append(Violation(
            "fuchs",
            f"Fuchs relation fails: sum of finite exponents minus exponents at infinity is {fuchs}, expected 2",
        ))

    for i, triple in enumerate(config.rho):
        for a in range(3):
            for b in range(a + 1, 3):
                gap = triple[a] - triple[b]
                if isinstance(gap, Fraction) and gap.denominator == 1:
                    violations.append(Violation(
                        "exponents",
                        f"exponents at t_{i} differ by the integer {gap}",
                    ))

    violations.extend(_genericity_violations(config))
    return ValidationReport(violations)


def _genericity_violations(config: ProblemConfig) -> List[Violation]:
    """
    For l in {1, 2}: no choice of l exponents at every point (standard exponents -rho_0 at
    infinity) may sum to an integer. l = 3 is the Fuchs relation itself.
    """
    violations = []
    standard = [[-r for r in config.rho[0]]] + [list(triple) for triple in config.rho[1:]]
    for l in (1, 2):
        sums = {ZERO}
        for exponents in standard:
            total = sum(exponents, ZERO)
            options = exponents if l == 1 else [total - r for r in exponents]
            sums = {s + r for s in sums for r in options}
        integral = sorted(s for s in sums if isinstance(s, Fraction) and s.denominator == 1)
        if integral:
            violations.append(Violation(
                "genericity",
                f"a choice of exponents sums to the integer {integral[0]} (l = {l})",
            ))
    return violations


def ensure_valid(config: ProblemConfig) -> None:
    report = validate_config(config)
    if not report.passed:
        raise InvalidConfig("; ".join(report.messages()), report.violations)


# ---------------------------------------------------------------------------
# G block
# ---------------------------------------------------------------------------

def _p_products(config: ProblemConfig, j: int) -> Tuple[Scalar, Scalar]:
    """(A_j, Q_j) = (prod_i (q_j - t_i), prod_{l != j} (q_j - q_l)), j 0-based."""
    qj = config.q[j]
    a = product(qj - t for t in config.t)
    q = product(qj - ql for l, ql in enumerate(config.q) if l != j)
    return a, q


def _lambda(config: ProblemConfig, i: int) -> Scalar:
    ti = config.t[i]
    denominator = product(ti - tk for k, tk in enumerate(config.t) if k != i) * product(ti - ql for ql in config.q)
    return ONE / denominator


def build_g_system(config: ProblemConfig) -> Tuple[ExactMatrix, Tuple[Scalar, ...], List[str]]:
    """
    Rows: G_{4n-6} = 3 - alpha_0, G(t_i) = (3 - alpha_i)/lambda_i, G(q_j) = -P_j.
    The system has one more row than unknowns; the extra row holds by the Fuchs relation.
    """
    n = config.n
    width = g_width(n)
    rows, rhs, labels = [], [], []
    alpha = [exponent_sums(triple)[0] for triple in config.rho]
    rows.append(confvand_row(None, 0, width))
    rhs.append(3 - alpha[0])
    labels.append("G(inf)")
    for i, ti in enumerate(config.t):
        rows.append(confvand_row(ti, 0, width))
        rhs.append((3 - alpha[i + 1]) / _lambda(config, i))
        labels.append(f"G(t{i + 1})")
    for j, qj in enumerate(config.q):
        a, q = _p_products(config, j)
        rows.append(confvand_row(qj, 0, width))
        rhs.append(-(a * q))
        labels.append(f"G(q{j + 1})")
    return ExactMatrix(rows, width), tuple(as_scalar(x) for x in rhs), labels


def solve_g(config: ProblemConfig) -> Poly:
    matrix, rhs, _ = build_g_system(config)
    square = matrix.delete_rows(0)
    if rank(square) < square.ncols:
        raise SingularGBlock("the value rows of the G block are singular (repeated nodes)")
    solution = solve(square, rhs[1:])
    G = Poly(solution.particular)
    if G.coefficient(g_width(config.n) - 1) != rhs[0]:
        raise Inconsistent(
            f"leading coefficient of G is {G.coefficient(g_width(config.n) - 1)}, expected {rhs[0]} "
            "(Fuchs relation violated)"
        )
    return G


# ---------------------------------------------------------------------------
# Derived constants
# ---------------------------------------------------------------------------

def g1_closed_form(config: ProblemConfig, j: int) -> Scalar:
    """Order-0 Laurent coefficient of G/psi at q_j, j 1-based."""
    qj = config.q[j - 1]
    alpha = [exponent_sums(triple)[0] for triple in config.rho]
    total = sum(((3 - alpha[i + 1]) / (qj - ti) for i, ti in enumerate(config.t)), ZERO)
    total = total - sum((ONE / (qj - ql) for l, ql in enumerate(config.q) if l != j - 1), ZERO)
    return as_scalar(total)


def derive_constants(
    config: ProblemConfig,
    convention: Union[G1Convention, str] = G1Convention.EXACT,
    G: Optional[Poly] = None,
) -> DerivedConstants:
    convention = G1Convention(convention)
    sums = [exponent_sums(triple) for triple in config.rho]
    lam = tuple(_lambda(config, i) for i in range(config.n))

    if convention is G1Convention.EXACT:
        G = G if G is not None else solve_g(config)
        psi = psi_of(config)
        g1 = tuple(laurent_coefficients(G, psi, qj, 0, 0)[0] for qj in config.q)
    else:
        g1 = tuple(ZERO for _ in config.q)

    eta, mu, mu_tilde, nu, nu_tilde, p_hat, omega = [], [], [], [], [], [], []
    for j, qj in enumerate(config.q):
        a, q = _p_products(config, j)
        big_p = a * q
        s = sum((ONE / (qj - t) for t in config.t), ZERO) + sum(
            (ONE / (qj - ql) for l, ql in enumerate(config.q) if l != j), ZERO
        )
        mu_j = ONE / big_p ** 2
        nu_j = ONE / big_p ** 3
        nu_t = -3 * nu_j * s
        hat = config.p[j] + g1[j]
        eta.append(ONE / big_p)
        mu.append(mu_j)
        mu_tilde.append(-2 * mu_j * s)
        nu.append(nu_j)
        nu_tilde.append(nu_t)
        p_hat.append(hat)
        omega.append(hat * nu_j + nu_t)

    return DerivedConstants(
        convention=convention,
        alpha=tuple(s[0] for s in sums),
        beta=tuple(s[1] for s in sums),
        gamma=tuple(s[2] for s in sums),
        lam=lam,
        eta=tuple(eta),
        mu=tuple(mu),
        mu_tilde=tuple(mu_tilde),
        nu=tuple(nu),
        nu_tilde=tuple(nu_tilde),
        g1=g1,
        p_hat=tuple(p_hat),
        omega=tuple(omega),
    )


# ---------------------------------------------------------------------------
# System (T)
# ---------------------------------------------------------------------------

def _t_rows(config: ProblemConfig, constants: DerivedConstants) -> List[List[Scalar]]:
    n = config.n
    hw, iw = h_width(n), i_width(n)
    h_zero, i_zero = [ZERO] * hw, [ZERO] * iw
    rows: List[List[Scalar]] = []

    rows.append(confvand_row(None, 0, hw) + i_zero)
    for ti in config.t:
        rows.append(confvand_row(ti, 0, hw) + i_zero)
    for qj in config.q:
        rows.append(confvand_row(qj, 0, hw) + i_zero)
    for qj in config.q:
        rows.append(confvand_row(qj, 1, hw) + i_zero)
    for j, qj in enumerate(config.q):
        h_part = [constants.mu[j] * x for x in confvand_row(qj, 2, hw)]
        i_part = [constants.nu[j] * x for x in confvand_row(qj, 2, iw)]
        rows.append(h_part + i_part)

    rows.append(h_zero + confvand_row(None, 0, iw))
    for ti in config.t:
        rows.append(h_zero + confvand_row(ti, 0, iw))
    for qj in config.q:
        rows.append(h_zero + confvand_row(qj, 0, iw))
    for qj in config.q:
        rows.append(h_zero + confvand_row(qj, 1, iw))
    for j, qj in enumerate(config.q):
        second = confvand_row(qj, 2, iw)
        third = confvand_row(qj, 3, iw)
        rows.append(h_zero + [constants.omega[j] * a + constants.nu[j] * b for a, b in zip(second, third)])
    return rows


def rhs_vector(config: ProblemConfig, constants: Optional[DerivedConstants] = None) -> Tuple[Scalar, ...]:
    constants = constants or derive_constants(config)
    n = config.n
    alpha, beta, gamma = constants.alpha, constants.beta, constants.gamma
    rhs: List[Scalar] = [beta[0] - alpha[0] + 1]
    rhs += [(beta[i + 1] - alpha[i + 1] + 1) / constants.lam[i] ** 2 for i in range(n)]
    rhs += [ZERO for _ in config.q]
    rhs += [config.p[j] / constants.mu[j] for j in range(config.N)]
    rhs += [
        -config.p[j] * (constants.p_hat[j] + constants.mu_tilde[j] / constants.mu[j])
        for j in range(config.N)
    ]
    rhs.append(-gamma[0])
    rhs += [-gamma[i + 1] / constants.lam[i] ** 3 for i in range(n)]
    rhs += [ZERO for _ in range(3 * config.N)]
    return tuple(as_scalar(x) for x in rhs)


def build_t_system(
    config: ProblemConfig,
    convention: Union[G1Convention, str] = G1Convention.EXACT,
    constants: Optional[DerivedConstants] = None,
) -> AssembledSystem:
    """Builds M_1 and b. Does not validate: degenerate configurations still assemble."""
    g_matrix, g_rhs, g_labels = build_g_system(config)
    constants = constants or derive_constants(config, convention)
    size = config.system_size
    matrix = ExactMatrix(_t_rows(config, constants), size)
    logger.debug("assembled system (T) of size %d for n=%d", size, config.n)
    return AssembledSystem(
        g_matrix=g_matrix,
        g_rhs=g_rhs,
        t_matrix=matrix,
        t_rhs=rhs_vector(config, constants),
        column_labels=column_labels(config.n),
        row_labels=row_labels(config.n),
        g_row_labels=g_labels,
    )


def augmented_matrix(
    config: ProblemConfig,
    convention: Union[G1Convention, str] = G1Convention.EXACT,
    constants: Optional[DerivedConstants] = None,
) -> ExactMatrix:
    """M_b = [b | M_1]."""
    system = build_t_system(config, convention, constants)
    return system.t_matrix.insert_column(0, system.t_rhs)


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------

def equation_from_vector(config: ProblemConfig, G: Poly, vector: Sequence[Scalar]) -> FuchsianEquation:
    hw = h_width(config.n)
    return FuchsianEquation(
        n=config.n,
        t=tuple(config.t),
        q=tuple(config.q),
        G=G,
        H=Poly(vector[:hw]),
        I=Poly(vector[hw:]),
        psi=psi_of(config),
    )


def solve_connection(
    config: ProblemConfig,
    convention: Union[G1Convention, str] = G1Convention.EXACT,
) -> Union[FuchsianEquation, AffineFamily]:
    """
    Validates, solves G, then system (T). Returns the unique equation, or an AffineFamily
    when M_1 is singular and the system is still consistent. Raises Inconsistent otherwise.
    """
    ensure_valid(config)
    G = solve_g(config)
    constants = derive_constants(config, convention, G=G)
    system = build_t_system(config, convention, constants)
    solution = solve(system.t_matrix, system.t_rhs)
    if solution.is_unique:
        logger.info("system (T) is nonsingular for n=%d; equation determined", config.n)
        return equation_from_vector(config, G, solution.particular)
    labels = system.column_labels
    logger.info(
        "system (T) is singular but consistent: %d free column(s) %s",
        len(solution.free_columns),
        [labels[c] for c in solution.free_columns],
    )
    return AffineFamily(
        config=config,
        G=G,
        particular=solution.particular,
        null_basis=solution.null_basis,
        free_columns=solution.free_columns,
        free_labels=[labels[c] for c in solution.free_columns],
    )


# ---------------------------------------------------------------------------
# Round trip
# ---------------------------------------------------------------------------

@dataclass
class Residual:
    label: str
    value: Scalar


def laurent_residuals(
    equation: FuchsianEquation,
    config: ProblemConfig,
    convention: Union[G1Convention, str] = G1Convention.EXACT,
) -> List[Residual]:
    """
    Recomputes every defining condition from Laurent expansions of G/psi, H/psi^2 and
    I/psi^3. All residuals vanish for a solution of system (T).
    """
    convention = G1Convention(convention)
    n = config.n
    psi = equation.psi
    psi2, psi3 = psi * psi, psi * psi * psi
    sums = [exponent_sums(triple) for triple in config.rho]
    out: List[Residual] = []

    out.append(Residual("G(inf)", equation.G.coefficient(g_width(n) - 1) - (3 - sums[0][0])))
    out.append(Residual("H(inf)", equation.H.coefficient(h_width(n) - 1) - (sums[0][1] - sums[0][0] + 1)))
    out.append(Residual("I(inf)", equation.I.coefficient(i_width(n) - 1) + sums[0][2]))

    for i, ti in enumerate(config.t, start=1):
        alpha, beta, gamma = sums[i]
        g0 = laurent_coefficients(equation.G, psi, ti, -1, -1)[0]
        h0 = laurent_coefficients(equation.H, psi2, ti, -2, -2)[0]
        i0 = laurent_coefficients(equation.I, psi3, ti, -3, -3)[0]
        out.append(Residual(f"G(t{i})", g0 - (3 - alpha)))
        out.append(Residual(f"H(t{i})", h0 - (beta - alpha + 1)))
        out.append(Residual(f"I(t{i})", i0 + gamma))

    for j, qj in enumerate(config.q, start=1):
        g = laurent_coefficients(equation.G, psi, qj, -1, 0)
        h = laurent_coefficients(equation.H, psi2, qj, -2, 0)
        c = laurent_coefficients(equation.I, psi3, qj, -3, 0)
        g1 = g[1] if convention is G1Convention.EXACT else ZERO
        out.append(Residual(f"G(q{j})", g[0] + 1))
        out.append(Residual(f"H(q{j})", h[0]))
        out.append(Residual(f"H'(q{j})", h[1] - config.p[j - 1]))
        out.append(Residual(f"common(q{j})", g1 * h[1] + h[1] * h[1] + h[2] + c[2]))
        out.append(Residual(f"I(q{j})", c[0]))
        out.append(Residual(f"I'(q{j})", c[1]))
        out.append(Residual(f"third(q{j})", g1 * c[2] + h[1] * c[2] + c[3]))
    return out


def nonzero_residuals(residuals: Sequence[Residual]) -> Dict[str, Scalar]:
    return {r.label: r.value for r in residuals if r.value != 0}
