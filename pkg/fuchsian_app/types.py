from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple

if TYPE_CHECKING:
    from .services.exact_core import ExactMatrix, Poly, Scalar


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------

class G1Convention(str, Enum):
    """How the order-0 Laurent coefficient of G/psi at q_j enters system (T)."""
    EXACT = "exact"
    VANISHING = "vanishing"


class PointKind(str, Enum):
    INFINITY = "infinity"
    PARABOLIC = "parabolic"
    APPARENT = "apparent"
    EXTRA = "extra"


class Command(str, Enum):
    SOLVE = "solve"
    VERIFY = "verify"
    DISCRIMINANT = "discriminant"
    INTERSECT = "intersect"
    BLOWUP = "blowup"
    CONFVAND = "confvand"


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class FuchsianError(Exception):
    """Base class for engine errors. `code` is the CLI exit code."""
    code = 1


class ZeroDenominator(FuchsianError):
    pass


class NotSquare(FuchsianError):
    pass


class Inconsistent(FuchsianError):
    """rank(M) < rank([M|b])."""


class DuplicateNode(FuchsianError):
    pass


class FieldMismatch(FuchsianError):
    """Two quadratic scalars with different radicands met in one operation."""


class InvalidConfig(FuchsianError):
    def __init__(self, message: str, violations: Optional[List["Violation"]] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class SingularGBlock(FuchsianError):
    pass


class NotASingularPoint(FuchsianError):
    pass


class WrongExponents(FuchsianError):
    pass


class Obstruction(FuchsianError):
    """A resonant Frobenius step whose consistency condition fails."""

    def __init__(self, step: int, residual: "Scalar", exponent: "Scalar"):
        super().__init__(f"logarithmic obstruction at step {step} (exponent {exponent}): residual {residual}")
        self.step = step
        self.residual = residual
        self.exponent = exponent


class DegenerateLinear(FuchsianError):
    code = 2


class InterpolationInconsistent(FuchsianError):
    pass


class RankMismatch(FuchsianError):
    code = 2


class FactorizationMismatch(FuchsianError):
    pass


class OutsideOpenStratum(FuchsianError):
    code = 2


# ---------------------------------------------------------------------------
# Configuration and validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemConfig:
    """
    Parabolic points t_1..t_n (t_0 = infinity is implicit), exponents rho[i][k]
    for i = 0..n, apparent singularities q_1..q_N and parameters p_1..p_N.
    """
    n: int
    t: Tuple["Scalar", ...]
    rho: Tuple[Tuple["Scalar", "Scalar", "Scalar"], ...]
    q: Tuple["Scalar", ...]
    p: Tuple["Scalar", ...]

    @property
    def N(self) -> int:
        return 3 * self.n - 5

    @property
    def system_size(self) -> int:
        return 20 * self.n - 28

    def with_p(self, index: int, value: "Scalar") -> "ProblemConfig":
        """Replace p_index (1-based)."""
        p = list(self.p)
        p[index - 1] = value
        return replace(self, p=tuple(p))

    def with_q(self, index: int, value: "Scalar") -> "ProblemConfig":
        q = list(self.q)
        q[index - 1] = value
        return replace(self, q=tuple(q))

    def with_t(self, index: int, value: "Scalar") -> "ProblemConfig":
        t = list(self.t)
        t[index - 1] = value
        return replace(self, t=tuple(t))

    def with_value(self, variable: str, value: "Scalar") -> "ProblemConfig":
        """Substitute a named coordinate such as 'q1', 'p3' or 't2'."""
        name, index = variable[0], int(variable[1:])
        if name == "q":
            return self.with_q(index, value)
        if name == "p":
            return self.with_p(index, value)
        if name == "t":
            return self.with_t(index, value)
        raise ValueError(f"Unknown variable {variable!r}; expected t<i>, q<j> or p<j>")


@dataclass
class Violation:
    code: str
    message: str


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def messages(self) -> List[str]:
        return [v.message for v in self.violations]


# ---------------------------------------------------------------------------
# System builder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivedConstants:
    """
    Per parabolic point (index 0 is infinity for alpha/beta/gamma, lambdas start at t_1)
    and per apparent singularity. `g1` is the order-0 Laurent coefficient of G/psi at q_j
    under the active convention and `p_hat` = p + g1.
    """
    convention: G1Convention
    alpha: Tuple["Scalar", ...]
    beta: Tuple["Scalar", ...]
    gamma: Tuple["Scalar", ...]
    lam: Tuple["Scalar", ...]
    eta: Tuple["Scalar", ...]
    mu: Tuple["Scalar", ...]
    mu_tilde: Tuple["Scalar", ...]
    nu: Tuple["Scalar", ...]
    nu_tilde: Tuple["Scalar", ...]
    g1: Tuple["Scalar", ...]
    p_hat: Tuple["Scalar", ...]
    omega: Tuple["Scalar", ...]


@dataclass
class AssembledSystem:
    g_matrix: "ExactMatrix"
    g_rhs: Tuple["Scalar", ...]
    t_matrix: "ExactMatrix"
    t_rhs: Tuple["Scalar", ...]
    column_labels: List[str]
    row_labels: List[str]
    g_row_labels: List[str] = field(default_factory=list)


@dataclass
class FuchsianEquation:
    """w''' + (G/psi) w'' + (H/psi^2) w' + (I/psi^3) w = 0."""
    n: int
    t: Tuple["Scalar", ...]
    q: Tuple["Scalar", ...]
    G: "Poly"
    H: "Poly"
    I: "Poly"
    psi: "Poly"


@dataclass
class AffineFamily:
    """particular + sum_i s_i * null_basis[i]; s_i equals the coordinate at free_columns[i]."""
    config: ProblemConfig
    G: "Poly"
    particular: Tuple["Scalar", ...]
    null_basis: List[Tuple["Scalar", ...]]
    free_columns: List[int]
    free_labels: List[str]

    @property
    def dimension(self) -> int:
        return len(self.null_basis)

    def member(self, values: Sequence["Scalar"]) -> Tuple["Scalar", ...]:
        if len(values) != self.dimension:
            raise ValueError(f"expected {self.dimension} parameter values, got {len(values)}")
        vector = list(self.particular)
        for s, direction in zip(values, self.null_basis):
            vector = [x + s * d for x, d in zip(vector, direction)]
        return tuple(vector)


# ---------------------------------------------------------------------------
# Frobenius
# ---------------------------------------------------------------------------

@dataclass
class IndicialData:
    label: str
    point: Optional["Scalar"]
    g0: "Scalar"
    h0: "Scalar"
    i0: "Scalar"
    # monic cubic rho^3 + c2 rho^2 + c1 rho + c0
    coefficients: Tuple["Scalar", "Scalar", "Scalar"]
    roots: List["Scalar"] = field(default_factory=list)
    isolating_intervals: List[Tuple["Scalar", "Scalar"]] = field(default_factory=list)

    @property
    def all_roots_rational(self) -> bool:
        return len(self.roots) == 3


@dataclass
class FrobeniusSeries:
    point: "Scalar"
    exponent: "Scalar"
    coefficients: List["Scalar"]
    resonant_steps: List[int]


@dataclass
class PointCheck:
    label: str
    kind: PointKind
    passed: bool
    expected: Optional[Tuple["Scalar", "Scalar", "Scalar"]] = None
    found: Optional[Tuple["Scalar", "Scalar", "Scalar"]] = None
    exponents: List["Scalar"] = field(default_factory=list)
    defect: Optional["Scalar"] = None
    residuals: Optional[Tuple["Scalar", "Scalar", "Scalar"]] = None
    h1: Optional["Scalar"] = None
    obstructions: List[str] = field(default_factory=list)
    message: str = ""


@dataclass
class FrobeniusReport:
    points: List[PointCheck]
    order: int

    @property
    def passed(self) -> bool:
        return all(point.passed for point in self.points)

    def failures(self) -> List[PointCheck]:
        return [point for point in self.points if not point.passed]


# ---------------------------------------------------------------------------
# Discriminant
# ---------------------------------------------------------------------------

@dataclass
class BlockExpansionTerm:
    J: Tuple[int, ...]
    sign: int
    r: "Scalar"
    s: "Scalar"
    s_hat: Optional["Scalar"]
    weight: "Scalar"
    value: "Scalar"


@dataclass
class IntersectionPoint:
    p1: "Scalar"
    p2: "Scalar"
    radicand: Optional[int]
    config: ProblemConfig
    sigma1: "Scalar"
    sigma_k: "Scalar"
    rank_m1: int
    rank_mb: int
    sigma_f: "Scalar"
    certified: bool
    reason: str = ""


@dataclass
class IntersectionResult:
    k: int
    p1_line: Tuple["Scalar", "Scalar"]
    sigma1_p1_degree: int
    polynomial: "Poly"
    factor_degrees: List[int]
    points: List[IntersectionPoint]

    @property
    def certified_points(self) -> List[IntersectionPoint]:
        return [point for point in self.points if point.certified]


@dataclass
class DegreeProbe:
    variable: str
    degree: int
    leading_coefficient: "Scalar"
    samples: int


@dataclass
class FamilyMember:
    parameter: "Scalar"
    vector: Tuple["Scalar", ...]
    equation: FuchsianEquation
    report: FrobeniusReport
    chart_u1: Tuple["Scalar", ...]
    chart_u2: Optional[Tuple["Scalar", ...]]


@dataclass
class BlowupReport:
    k: int
    k_label: str
    free_column: int
    free_label: str
    rank_m1: int
    rank_mb: int
    sigma_f: "Scalar"
    family: AffineFamily
    members: List[FamilyMember]

    @property
    def all_verified(self) -> bool:
        return all(member.report.passed for member in self.members)


@dataclass
class DiscriminantReport:
    config: ProblemConfig
    sigma1: "Scalar"
    rank_m1: int
    rank_mb: int
    checks: Dict[str, bool] = field(default_factory=dict)
    sigma1_blocks: Optional["Scalar"] = None
    terms: List[BlockExpansionTerm] = field(default_factory=list)
    chi1: Optional["Scalar"] = None
    phi1: Optional["Scalar"] = None
    sigma_k: Dict[int, "Scalar"] = field(default_factory=dict)
    pinned_ratios: Dict[int, Tuple["Scalar", "Scalar"]] = field(default_factory=dict)
    sigma_f: Optional["Scalar"] = None
    chi_f: Optional["Scalar"] = None
    phi_f: Optional["Scalar"] = None
    degrees: List[DegreeProbe] = field(default_factory=list)
    intersection: Optional[IntersectionResult] = None


# ---------------------------------------------------------------------------
# Run bookkeeping
# ---------------------------------------------------------------------------

@dataclass
class RunManifest:
    command: str
    config_source: str
    seed: Optional[int]
    output_path: Optional[str]
    frobenius_order: Optional[int]
    samples: Optional[int]
    settings: Dict[str, Any] = field(default_factory=dict)
    flags: Dict[str, Any] = field(default_factory=dict)
