from fractions import Fraction


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

# Random rationals are drawn from [SAMPLE_LOW, SAMPLE_HIGH] with denominators up to SAMPLE_MAX_DENOMINATOR.
SAMPLE_LOW = Fraction(1, 40)
SAMPLE_HIGH = Fraction(70)
SAMPLE_MAX_DENOMINATOR = 40
SAMPLE_MAX_ATTEMPTS = 50

# Integer probe values for degree probes start above the sampling range so they never hit a sampled node.
PROBE_START = 71

# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

# Trial-division bound used when pulling square factors out of a radicand.
RADICAND_TRIAL_BOUND = 1 << 20

# ---------------------------------------------------------------------------
# Frobenius
# ---------------------------------------------------------------------------

DEFAULT_FROBENIUS_MARGIN = 8
APPARENT_EXPONENTS = (0, 1, 3)

# ---------------------------------------------------------------------------
# Discriminant and intersection
# ---------------------------------------------------------------------------

# Cramer index used by intersect/blowup when none is given.
DEFAULT_INTERSECT_K = 3
# F(p2) = sigma_k(p1*(p2), p2) has degree at most 4; two extra samples certify the interpolant.
INTERSECT_SAMPLES = 7
INTERSECT_CHECK_SAMPLES = 2
DEGREE_PROBE_EXTRA_SAMPLES = 2
BLOWUP_SAMPLE_PARAMETERS = (Fraction(0), Fraction(1), Fraction(2))

MAX_BLOCK_ORDER = 4

# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DEGENERATE = 2

# ---------------------------------------------------------------------------
# Sample configuration
# ---------------------------------------------------------------------------

# n = 2 with t_1 = 0; the third exponent at infinity is fixed by the Fuchs relation.
SAMPLE_CONFIG = {
    "n": 2,
    "t": ["0", "1"],
    "rho": [
        ["1/13", "1/17", "-70999/85085"],
        ["1/5", "1/7", "1/11"],
        ["2/5", "2/7", "2/11"],
    ],
    "q": ["2"],
    "p": ["3/7"],
}
