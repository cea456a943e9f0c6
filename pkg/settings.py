import os
from pathlib import Path

from dotenv import load_dotenv

from fuchsian_app.types import G1Convention

load_dotenv()


def _get_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(
            f"{name} must be an integer, got {raw!r}. "
            "Export it in your environment or add it to .env."
        )


def get_seed() -> int:
    """
    Returns the RNG seed used when a command is not given --seed.

    Reads FUCHSIAN_SEED from the environment or .env.
    """
    return _get_int("FUCHSIAN_SEED", 20240601)


def get_g1_convention() -> G1Convention:
    """
    Returns how G_1 at the apparent singularities enters system (T).

    Expects FUCHSIAN_G1_CONVENTION to be 'exact' (default) or 'vanishing'.
    """
    raw = os.getenv("FUCHSIAN_G1_CONVENTION", G1Convention.EXACT.value).strip().lower()
    try:
        return G1Convention(raw)
    except ValueError:
        raise RuntimeError(
            f"FUCHSIAN_G1_CONVENTION must be 'exact' or 'vanishing', got {raw!r}. "
            "Export it in your environment or add it to .env."
        )


def get_frobenius_margin() -> int:
    """Extra Frobenius orders past the largest exponent gap (FUCHSIAN_FROBENIUS_MARGIN)."""
    margin = _get_int("FUCHSIAN_FROBENIUS_MARGIN", 8)
    if margin < 0:
        raise RuntimeError(
            f"FUCHSIAN_FROBENIUS_MARGIN must be non-negative, got {margin}. "
            "Export it in your environment or add it to .env."
        )
    return margin


def get_report_dir() -> Path:
    """Directory where JSON reports are stored (FUCHSIAN_REPORT_DIR, default ./reports)."""
    return Path(os.getenv("FUCHSIAN_REPORT_DIR") or "reports")


def get_log_level() -> str:
    return (os.getenv("FUCHSIAN_LOG_LEVEL") or "INFO").upper()
