"""
Pipeline orchestration for the Fuchsian apparent-singularity engine.

Every command goes through this module:
1. Resolve the configuration (file, inline dict, seeded sample or planted base)
2. Run the requested computation in fuchsian_app.services
3. Convert the result to a JSON-ready report with its RunManifest
4. Optionally store the report with report_repository
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import settings
from fuchsian_app.constants import DEFAULT_INTERSECT_K, EXIT_DEGENERATE, EXIT_FAILURE, EXIT_OK, INTERSECT_SAMPLES
from fuchsian_app.services.confvand import (
    NodeSpec,
    RowSequence,
    build_confvand,
    confvand_det,
    inversion_count,
)
from fuchsian_app.services.discriminant import (
    blowup_family,
    chi_f,
    chi_phi_factorization,
    degree_probe,
    expected_sigma1_degree,
    intersect_v1_vhat,
    phi_f,
    pinned_ratios,
    rank_profile,
    sigma1_by_blocks,
    sigma1_by_elimination,
    sigma_f_by_blocks,
    sigma_f_by_elimination,
    sigma_minors,
)
from fuchsian_app.services.exact_core import det
from fuchsian_app.services.frobenius import default_order, indicial_at, verify_apparent_all
from fuchsian_app.services.sampling import random_config, sample_intersection_base
from fuchsian_app.services.system_builder import (
    derive_constants,
    ensure_valid,
    laurent_residuals,
    nonzero_residuals,
    solve_connection,
)
from fuchsian_app.types import (
    AffineFamily,
    Command,
    DiscriminantReport,
    FactorizationMismatch,
    FuchsianError,
    G1Convention,
    InvalidConfig,
    ProblemConfig,
    RunManifest,
)
from fuchsian_app.utils import (
    blowup_report_to_dict,
    config_to_dict,
    derived_constants_to_dict,
    dict_to_config,
    dict_to_equation,
    discriminant_report_to_dict,
    equation_to_dict,
    family_to_dict,
    frobenius_report_to_dict,
    indicial_to_dict,
    intersection_result_to_dict,
    manifest_to_dict,
    matrix_to_rows,
    scalar_to_str,
    str_to_scalar,
)
from report_repository import save_report

# Set up logging
logger = logging.getLogger(__name__)
if not logging.getLogger().handlers:
    logging.basicConfig(
        level=settings.get_log_level(),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
    )

ConfigInput = Union[ProblemConfig, Dict[str, Any]]


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def _get_config() -> dict:
    """Load configuration from environment variables."""
    return {
        "seed": settings.get_seed(),
        "g1_convention": settings.get_g1_convention().value,
        "frobenius_margin": settings.get_frobenius_margin(),
        "report_dir": str(settings.get_report_dir()),
    }


def _convention(convention: Optional[Union[G1Convention, str]]) -> G1Convention:
    if convention is None:
        return settings.get_g1_convention()
    try:
        return G1Convention(convention)
    except ValueError as exc:
        raise InvalidConfig(f"unknown G1 convention {convention!r}; expected 'exact' or 'vanishing'") from exc


def _order(order: Optional[int]) -> int:
    return default_order(settings.get_frobenius_margin()) if order is None else order


def load_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidConfig(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"{path} is not valid JSON: {exc}") from exc


def as_config(data: ConfigInput) -> ProblemConfig:
    """Accepts a ProblemConfig, a config dict, or any report that embeds one under 'config'."""
    if isinstance(data, ProblemConfig):
        return data
    if "config" in data and "n" not in data:
        data = data["config"]
    return dict_to_config(data)


def resolve_config(
    config: Optional[ConfigInput] = None,
    config_path: Optional[Union[str, Path]] = None,
    sample_n: Optional[int] = None,
    seed: Optional[int] = None,
) -> tuple[ProblemConfig, str, Optional[int]]:
    """
    Returns (config, source, seed). Exactly one of config, config_path or sample_n is used;
    a sampled config takes its seed from the argument or FUCHSIAN_SEED.
    """
    if config is not None:
        return as_config(config), "inline", None
    if config_path is not None:
        return as_config(load_json(config_path)), str(config_path), None
    if sample_n is not None:
        seed = settings.get_seed() if seed is None else seed
        return random_config(sample_n, seed), f"sample:n={sample_n}", seed
    raise InvalidConfig("no configuration given: pass a config, a config file or a sample size")


def _manifest(
    command: Command,
    source: str,
    seed: Optional[int],
    output_path: Optional[str] = None,
    frobenius_order: Optional[int] = None,
    samples: Optional[int] = None,
    **flags: Any,
) -> Dict[str, Any]:
    manifest = RunManifest(
        command=command.value,
        config_source=source,
        seed=seed,
        output_path=output_path,
        frobenius_order=frobenius_order,
        samples=samples,
        settings=_get_config(),
        flags={k: v for k, v in flags.items() if v is not None},
    )
    return manifest_to_dict(manifest)


def _finish(report: Dict[str, Any], save: bool) -> Dict[str, Any]:
    if save:
        report["run_id"] = save_report(report)
    return report


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def run_solve(
    config: ProblemConfig,
    source: str = "inline",
    seed: Optional[int] = None,
    convention: Optional[Union[G1Convention, str]] = None,
    output_path: Optional[str] = None,
    save: bool = False,
) -> Dict[str, Any]:
    """
    Solve system (T). exit_code is 0 for a unique equation and 2 when M_1 is singular
    but the system is consistent (the report then carries the affine family).
    """
    convention = _convention(convention)
    logger.info("solve: n=%s size=%s convention=%s", config.n, config.system_size, convention.value)
    result = solve_connection(config, convention)
    report: Dict[str, Any] = {
        "manifest": _manifest(Command.SOLVE, source, seed, output_path, convention=convention.value),
        "config": config_to_dict(config),
        "constants": derived_constants_to_dict(derive_constants(config, convention, G=result.G)),
    }
    if isinstance(result, AffineFamily):
        logger.warning("solve: M_1 is singular; returning a %s-parameter family", result.dimension)
        report["family"] = family_to_dict(result)
        report["exit_code"] = EXIT_DEGENERATE
    else:
        residuals = nonzero_residuals(laurent_residuals(result, config, convention))
        if residuals:
            logger.error("solve: nonzero round-trip residuals %s", sorted(residuals))
        report["equation"] = equation_to_dict(result)
        report["residuals"] = {label: scalar_to_str(v) for label, v in residuals.items()}
        report["exit_code"] = EXIT_FAILURE if residuals else EXIT_OK
    return _finish(report, save)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def run_verify(
    equation_data: Dict[str, Any],
    config: Optional[ProblemConfig] = None,
    source: str = "inline",
    order: Optional[int] = None,
    output_path: Optional[str] = None,
    save: bool = False,
) -> Dict[str, Any]:
    """
    Checks a solved equation against its configuration. `equation_data` is either an
    equation dict or a solve report; in the latter case its embedded config is used
    when none is given.
    """
    if "equation" in equation_data:
        if config is None and "config" in equation_data:
            config = dict_to_config(equation_data["config"])
        equation_data = equation_data["equation"]
    if config is None:
        raise InvalidConfig("verify needs the configuration the equation was solved for")
    ensure_valid(config)
    equation = dict_to_equation(equation_data)
    order = _order(order)
    frobenius = verify_apparent_all(equation, config, order)
    indicial = [indicial_at(equation, None)] + [indicial_at(equation, t) for t in config.t]
    report = {
        "manifest": _manifest(Command.VERIFY, source, None, output_path, frobenius_order=order),
        "config": config_to_dict(config),
        "verify": frobenius_report_to_dict(frobenius),
        "indicial": [indicial_to_dict(data) for data in indicial],
        "exit_code": EXIT_OK if frobenius.passed else EXIT_FAILURE,
    }
    return _finish(report, save)


# ---------------------------------------------------------------------------
# discriminant
# ---------------------------------------------------------------------------

def _discriminant_report(
    config: ProblemConfig,
    convention: G1Convention,
    blocks: bool,
    factor: bool,
    minors: bool,
    degree: Sequence[str],
    samples: Optional[int],
) -> DiscriminantReport:
    sigma1 = sigma1_by_elimination(config, convention)
    rank_m1, rank_mb = rank_profile(config, convention)
    report = DiscriminantReport(config=config, sigma1=sigma1, rank_m1=rank_m1, rank_mb=rank_mb)
    logger.info("discriminant: sigma_1 computed, rank(M_1)=%s rank(M_b)=%s", rank_m1, rank_mb)

    if blocks:
        report.sigma1_blocks, report.terms = sigma1_by_blocks(config, convention)
        report.checks["sigma1_blocks"] = report.sigma1_blocks == sigma1

    if factor:
        if config.n != 3:
            logger.warning("discriminant: closed-form factorizations exist for n = 3 only; skipping")
        else:
            try:
                report.chi1, report.phi1 = chi_phi_factorization(config, convention, sigma1)
                report.checks["chi1_phi1"] = True
            except FactorizationMismatch as exc:
                logger.warning("discriminant: %s", exc)
                report.checks["chi1_phi1"] = False
            constants = derive_constants(config, convention)
            report.sigma_f = sigma_f_by_elimination(config, convention)
            report.chi_f = chi_f(config)
            report.phi_f = phi_f(config, constants)
            report.checks["chi_f_phi_f"] = report.chi_f * report.phi_f == report.sigma_f
            report.checks["sigma_f_blocks"] = sigma_f_by_blocks(config, convention) == report.sigma_f

    if minors:
        if sigma1 == 0:
            logger.warning("discriminant: sigma_1 vanishes, ratios to sigma_1 are undefined")
            report.sigma_k = sigma_minors(config, None, convention)
        else:
            report.pinned_ratios = pinned_ratios(config, convention, sigma1)
            report.sigma_k = sigma_minors(config, report.pinned_ratios.keys(), convention)
            report.checks["pinned_ratios"] = all(e == f for e, f in report.pinned_ratios.values())

    for variable in degree:
        count = samples if samples is not None else expected_sigma1_degree(config.n) + 1
        probe = degree_probe(lambda c: sigma1_by_elimination(c, convention), config, variable, count)
        report.degrees.append(probe)
        if variable == "q1" and config.n >= 3:
            report.checks["degree_q1"] = probe.degree == expected_sigma1_degree(config.n)
    return report


def run_discriminant(
    config: ProblemConfig,
    source: str = "inline",
    seed: Optional[int] = None,
    convention: Optional[Union[G1Convention, str]] = None,
    blocks: bool = False,
    factor: bool = False,
    minors: bool = False,
    degree: Iterable[str] = (),
    samples: Optional[int] = None,
    output_path: Optional[str] = None,
    save: bool = False,
) -> Dict[str, Any]:
    convention = _convention(convention)
    ensure_valid(config)
    degree = list(degree)
    result = _discriminant_report(config, convention, blocks, factor, minors, degree, samples)
    failed = [name for name, ok in result.checks.items() if not ok]
    if failed:
        logger.warning("discriminant: failing checks %s", failed)
    report = discriminant_report_to_dict(result)
    report["manifest"] = _manifest(
        Command.DISCRIMINANT, source, seed, output_path, samples=samples,
        convention=convention.value, blocks=blocks, factor=factor, minors=minors, degree=degree or None,
    )
    report["exit_code"] = EXIT_FAILURE if failed else EXIT_OK
    return _finish(report, save)


# ---------------------------------------------------------------------------
# intersect / blowup
# ---------------------------------------------------------------------------

def planted_base(seed: Optional[int] = None, convention: Optional[Union[G1Convention, str]] = None) -> tuple[ProblemConfig, int]:
    seed = settings.get_seed() if seed is None else seed
    return sample_intersection_base(seed, _convention(convention)), seed


def run_intersect(
    base: ProblemConfig,
    source: str = "inline",
    seed: Optional[int] = None,
    k: int = DEFAULT_INTERSECT_K,
    convention: Optional[Union[G1Convention, str]] = None,
    samples: int = INTERSECT_SAMPLES,
    output_path: Optional[str] = None,
    save: bool = False,
) -> Dict[str, Any]:
    """exit_code 0 when at least one intersection point is certified."""
    convention = _convention(convention)
    ensure_valid(base)
    result = intersect_v1_vhat(base, k, convention, samples)
    report = {
        "manifest": _manifest(Command.INTERSECT, source, seed, output_path, samples=samples, k=k,
                              convention=convention.value),
        "config": config_to_dict(base),
        "intersection": intersection_result_to_dict(result),
        "exit_code": EXIT_OK if result.certified_points else EXIT_FAILURE,
    }
    return _finish(report, save)


def point_from(data: Dict[str, Any], index: int = 0) -> ProblemConfig:
    """A point config from an intersect report (index-th certified point) or from a plain config."""
    if "intersection" in data:
        points = [p for p in data["intersection"]["points"] if p.get("certified")]
        if not points:
            raise InvalidConfig("the intersect report has no certified point")
        if not 0 <= index < len(points):
            raise InvalidConfig(f"point index {index} out of range 0..{len(points) - 1}")
        return dict_to_config(points[index]["config"])
    return as_config(data)


def run_blowup(
    point: ProblemConfig,
    source: str = "inline",
    k: int = DEFAULT_INTERSECT_K,
    convention: Optional[Union[G1Convention, str]] = None,
    order: Optional[int] = None,
    output_path: Optional[str] = None,
    save: bool = False,
) -> Dict[str, Any]:
    convention = _convention(convention)
    ensure_valid(point)
    order = _order(order)
    result = blowup_family(point, k, convention, order=order)
    report = {
        "manifest": _manifest(Command.BLOWUP, source, None, output_path, frobenius_order=order, k=k,
                              convention=convention.value),
        "config": config_to_dict(point),
        "blowup": blowup_report_to_dict(result),
        "exit_code": EXIT_OK if result.all_verified else EXIT_FAILURE,
    }
    return _finish(report, save)


# ---------------------------------------------------------------------------
# confvand
# ---------------------------------------------------------------------------

def parse_nodes(text: str) -> NodeSpec:
    """'0:2,1/3:1,inf:1' -> nodes (x, multiplicity); 'inf' is the node at infinity."""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        x, _, m = chunk.partition(":")
        try:
            multiplicity = int(m) if m else 1
        except ValueError as exc:
            raise InvalidConfig(f"bad multiplicity in node {chunk!r}") from exc
        if multiplicity < 1:
            raise InvalidConfig(f"multiplicity must be positive in node {chunk!r}")
        pairs.append((None if x.strip() == "inf" else str_to_scalar(x.strip()), multiplicity))
    if not pairs:
        raise InvalidConfig("no nodes given")
    # the node at infinity sorts after every finite node
    pairs.sort(key=lambda pair: pair[0] is None)
    return NodeSpec.of(pairs)


def run_confvand(nodes: Union[str, NodeSpec], output_path: Optional[str] = None) -> Dict[str, Any]:
    """Builds the confluent Vandermonde matrix of a node spec and compares det with the product formula."""
    spec = parse_nodes(nodes) if isinstance(nodes, str) else nodes
    try:
        matrix = build_confvand(spec)
    except ValueError as exc:
        raise InvalidConfig(f"invalid node spec: {exc}") from exc
    by_elimination = det(matrix)
    by_formula = confvand_det(spec)
    sequence = RowSequence.standard(spec)
    logger.info("confvand: size=%s det agrees=%s", spec.size, by_elimination == by_formula)
    return {
        "manifest": _manifest(Command.CONFVAND, "nodes", None, output_path),
        "nodes": [
            {"x": "inf" if node.is_infinite else scalar_to_str(node.x), "multiplicity": node.multiplicity}
            for node in spec.nodes
        ],
        "matrix": matrix_to_rows(matrix),
        "det": scalar_to_str(by_elimination),
        "product_formula": scalar_to_str(by_formula),
        "inversions": inversion_count(sequence),
        "exit_code": EXIT_OK if by_elimination == by_formula else EXIT_FAILURE,
    }


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

def error_report(command: Command, exc: FuchsianError) -> Dict[str, Any]:
    """The JSON body emitted when a command stops on an engine error."""
    report: Dict[str, Any] = {
        "command": command.value,
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": exc.code,
    }
    violations: List[Any] = getattr(exc, "violations", [])
    if violations:
        report["violations"] = [{"code": v.code, "message": v.message} for v in violations]
    return report
