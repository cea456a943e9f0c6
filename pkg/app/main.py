from __future__ import annotations

from typing import Any, Callable, Dict, List, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

import engine_service
from fuchsian_app.constants import DEFAULT_INTERSECT_K, INTERSECT_SAMPLES
from fuchsian_app.types import FuchsianError
from report_repository import get_report, list_reports

app = FastAPI(
    title="Fuchsian Apparent-Singularity Engine API",
    version="0.1.0",
)

ScalarText = Union[str, int]


# ---------------------------------------------------------------------------
# Pydantic models
# ---------------------------------------------------------------------------

class ConfigModel(BaseModel):
    """
    A configuration in its exact text form: rationals as "p/q" strings (plain JSON
    integers are accepted too). Floats are rejected.
    """
    n: int
    t: List[ScalarText]
    rho: List[List[ScalarText]]
    q: List[ScalarText]
    p: List[ScalarText]


class ConfigSource(BaseModel):
    """Either an explicit config or a seeded random one of order sample_n."""
    config: Optional[ConfigModel] = None
    sample_n: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = None
    g1: Optional[str] = None
    save: bool = False


class SolveRequest(ConfigSource):
    pass


class VerifyRequest(BaseModel):
    equation: Dict[str, Any]
    config: Optional[ConfigModel] = None
    order: Optional[int] = Field(default=None, ge=1)
    save: bool = False


class DiscriminantRequest(ConfigSource):
    blocks: bool = False
    factor: bool = False
    minors: bool = False
    degree: List[str] = Field(default_factory=list)
    samples: Optional[int] = Field(default=None, ge=1)


class IntersectRequest(ConfigSource):
    """Without config or sample_n the base is a planted one drawn from seed."""
    k: int = DEFAULT_INTERSECT_K
    samples: int = Field(default=INTERSECT_SAMPLES, ge=1)


class BlowupRequest(BaseModel):
    """point is an intersect report or a point configuration; omitted means a planted point."""
    point: Optional[Dict[str, Any]] = None
    index: int = 0
    seed: Optional[int] = None
    k: int = DEFAULT_INTERSECT_K
    g1: Optional[str] = None
    order: Optional[int] = Field(default=None, ge=1)
    save: bool = False


class ConfvandRequest(BaseModel):
    nodes: str


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _run(label: str, action: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
    """Engine errors become 422 (invalid or inconsistent input) or 409 (degenerate case)."""
    try:
        return action()
    except FuchsianError as exc:
        status = 409 if exc.code == 2 else 422
        raise HTTPException(status_code=status, detail=f"{label} failed: {exc}") from exc
    except Exception as exc:
        # Surface a simple 500 with a short message; details remain in logs.
        raise HTTPException(status_code=500, detail=f"{label} failed: {exc}") from exc


def _resolve(req: ConfigSource):
    return engine_service.resolve_config(
        config=req.config.model_dump() if req.config else None,
        sample_n=req.sample_n,
        seed=req.seed,
    )


# ---------------------------------------------------------------------------
# Routes
# ---------------------------------------------------------------------------

@app.post("/solve")
def solve(req: SolveRequest) -> Dict[str, Any]:
    """Solve system (T); exit_code 2 in the body means an affine family was returned."""
    def action():
        config, source, seed = _resolve(req)
        return engine_service.run_solve(config, source, seed, req.g1, save=req.save)
    return _run("Solve", action)


@app.post("/verify")
def verify(req: VerifyRequest) -> Dict[str, Any]:
    """
    Verify a solved equation. `equation` may be an equation or a whole /solve response,
    whose config is then used when none is given.
    """
    def action():
        config = engine_service.as_config(req.config.model_dump()) if req.config else None
        return engine_service.run_verify(req.equation, config, order=req.order, save=req.save)
    return _run("Verify", action)


@app.post("/discriminant")
def discriminant(req: DiscriminantRequest) -> Dict[str, Any]:
    def action():
        config, source, seed = _resolve(req)
        return engine_service.run_discriminant(
            config, source, seed, req.g1,
            blocks=req.blocks, factor=req.factor, minors=req.minors,
            degree=req.degree, samples=req.samples, save=req.save,
        )
    return _run("Discriminant", action)


@app.post("/intersect")
def intersect(req: IntersectRequest) -> Dict[str, Any]:
    def action():
        if req.config is None and req.sample_n is None:
            config, seed = engine_service.planted_base(req.seed, req.g1)
            source = f"planted:seed={seed}"
        else:
            config, source, seed = _resolve(req)
        return engine_service.run_intersect(config, source, seed, req.k, req.g1, req.samples, save=req.save)
    return _run("Intersect", action)


@app.post("/blowup")
def blowup(req: BlowupRequest) -> Dict[str, Any]:
    def action():
        if req.point is not None:
            point = engine_service.point_from(req.point, req.index)
            source = "inline"
        else:
            base, seed = engine_service.planted_base(req.seed, req.g1)
            source = f"planted:seed={seed}"
            intersection = engine_service.run_intersect(base, source, seed, req.k, req.g1)
            point = engine_service.point_from(intersection, req.index)
        return engine_service.run_blowup(point, source, req.k, req.g1, req.order, save=req.save)
    return _run("Blow-up", action)


@app.post("/confvand")
def confvand(req: ConfvandRequest) -> Dict[str, Any]:
    return _run("Confvand", lambda: engine_service.run_confvand(req.nodes))


@app.get("/reports")
def reports() -> List[Dict[str, Any]]:
    try:
        return list_reports()
    except Exception as exc:
        raise HTTPException(status_code=500, detail=f"Error listing reports: {exc}") from exc


@app.get("/reports/{run_id}")
def report(run_id: str) -> Dict[str, Any]:
    """Fetch a stored report by the run_id a POST with save=true returned."""
    try:
        doc = get_report(run_id)
    except ValueError:
        raise HTTPException(status_code=400, detail="Invalid run_id format, expected <command>-<12 hex digits>")
    except Exception as exc:
        raise HTTPException(status_code=500, detail=f"Error loading report: {exc}") from exc

    if not doc:
        raise HTTPException(status_code=404, detail="Report not found")
    return doc
