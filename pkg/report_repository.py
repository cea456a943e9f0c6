"""
Repository module for stored engine reports.

Reports are JSON files under FUCHSIAN_REPORT_DIR, one file per run:
- <command>-<digest>.json where digest is a content hash of the report
- identical runs map to the same run id, so storing is idempotent
"""

import hashlib
import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

from settings import get_report_dir

_RUN_ID = re.compile(r"^[a-z]+-[0-9a-f]{12}$")


# ---------------------------------------------------------------------------
# Repository Functions
# ---------------------------------------------------------------------------

def _report_dir() -> Path:
    path = get_report_dir()
    path.mkdir(parents=True, exist_ok=True)
    return path


def _encode(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def run_id_for(report: Dict[str, Any]) -> str:
    """Deterministic id: the command name and the first 12 hex digits of the report's SHA-256."""
    command = report.get("manifest", {}).get("command") or report.get("command") or "report"
    body = {k: v for k, v in report.items() if k != "run_id"}
    digest = hashlib.sha256(_encode(body).encode("utf-8")).hexdigest()[:12]
    return f"{command}-{digest}"


def save_report(report: Dict[str, Any]) -> str:
    """
    Write a report to the store.

    Args:
        report: A JSON-ready report dictionary as built by engine_service.

    Returns:
        The run id the report was stored under.
    """
    run_id = run_id_for(report)
    path = _report_dir() / f"{run_id}.json"
    path.write_text(_encode(dict(report, run_id=run_id)) + "\n", encoding="utf-8")
    return run_id


def get_report(run_id: str) -> Optional[Dict[str, Any]]:
    """
    Fetch a stored report.

    Args:
        run_id: The id returned by save_report (e.g., "solve-3f2a9c0d1b7e").

    Returns:
        The report dictionary, or None if no report has that id.
    """
    if not _RUN_ID.match(run_id):
        raise ValueError(f"malformed run id {run_id!r}")
    path = _report_dir() / f"{run_id}.json"
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def list_reports() -> List[Dict[str, Any]]:
    """Summaries (run id, command, config source, exit code) of every stored report, sorted by id."""
    summaries = []
    for path in sorted(_report_dir().glob("*.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        manifest = data.get("manifest", {})
        summaries.append({
            "run_id": path.stem,
            "command": manifest.get("command"),
            "config_source": manifest.get("config_source"),
            "exit_code": data.get("exit_code"),
        })
    return summaries
