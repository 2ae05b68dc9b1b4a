"""Persisted JSON reports for dyckq runs."""
from __future__ import annotations

import json
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import dyckq_env as env
from dyckq_engine import InvalidInput, logger

REPORT_SCHEMA = "report.v1"

ReportStatus = Literal["OK", "FAILED", "ERROR"]


@dataclass
class RunReport:
    report_id: str
    timestamp: str
    verb: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    status: ReportStatus = "OK"
    payload: Any = None
    message: str = ""
    schema: str = REPORT_SCHEMA


def _index_path() -> Path:
    return env.report_dir() / "reports.json"


def ensure_report_storage() -> None:
    path = _index_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    if not path.exists():
        path.write_text("[]", encoding="utf-8")


def load_reports() -> List[RunReport]:
    ensure_report_storage()
    try:
        with open(_index_path(), "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        logger.warning("report index unreadable, starting empty: %s", exc)
        return []
    reports: List[RunReport] = []
    for item in data if isinstance(data, list) else []:
        try:
            reports.append(RunReport(**item))
        except TypeError:
            continue
    return reports


def save_reports(reports: List[RunReport]) -> None:
    ensure_report_storage()
    payload = [asdict(report) for report in reports]
    with open(_index_path(), "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, ensure_ascii=False)


def append_report(report: RunReport) -> None:
    reports = load_reports()
    reports.append(report)
    save_reports(reports)


def clear_reports() -> None:
    path = _index_path()
    if path.exists():
        path.unlink()


def build_report(
    verb: str,
    parameters: Dict[str, Any],
    payload: Any,
    *,
    status: ReportStatus = "OK",
    message: str = "",
) -> RunReport:
    return RunReport(
        report_id=uuid.uuid4().hex[:12],
        timestamp=datetime.now().isoformat(timespec="seconds"),
        verb=verb,
        parameters={k: v for k, v in sorted(parameters.items()) if v is not None},
        status=status,
        payload=payload,
        message=message,
    )


def write_report(report: RunReport, path: Path, *, index: bool = True) -> Path:
    """Write ``report`` to ``path`` and record it in the report index."""

    path = Path(path)
    if path.is_dir():
        raise InvalidInput(f"--output must name a file, got directory {path}")
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(asdict(report), handle, indent=2, ensure_ascii=False)
    logger.info("report %s written to %s", report.report_id, path)
    if index:
        append_report(report)
    return path


def read_report(path: Path) -> Optional[RunReport]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return RunReport(**json.load(handle))
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        logger.warning("cannot read report %s: %s", path, exc)
        return None
