"""JSON and CSV emission for reports, results and code exports."""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from pydantic import BaseModel

from .errors import OutputError

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12

SIM_HEADER = ["snr_db", "trials", "block_errors", "bler", "mean_nodes", "ci95"]
BENCH_HEADER = ["trial", "snr", "nodes", "correct"]


def round_floats(obj: Any) -> Any:
    """Round every float to 12 significant digits, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def _plain(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def to_json(obj: Any, config: Optional[dict] = None) -> str:
    payload = round_floats(_plain(obj))
    if config is not None:
        payload = {"config": round_floats(config), "result": payload}
    return json.dumps(payload, indent=2)


def to_csv(rows: Sequence[Union[BaseModel, dict]], header: Sequence[str], config: Optional[dict] = None) -> str:
    buf = io.StringIO()
    if config is not None:
        buf.write(f"# config={json.dumps(round_floats(config), sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        data = row.model_dump() if isinstance(row, BaseModel) else row
        writer.writerow([_cell(data[h]) for h in header])
    return buf.getvalue()


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def emit(obj: Any, fmt: str = "json", path: Optional[Union[str, Path]] = None,
         header: Optional[Sequence[str]] = None, config: Optional[dict] = None) -> str:
    """Render obj as JSON or CSV; write it to path (or return it only when path is None)."""
    if fmt == "json":
        text = to_json(obj, config) + "\n"
    elif fmt == "csv":
        rows = obj.rows if hasattr(obj, "rows") else obj
        text = to_csv(rows, header or SIM_HEADER, config)
    else:
        raise OutputError(f"unknown output format {fmt!r}")
    if path is not None:
        path = Path(path)
        try:
            path.write_text(text)
        except OSError as e:
            raise OutputError(f"cannot write {path}: {e}") from e
        logger.info(f"Wrote {fmt.upper()} to {path}")
    return text
