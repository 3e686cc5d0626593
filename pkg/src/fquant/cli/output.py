"""CSV and JSON writers for experiment tables."""

import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from .. import __version__
from ..config import settings


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return settings.float_format % value
    return str(value)


def render_csv(rows: Sequence[BaseModel], invocation: str) -> str:
    """Comment line with invocation and version, header row, one line per row."""
    buffer = io.StringIO()
    buffer.write(f"# {invocation} (fquant {__version__})\n")
    if rows:
        fields = list(type(rows[0]).model_fields)
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            data = row.model_dump()
            writer.writerow([_cell(data[f]) for f in fields])
    return buffer.getvalue()


def render_json(payload: dict[str, Any] | Sequence[BaseModel], invocation: str) -> str:
    if isinstance(payload, dict):
        body = dict(payload)
    else:
        body = {"rows": [row.model_dump() for row in payload]}
    body = {"invocation": invocation, "version": __version__, **body}
    return json.dumps(body, indent=2)


def write_text(text: str, out: Path | None) -> None:
    """Write to `out`, or to stdout when no path is given."""
    if out is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
