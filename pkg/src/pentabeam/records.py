"""CSV and JSON artifacts.

CSV files start with one ``# {json}`` line carrying ``schema_version``, the
command and its parameters, followed by an ordinary header and rows.  Floats
are written with ``repr`` (shortest round-trip form), so re-running a command
reproduces the file byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = "1"


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    rows: list[dict] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def header(self) -> list[str]:
        return list(self.rows[0]) if self.rows else []


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _parse(text: str):
    if text in ("true", "false"):
        return text == "true"
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def _meta(record: OutputRecord) -> str:
    return json.dumps({"schema_version": record.schema_version, "command": record.command, "parameters": record.parameters})


def dumps_csv(record: OutputRecord) -> str:
    buf = io.StringIO()
    buf.write(f"# {_meta(record)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record.header)
    for row in record.rows:
        writer.writerow([_fmt(row[key]) for key in record.header])
    return buf.getvalue()


def write_csv(path: str | Path, record: OutputRecord) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_csv(record))
    return path


def loads_csv(text: str) -> OutputRecord:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing metadata line")
    meta = json.loads(lines[0][2:])
    reader = csv.reader(lines[1:])
    header = next(reader, [])
    rows = [dict(zip(header, map(_parse, values))) for values in reader]
    return OutputRecord(meta["command"], meta["parameters"], rows, meta["schema_version"])


def read_csv(path: str | Path) -> OutputRecord:
    return loads_csv(Path(path).read_text())


def write_json(path: str | Path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n")
    return path


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
