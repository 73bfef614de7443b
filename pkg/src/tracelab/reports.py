"""Machine-readable experiment reports.

A report's canonical byte form (JSON with sorted keys, or TSV) is a pure
function of (experiment, config echo, result rows, version): reruns with
the same config and seed are byte-identical.  Wall-clock duration is kept
on the object and emitted on stderr by the CLI, never into the canonical
bytes, precisely so that determinism of the payload can be asserted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__

SCHEMA = "tracelab/1"


@dataclass
class Report:
    experiment: str
    config: dict
    rows: list
    duration: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(r.get("ok", True) for r in self.rows)

    def payload(self) -> dict:
        return {
            "schema": SCHEMA,
            "experiment": self.experiment,
            "version": self.version,
            "config": self.config,
            "pass": self.passed,
            "rows": self.rows,
        }

    def to_json_bytes(self) -> bytes:
        return (
            json.dumps(self.payload(), sort_keys=True, separators=(",", ":")) + "\n"
        ).encode()

    def to_tsv(self) -> str:
        """Rows flattened to tab-separated text with a header line."""
        keys: list[str] = []
        for row in self.rows:
            for k in row:
                if k not in keys:
                    keys.append(k)
        lines = ["\t".join(keys)]
        for row in self.rows:
            lines.append("\t".join(_cell(row.get(k)) for k in keys))
        return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)
