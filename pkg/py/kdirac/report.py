"""Machine-readable reports.

A report is a command name, the run metadata, data rows and check records.
Rendering is deterministic: JSON keys are sorted and CSV columns follow the
first appearance of each key.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from kdirac.consts import CLIFFORD_CONVENTION, MODULE_LAYOUT, OutputFormat

__all__ = ["Report"]


def _plain(value):
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return value


@dataclass
class Report:
    command: str
    k: int
    n: int
    normalization: str | None = None
    rows: list[dict] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    cache_events: list[dict] = field(default_factory=list)

    def add_rows(self, rows):
        self.rows.extend(_plain(r) for r in rows)

    def add_checks(self, checks):
        self.checks.extend(_plain(c) for c in checks)

    @property
    def passed(self):
        records = self.rows + self.checks
        return all(r.get("pass", True) for r in records)

    def to_dict(self):
        rv = {
            "command": self.command,
            "k": self.k,
            "n": self.n,
            "clifford_convention": CLIFFORD_CONVENTION,
            "module_layout": MODULE_LAYOUT,
            "normalization": self.normalization,
            "rows": self.rows,
            "checks": self.checks,
            "cache_events": self.cache_events,
            "pass": self.passed,
        }
        rv.update(self.extra)
        return rv

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self):
        records = self.rows + self.checks
        columns: list[str] = []
        for record in records:
            for key in record:
                if key not in columns:
                    columns.append(key)
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({key: _cell(value) for key, value in record.items()})
        return out.getvalue()

    def render(self, output_format):
        if OutputFormat(output_format) == OutputFormat.CSV:
            return self.to_csv()
        return self.to_json()


def _cell(value):
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value
