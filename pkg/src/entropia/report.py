"""Experiment reports: named scalars, series and checks, with JSON/CSV IO.

JSON is emitted with sorted keys and shortest round-trip floats, so a
rerun with identical inputs produces byte-identical files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    n_limit: int
    scalars: dict[str, float] = field(default_factory=dict)
    series: dict[str, list[tuple[float, float]]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_checks_pass(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_limit": self.n_limit,
            "scalars": {k: float(v) for k, v in self.scalars.items()},
            "series": {k: [[float(x), float(y)] for x, y in v] for k, v in self.series.items()},
            "checks": {k: bool(v) for k, v in self.checks.items()},
        }

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n").encode("utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentReport":
        return cls(
            name=data["name"],
            n_limit=int(data["n_limit"]),
            scalars={k: float(v) for k, v in data["scalars"].items()},
            series={
                k: [(float(x), float(y)) for x, y in v] for k, v in data["series"].items()
            },
            checks={k: bool(v) for k, v in data["checks"].items()},
        )

    def write_json(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(self.to_json_bytes())
        return path

    def write_csv_dir(self, directory) -> Path:
        """One scalars file, one checks file, one file per series."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "scalars.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["metric", "value"])
            for key in sorted(self.scalars):
                writer.writerow([key, repr(float(self.scalars[key]))])
        with open(directory / "checks.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check", "value"])
            for key in sorted(self.checks):
                writer.writerow([key, "true" if self.checks[key] else "false"])
        for key in sorted(self.series):
            with open(directory / f"series_{key}.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["x", "y"])
                for x, y in self.series[key]:
                    writer.writerow([repr(float(x)), repr(float(y))])
        return directory


def load_report_json(path) -> ExperimentReport:
    with open(path, "rb") as fh:
        return ExperimentReport.from_dict(json.loads(fh.read().decode("utf-8")))
