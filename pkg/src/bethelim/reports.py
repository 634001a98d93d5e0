"""Experiment reports: named verdicts with re-checkable certificates,
serialized as versioned JSON.  Identical configuration produces byte-identical
JSON apart from the wall-time field; every rational is a "p/q" string."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


SCHEMA = "bethelim-report/1"


@dataclass
class Report:
    experiment: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def record(self, name, ok, certificate=None):
        self.verdicts[name] = bool(ok)
        if certificate is not None:
            self.certificates[name] = certificate

    @property
    def ok(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "experiment": self.experiment,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "pass": self.ok,
            "certificates": self.certificates,
            "wall_time_s": round(self.wall_time_s, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class Stopwatch:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False
