"""VerificationReport: the unit every check and CLI command emits."""
from __future__ import annotations

import platform
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-budget"


def toolchain():
    from mrdscatter import __version__

    return {
        "python": platform.python_version(),
        "implementation": sys.implementation.name,
        "numpy": np.__version__,
        "mrdscatter": __version__,
    }


@dataclass
class VerificationReport:
    check_name: str
    status: str
    witness: Optional[Any] = None
    counters: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    fingerprint: dict = field(default_factory=toolchain)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self, timing=False):
        d = {
            "check_name": self.check_name,
            "status": self.status,
            "witness": self.witness,
            "counters": dict(sorted(self.counters.items())),
            "details": self.details,
            "toolchain": self.fingerprint,
        }
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def summary(self):
        counters = ", ".join(f"{k}={v}" for k, v in sorted(self.counters.items()))
        return f"[{self.status.upper():>4}] {self.check_name} ({self.elapsed_ms:.0f} ms) {counters}"


def run_check(name, fn, *args, **kwargs):
    """Run fn -> (status, witness, counters[, details]) and wrap it in a report."""
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    status, witness, counters = out[:3]
    details = out[3] if len(out) > 3 else {}
    rep = VerificationReport(name, status, witness, counters, details=details)
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return rep
