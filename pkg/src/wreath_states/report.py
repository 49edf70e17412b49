"""Machine-readable results of property checks."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field


@dataclass
class CheckReport:
    """Outcome of one named check.

    ``passed`` holds exactly when every residual is within ``tolerance``;
    ``details`` lists failing instances (elements in the text grammar).
    """

    name: str
    passed: bool
    worst_residual: float
    samples: int
    seed: int
    tolerance: float = 0.0
    property: str = ""
    details: list = field(default_factory=list)

    @classmethod
    def from_residuals(cls, name, residuals, tolerance, seed=0, prop="", labels=None, extra=None):
        """Build a report from ``(residual, label)`` data; NaN counts as a failure."""
        residuals = [float(r) for r in residuals]
        labels = labels or [None] * len(residuals)
        worst = max(residuals, default=0.0)
        if any(math.isnan(r) for r in residuals):
            worst = float("nan")
        failing = [
            {"instance": lab, "residual": r}
            for r, lab in zip(residuals, labels)
            if not r <= tolerance
        ]
        details = failing[:20] + list(extra or [])
        return cls(name, not failing, worst, len(residuals), seed, tolerance, prop, details)

    @classmethod
    def failure(cls, name, message, seed=0, prop=""):
        return cls(name, False, float("inf"), 0, seed, 0.0, prop, [{"error": message}])

    def to_dict(self) -> dict:
        out = asdict(self)
        if not math.isfinite(out["worst_residual"]):
            out["worst_residual"] = str(out["worst_residual"])
        return out


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)
