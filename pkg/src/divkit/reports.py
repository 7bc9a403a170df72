"""Per-inequality check reports with lossless JSON round-tripping."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
DEGENERATE = "degenerate"

DEFAULT_TOLERANCE = 1e-10


def ext_to_json(x: float) -> float | str:
    """Extended reals as JSON-safe values: infinities and NaN become strings."""
    if math.isnan(x):
        return "nan"
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return float(x)


def ext_from_json(x: float | str) -> float:
    if isinstance(x, str):
        return {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}[x]
    return float(x)


@dataclass(frozen=True)
class CheckReport:
    """Verdict for one inequality on one instance.

    ``margin`` is oriented so that the check passes iff
    ``margin >= -tolerance``; a NaN anywhere forces a failure.
    """

    check_id: str
    instance: Mapping[str, Any]
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    verdict: str
    detail: str = ""

    @classmethod
    def from_margin(
        cls,
        check_id: str,
        instance: Mapping[str, Any],
        lhs: float,
        rhs: float,
        margin: float,
        tolerance: float = DEFAULT_TOLERANCE,
        detail: str = "",
    ) -> "CheckReport":
        if any(math.isnan(v) for v in (lhs, rhs, margin)):
            return cls(check_id, dict(instance), lhs, rhs, margin, tolerance, FAIL,
                       detail or "nan encountered")
        verdict = PASS if margin >= -tolerance else FAIL
        return cls(check_id, dict(instance), lhs, rhs, margin, tolerance, verdict, detail)

    @classmethod
    def skipped(
        cls, check_id: str, instance: Mapping[str, Any], reason: str,
        tolerance: float = DEFAULT_TOLERANCE,
    ) -> "CheckReport":
        return cls(check_id, dict(instance), 0.0, 0.0, 0.0, tolerance, SKIPPED, reason)

    @classmethod
    def degenerate(
        cls, check_id: str, instance: Mapping[str, Any], reason: str,
        tolerance: float = DEFAULT_TOLERANCE,
    ) -> "CheckReport":
        return cls(check_id, dict(instance), 0.0, 0.0, 0.0, tolerance, DEGENERATE, reason)

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, SKIPPED, DEGENERATE)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "instance": dict(self.instance),
            "lhs": ext_to_json(self.lhs),
            "rhs": ext_to_json(self.rhs),
            "margin": ext_to_json(self.margin),
            "tolerance": float(self.tolerance),
            "verdict": self.verdict,
            "detail": self.detail,
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping[str, Any]) -> "CheckReport":
        return cls(
            check_id=str(obj["check_id"]),
            instance=dict(obj["instance"]),
            lhs=ext_from_json(obj["lhs"]),
            rhs=ext_from_json(obj["rhs"]),
            margin=ext_from_json(obj["margin"]),
            tolerance=float(obj["tolerance"]),
            verdict=str(obj["verdict"]),
            detail=str(obj.get("detail", "")),
        )


def summarize(reports: list[CheckReport]) -> dict[str, Any]:
    counts = {PASS: 0, FAIL: 0, SKIPPED: 0, DEGENERATE: 0}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return {
        "total": len(reports),
        "pass": counts[PASS],
        "fail": counts[FAIL],
        "skipped": counts[SKIPPED],
        "degenerate": counts[DEGENERATE],
        "all_pass": counts[FAIL] == 0,
    }


def reports_to_json(payload: Mapping[str, Any]) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
