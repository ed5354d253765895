"""Three-valued verdicts with certificates, obstructions and bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


class EnumerationCapExceeded(Exception):
    """An enumeration certificate would need more than the configured cap."""


@dataclass
class Verdict:
    outcome: str
    value: int | None = None
    certificate: Any = None
    obstruction: dict | None = None
    bounds: dict | None = None
    caveats: tuple[str, ...] = ()

    @property
    def is_yes(self) -> bool:
        return self.outcome == YES

    @property
    def is_no(self) -> bool:
        return self.outcome == NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome == UNKNOWN

    def with_caveat(self, note: str) -> "Verdict":
        if note in self.caveats:
            return self
        return Verdict(self.outcome, self.value, self.certificate,
                       self.obstruction, self.bounds, self.caveats + (note,))

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {"outcome": self.outcome}
        if self.value is not None:
            out["value"] = self.value
        if self.certificate is not None:
            out["certificate"] = jsonable(self.certificate)
        if self.obstruction is not None:
            out["obstruction"] = jsonable(self.obstruction)
        if self.bounds:
            out["bounds"] = jsonable(self.bounds)
        if self.caveats:
            out["caveats"] = list(self.caveats)
        return out


def yes(value: int | None = None, certificate: Any = None, bounds: dict | None = None,
        caveats: tuple[str, ...] = ()) -> Verdict:
    return Verdict(YES, value, certificate, None, bounds, caveats)


def no(obstruction: dict, bounds: dict | None = None,
       caveats: tuple[str, ...] = ()) -> Verdict:
    return Verdict(NO, None, None, obstruction, bounds, caveats)


def unknown(bounds: dict | None = None, caveats: tuple[str, ...] = ()) -> Verdict:
    return Verdict(UNKNOWN, None, None, None, bounds, caveats)


def jsonable(obj):
    """Recursively convert verdict payloads to JSON-ready structures."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [[int(x) for x in row] for row in obj] if obj.ndim == 2 else [int(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_jsonable"):
        return obj.to_jsonable()
    return repr(obj)
