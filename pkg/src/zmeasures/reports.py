"""Verification report records shared by the ``check_*`` functions."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .scalar import ExactScalar, format_scalar


@dataclass
class CheckReport:
    identity: str
    anchor: str
    n: int
    params: dict[str, Any]
    status: bool
    counterexample: Any = None
    cases: int = 0

    @property
    def passed(self) -> bool:
        return self.status

    def to_dict(self) -> dict[str, Any]:
        out = {
            "identity": self.identity,
            "anchor": self.anchor,
            "n": self.n,
            "params": {k: jsonable(v) for k, v in self.params.items()},
            "status": "pass" if self.status else "fail",
            "cases": self.cases,
        }
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        return out


@dataclass
class SuiteReport:
    suite: str
    cases: list[CheckReport] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.status for c in self.cases)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "cases": [c.to_dict() for c in self.cases],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def jsonable(value: Any) -> Any:
    """Exact values become strings (``"3/7"``, ``"1+2i"``); containers recurse."""
    if isinstance(value, (ExactScalar, Fraction)):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json_obj"):
        return value.to_json_obj()
    return value
