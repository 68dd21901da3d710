"""Verification reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "kneser-lab/1"


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(x) for x in obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``passed`` is True when the asserted relation holds *or* when its
    hypothesis is not met (``hypothesis_met=False``); only a genuine violation
    sets it to False, and then ``witness`` carries the counterexample.
    """

    check: str
    passed: bool
    hypothesis_met: bool = True
    witness: Any = None
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.hypothesis_met:
            return "hypothesis-not-met"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "check": self.check,
            "hypothesis_met": self.hypothesis_met,
            "pass": self.passed,
            "witness": _plain(self.witness),
            "details": _plain(self.details),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class TheoremReport(VerificationReport):
    """Report of an exhaustive sweep.

    ``max_found`` is the largest family size seen, ``bound`` the claimed upper
    bound; ``universe`` counts what was scanned (subspaces or DFS nodes).
    """

    theorem: str = ""
    params: dict = field(default_factory=dict)
    universe: int = 0
    max_found: int = 0
    bound: int = 0
    attained: bool = False
    extremal: list = field(default_factory=list)
    n_extremal: int = 0
    inconclusive: bool = False

    def to_dict(self) -> dict:
        d = super().to_dict()
        d.update({
            "theorem": self.theorem,
            "params": _plain(self.params),
            "universe": self.universe,
            "max": self.max_found,
            "bound": self.bound,
            "attained": self.attained,
            "n_extremal": self.n_extremal,
            "extremal": _plain(self.extremal),
            "inconclusive": self.inconclusive,
        })
        return d


def dumps(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))
