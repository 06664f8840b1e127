"""Check parameters, reports and the tally that fills them."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from ..gf_tower import FieldCtx, field as make_field

MAX_WITNESSES = 10


class HypothesisError(ValueError):
    """The parameters violate a hypothesis of the statement being checked."""


class UsageError(ValueError):
    """The request is malformed or not supported for these parameters."""


@dataclass(frozen=True)
class CheckParams:
    statement: str
    p: int
    h: int
    n: int
    k: int | None = None
    mode: str = "sample"
    samples: int = 20
    seed: int = 0
    irreducible: tuple | None = None

    @property
    def q(self) -> int:
        return self.p**self.h

    def ctx(self) -> FieldCtx:
        irr = list(self.irreducible) if self.irreducible else None
        return make_field(self.p, self.h, self.n, irr)

    def rng(self, i) -> random.Random:
        """Independent stream for sample i, so sample order never matters."""
        return random.Random(f"{self.seed}-{i}")

    def to_json(self) -> dict:
        d = {"p": self.p, "h": self.h, "n": self.n, "q": self.q, "k": self.k}
        if self.mode == "sample":
            d["samples"] = self.samples
        return d


@dataclass
class Report:
    statement: str
    params: dict
    mode: str
    seed: int
    checked: int = 0
    passed: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def verdict(self) -> str:
        return "pass" if self.failed == 0 else "fail"

    def to_json(self) -> dict:
        return {
            "statement": self.statement, "params": self.params, "mode": self.mode,
            "seed": self.seed, "checked": self.checked, "passed": self.passed,
            "failed": self.failed, "witnesses": self.witnesses,
            "elapsed_ms": self.elapsed_ms, "verdict": self.verdict,
        }

    def dumps(self, timing: bool = True) -> str:
        d = self.to_json()
        if not timing:
            d.pop("elapsed_ms")
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        return cls(d["statement"], d["params"], d["mode"], d["seed"], d["checked"], d["passed"],
                   d["failed"], d["witnesses"], d["elapsed_ms"])


class Tally:
    """Counts checked objects; keeps the first few failure witnesses."""

    def __init__(self, report: Report):
        self.report = report

    def check(self, ok: bool, witness=None) -> bool:
        r = self.report
        r.checked += 1
        if ok:
            r.passed += 1
        else:
            self._fail(witness)
        return ok

    def global_check(self, ok: bool, witness=None) -> bool:
        """A consistency condition over the whole enumeration; counted only when it fails."""
        if not ok:
            self._fail(witness)
        return ok

    def _fail(self, witness):
        r = self.report
        r.failed += 1
        if len(r.witnesses) < MAX_WITNESSES:
            w = witness() if callable(witness) else witness
            r.witnesses.append(w if w is not None else {})
