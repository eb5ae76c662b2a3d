"""Check records and reports.

A report is a list of records, one per check id.  Serialized as
line-delimited JSON with the fixed field order ``id, anchor, status,
detail, seed``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

__all__ = ["CheckRecord", "Report", "Check", "sample_words", "sample_pairs", "DEFAULT_SEED"]

DEFAULT_SEED = 20250101
MAX_COUNTEREXAMPLES = 5


@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str
    detail: dict[str, Any]
    seed: int | None = None

    @property
    def passed(self) -> bool:
        # "annotated": a documented deviation with its difference element attached
        return self.status in ("pass", "annotated")

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.id, "anchor": self.anchor, "status": self.status, "detail": self.detail, "seed": self.seed},
            ensure_ascii=False,
            sort_keys=False,
        )


class Check:
    """Accumulates counterexamples for one check id."""

    def __init__(self, id: str, anchor: str, seed: int | None = None):
        self.id = id
        self.anchor = anchor
        self.seed = seed
        self.checked = 0
        self.failures: list[dict] = []
        self.failure_count = 0
        self.notes: dict[str, Any] = {}

    def compare(self, element: str, lhs, rhs) -> bool:
        self.checked += 1
        if lhs == rhs:
            return True
        self.fail(element, lhs=str(lhs), rhs=str(rhs), difference=_difference(lhs, rhs))
        return False

    def fail(self, element: str, **info) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_COUNTEREXAMPLES:
            self.failures.append({"element": element, **info})

    def record(self) -> CheckRecord:
        detail = {"checked": self.checked, "failures": self.failure_count}
        if self.failures:
            detail["counterexamples"] = self.failures
        detail.update(self.notes)
        return CheckRecord(self.id, self.anchor, "fail" if self.failure_count else "pass", detail, self.seed)


def _difference(lhs, rhs) -> str:
    try:
        return str(lhs - rhs)
    except Exception:  # incomparable shapes, e.g. different arities
        return "<incomparable>"


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)
    header: dict[str, Any] = field(default_factory=dict)

    def add(self, rec: CheckRecord | Check) -> None:
        if isinstance(rec, Check):
            rec = rec.record()
        self.records.append(rec)

    def extend(self, other: Report | Iterable[CheckRecord], prefix: str = "") -> None:
        recs = other.records if isinstance(other, Report) else other
        for r in recs:
            if prefix:
                r = CheckRecord(prefix + r.id, r.anchor, r.status, r.detail, r.seed)
            self.records.append(r)
        if isinstance(other, Report):
            for k, v in other.header.items():
                self.header.setdefault(k, v)

    def sorted(self) -> Report:
        return Report(sorted(self.records, key=lambda r: r.id), dict(self.header))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failed(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def failures(self) -> list[dict]:
        """Flattened counterexamples of every failing record."""
        out = []
        for r in self.records:
            if r.passed:
                continue
            examples = r.detail.get("counterexamples") or [{"element": "-", "detail": r.detail}]
            out.extend({"id": r.id, **e} for e in examples)
        return out

    def get(self, id: str) -> CheckRecord:
        for r in self.records:
            if r.id == id:
                return r
        raise KeyError(id)

    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def to_jsonl(self) -> str:
        lines = []
        if self.header:
            lines.append(json.dumps({"id": "_header", "anchor": "", "status": "info", "detail": self.header, "seed": None}, ensure_ascii=False))
        lines.extend(r.to_json() for r in sorted(self.records, key=lambda r: r.id))
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        return "\n".join(f"{r.status.upper():9} {r.id}" for r in sorted(self.records, key=lambda r: r.id))


def sample_words(presentation, degree: int, samples: int, seed: int, min_degree: int = 1) -> list[tuple]:
    """All generators plus, per degree, up to ``samples`` normal words.

    A degree whose normal words number at most ``samples`` is taken whole,
    otherwise a uniform sample without replacement is drawn.
    """
    rng = random.Random(seed)
    out: list[tuple] = []
    for d in range(min_degree, degree + 1):
        words = list(presentation.normal_words(d))
        if d == 1 or len(words) <= samples:
            out.extend(words)
        else:
            out.extend(sorted(rng.sample(words, samples)))
    return out


def sample_pairs(pool: Sequence, count: int, seed: int) -> list[tuple]:
    rng = random.Random(seed + 1)
    if not pool:
        return []
    return [(rng.choice(pool), rng.choice(pool)) for _ in range(count)]
