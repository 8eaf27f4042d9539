"""Per-n verification tables with CSV export."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass(frozen=True)
class Row:
    n: int
    lhs: int
    rhs: int
    status: str
    tag: str = ""


@dataclass
class VerificationReport:
    identity_id: str
    rows: list[Row] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def add(self, n: int, lhs: int, rhs: int, status: str | None = None, tag: str = "") -> Row:
        if status is None:
            status = PASS if lhs == rhs else FAIL
        row = Row(n, lhs, rhs, status, tag)
        self.rows.append(row)
        return row

    @property
    def passed(self) -> bool:
        return any(r.status == PASS for r in self.rows) and not any(r.status == FAIL for r in self.rows)

    @property
    def first_failure(self) -> Row | None:
        return next((r for r in self.rows if r.status == FAIL), None)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    def summary(self) -> str:
        c = self.counts()
        ns = [r.n for r in self.rows]
        rng = f"n={min(ns)}..{max(ns)}" if ns else "no rows"
        head = f"{'PASS' if self.passed else 'FAIL'} {self.identity_id} {rng} ({c[PASS]} pass, {c[FAIL]} fail, {c[SKIP]} skip)"
        bad = self.first_failure
        if bad is not None:
            head += f"; first failure n={bad.n}: {bad.lhs} != {bad.rhs}"
        return head

    def csv_rows(self) -> list[list]:
        return [[r.tag or self.identity_id, r.n, r.lhs, r.rhs, r.status] for r in self.rows]


CSV_HEADER = ["identity_id", "n", "lhs", "rhs", "status"]


def to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        w.writerows(rep.csv_rows())
    return buf.getvalue()
