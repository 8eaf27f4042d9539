"""Integer partitions stored as multiplicity maps, plus exhaustive enumerators.

A partition is canonically a map ``value -> multiplicity``; the weakly
decreasing sequence of parts is a derived view.  Enumerators yield partitions
in strictly decreasing lexicographic order of that view.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping


class NotDivisible(ValueError):
    """Raised by :func:`unscale` when a part is not a multiple of the divisor."""


class MalformedInput(ValueError):
    """Raised when an object does not belong to the domain of a map."""


@dataclass(frozen=True)
class Partition:
    # (value, multiplicity) pairs, values strictly decreasing
    mults: tuple[tuple[int, int], ...] = ()
    weight: int = field(init=False, compare=False, repr=False)
    length: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        prev = None
        w = ln = 0
        for v, c in self.mults:
            if v < 1 or c < 1:
                raise ValueError(f"invalid part {v} with multiplicity {c}")
            if prev is not None and v >= prev:
                raise ValueError("multiplicity pairs must have strictly decreasing values")
            prev = v
            w += v * c
            ln += c
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "length", ln)

    @classmethod
    def from_mults(cls, mults: Mapping[int, int]) -> "Partition":
        return cls(tuple(sorted(((v, c) for v, c in mults.items() if c), reverse=True)))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return cls.from_mults(counts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the ``(4,2,2,1)`` text form; ``()`` is the empty partition."""
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"not a partition literal: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        parts = [int(tok) for tok in body.split(",")]
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {text!r}")
        return cls.from_parts(parts)

    @property
    def parts(self) -> tuple[int, ...]:
        out: list[int] = []
        for v, c in self.mults:
            out.extend([v] * c)
        return tuple(out)

    def as_dict(self) -> dict[int, int]:
        return dict(self.mults)

    def m(self, i: int) -> int:
        """Multiplicity of the part ``i``."""
        for v, c in self.mults:
            if v == i:
                return c
            if v < i:
                break
        return 0

    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.mults)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


EMPTY = Partition()


@dataclass(frozen=True)
class PartitionFamily:
    """``kind`` is ``"all"``, ``"binary"`` or ``"dary"``; ``min_length`` filters by length."""

    kind: str
    n: int
    min_length: int = 0
    d: int = 2

    def __post_init__(self):
        if self.kind not in ("all", "binary", "dary"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "dary" and self.d < 2:
            raise ValueError("d-ary families need d >= 2")
        if self.kind == "binary":
            object.__setattr__(self, "d", 2)

    @property
    def base(self) -> int | None:
        return None if self.kind == "all" else self.d

    def allowed_parts(self) -> tuple[int, ...]:
        return allowed_parts(self.base, self.n)


def allowed_parts(base: int | None, n: int) -> tuple[int, ...]:
    """Part values usable in a partition of ``n``, largest first."""
    if n < 1:
        return ()
    if base is None:
        return tuple(range(n, 0, -1))
    out = []
    p = 1
    while p <= n:
        out.append(p)
        p *= base
    return tuple(reversed(out))


def is_power(x: int, base: int) -> bool:
    if x < 1:
        return False
    while x % base == 0:
        x //= base
    return x == 1


def _gen(n: int, values: tuple[int, ...], start: int) -> Iterator[list[tuple[int, int]]]:
    # values is decreasing; choose a multiplicity for values[start], largest first
    if n == 0:
        yield []
        return
    if start >= len(values):
        return
    v = values[start]
    if start == len(values) - 1:
        if n % v == 0:
            yield [(v, n // v)]
        return
    for c in range(n // v, -1, -1):
        for rest in _gen(n - c * v, values, start + 1):
            yield ([(v, c)] + rest) if c else rest


def iter_family(family: PartitionFamily) -> Iterator[Partition]:
    if family.n < 0:
        return
    for mults in _gen(family.n, family.allowed_parts(), 0):
        p = Partition(tuple(mults))
        if p.length >= family.min_length:
            yield p


def enumerate_family(family: PartitionFamily) -> list[Partition]:
    """Every partition of the family, once each, in decreasing lexicographic order."""
    return list(iter_family(family))


def family(kind: str, n: int, k: int = 0, d: int = 2) -> PartitionFamily:
    return PartitionFamily(kind, n, k, d)


@lru_cache(maxsize=None)
def _count_table(base: int | None, n: int, kmax: int) -> tuple[int, tuple[int, ...]]:
    # total count and counts by exact length < kmax, via a coin-change DP
    total = [1] + [0] * n
    short = [[0] * kmax for _ in range(n + 1)]
    if kmax:
        short[0][0] = 1
    for v in allowed_parts(base, n):
        for s in range(v, n + 1):
            total[s] += total[s - v]
            for ln in range(1, kmax):
                short[s][ln] += short[s - v][ln - 1]
    return total[n], tuple(short[n])


def count_family(family: PartitionFamily) -> int:
    """Size of the family computed by dynamic programming, without enumeration."""
    if family.n < 0:
        return 0
    total, short = _count_table(family.base, family.n, family.min_length)
    return total - sum(short)


def count_binary(n: int) -> int:
    """|B(n)|, zero for negative ``n``."""
    if n < 0:
        return 0
    return _count_table(2, n, 0)[0]


def count_dary(n: int, d: int) -> int:
    if n < 0:
        return 0
    return _count_table(d, n, 0)[0]


def count_all(n: int) -> int:
    if n < 0:
        return 0
    return _count_table(None, n, 0)[0]


def direct_sum(lam: Partition, nu: Partition) -> Partition:
    counts = lam.as_dict()
    for v, c in nu.mults:
        counts[v] = counts.get(v, 0) + c
    return Partition.from_mults(counts)


def scale(lam: Partition, m: int) -> Partition:
    if m < 1:
        raise ValueError("scale factor must be positive")
    return Partition(tuple((v * m, c) for v, c in lam.mults))


def unscale(mu: Partition, m: int) -> Partition:
    if m < 1:
        raise ValueError("scale factor must be positive")
    bad = [v for v, _ in mu.mults if v % m]
    if bad:
        raise NotDivisible(f"parts {bad} of {mu} are not multiples of {m}")
    return Partition(tuple((v // m, c) for v, c in mu.mults))


def ones(k: int) -> Partition:
    return Partition(((1, k),)) if k > 0 else EMPTY
