"""Color partitions into distinct parts and their bijection with doubly rooted partitions.

Three families share one engine, differing only in the alphabet of colored
parts:

* ``plain``: a part 2^i comes in i+3 colors;
* ``pow``:   a part 2^i comes in floor(i/d)+3 colors;
* ``odd``:   parts 2^i (2d+1)^j; pure powers of two come in three colors, all
  other parts in one.

Colored parts are totally ordered by (value, color).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Iterator

from .partitions import MalformedInput, Partition, PartitionFamily, iter_family
from .rooted import MapAudit, RootedPartition, audit_map, enumerate_rooted, split_two_ones, two_ones

ColoredPart = tuple[int, int]  # (value, color)


@dataclass(frozen=True)
class ColorFamily:
    kind: str = "plain"
    d: int = 1

    def __post_init__(self):
        if self.kind not in ("plain", "pow", "odd"):
            raise ValueError(f"unknown color family {self.kind!r}")
        if self.kind != "plain" and self.d < 1:
            raise ValueError("color family parameter d must be >= 1")

    @property
    def odd_base(self) -> int:
        return 2 * self.d + 1

    def palette(self, value: int) -> int:
        """Number of colors available to a part of this value (0 if the value is not allowed)."""
        if value < 1:
            return 0
        i, rest = _split_two(value)
        if self.kind == "odd":
            if rest == 1:
                return 3
            b = self.odd_base
            while rest % b == 0:
                rest //= b
            return 1 if rest == 1 else 0
        if rest != 1:
            return 0
        if self.kind == "plain":
            return i + 3
        return i // self.d + 3

    def values(self, m: int) -> list[int]:
        """Allowed part values not exceeding ``m``, increasing."""
        return [v for v in range(1, m + 1) if self.palette(v)]

    def alphabet(self, m: int) -> list[ColoredPart]:
        """Colored parts of size at most ``m`` in decreasing order."""
        return [(v, c) for v in reversed(self.values(m)) for c in range(self.palette(v), 0, -1)]

    def __str__(self) -> str:
        return {"plain": "Q", "pow": f"Q(.,2^{self.d})", "odd": f"Q(.,{self.odd_base})"}[self.kind]


PLAIN = ColorFamily("plain")


def _split_two(v: int) -> tuple[int, int]:
    i = 0
    while v % 2 == 0:
        v //= 2
        i += 1
    return i, v


@dataclass(frozen=True)
class ColoredPartition:
    parts: tuple[ColoredPart, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(self.parts, reverse=True))
        if len(set(ps)) != len(ps):
            raise ValueError(f"colored parts must be distinct: {self.parts}")
        object.__setattr__(self, "parts", ps)

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    def fits(self, family: ColorFamily) -> bool:
        return all(1 <= c <= family.palette(v) for v, c in self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(f"{v}_{c}" for v, c in self.parts) + ")"

    @classmethod
    def parse(cls, text: str) -> "ColoredPartition":
        """Parse ``(4_4,2_3,1_2)``."""
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"not a colored partition literal: {text!r}")
        body = s[1:-1].strip()
        parts = []
        for tok in body.split(",") if body else []:
            v, c = tok.strip().split("_")
            parts.append((int(v), int(c)))
        return cls(tuple(parts))


def _distinct(m: int, alphabet: list[ColoredPart], start: int) -> Iterator[list[ColoredPart]]:
    if m == 0:
        yield []
        return
    for idx in range(start, len(alphabet)):
        part = alphabet[idx]
        if part[0] <= m:
            for rest in _distinct(m - part[0], alphabet, idx + 1):
                yield [part] + rest


def iter_Q(family: ColorFamily, m: int) -> Iterator[ColoredPartition]:
    if m < 0:
        return
    for parts in _distinct(m, family.alphabet(m), 0):
        yield ColoredPartition(tuple(parts))


def enumerate_Q(family: ColorFamily, m: int) -> list[ColoredPartition]:
    """Every partition of ``m`` into distinct colored parts, decreasing lexicographically."""
    return list(iter_Q(family, m))


@lru_cache(maxsize=None)
def count_Q(family: ColorFamily, m: int) -> int:
    """|Q(m)| by a 0/1 knapsack over the colored alphabet."""
    if m < 0:
        return 0
    dp = [1] + [0] * m
    for v, _ in family.alphabet(m):
        for s in range(m, v - 1, -1):
            dp[s] += dp[s - v]
    return dp[m]


def count_Q_via_binomials(family: ColorFamily, m: int) -> int:
    """Sum over uncolored partitions of m into allowed values of prod C(palette(v), m_v)."""
    if m < 0:
        return 0
    vals = family.values(m)
    if family.kind == "odd":
        partitions = _partitions_into(m, tuple(reversed(vals)))
    else:
        partitions = iter_family(PartitionFamily("binary", m))
    return sum(prod(comb(family.palette(v), c) for v, c in lam.mults) for lam in partitions)


def _partitions_into(m: int, values: tuple[int, ...]) -> Iterator[Partition]:
    def rec(rest: int, idx: int) -> Iterator[list[tuple[int, int]]]:
        if rest == 0:
            yield []
            return
        if idx == len(values):
            return
        v = values[idx]
        for c in range(rest // v, -1, -1):
            for tail in rec(rest - c * v, idx + 1):
                yield ([(v, c)] + tail) if c else tail

    for mults in rec(m, 0):
        yield Partition(tuple(mults))


def _binary_digits(x: int) -> list[int]:
    out, p = [], 1
    while x:
        if x & 1:
            out.append(p)
        x >>= 1
        p <<= 1
    return out


def _require(cond: bool, msg: str):
    if not cond:
        raise MalformedInput(msg)


def bij_thm8b(lam: RootedPartition) -> ColoredPartition:
    """Doubly rooted binary partition of n+2 (both roots 1) to a partition in Q(n).

    lam = mu + (1^) + nu + (1^) + pi.  A part 2^t of multiplicity s in mu
    contributes the binary digits of s*2^t, each colored t+3; |nu| in binary
    gets color 2 and |pi| in binary gets color 1.
    """
    mu, k, l = split_two_ones(lam)
    parts: list[ColoredPart] = []
    for v, s in mu.mults:
        t, rest = _split_two(v)
        _require(rest == 1, f"{lam} is not a binary partition")
        parts += [(p, t + 3) for p in _binary_digits(s * v)]
    parts += [(p, 2) for p in _binary_digits(k)]
    parts += [(p, 1) for p in _binary_digits(l)]
    return ColoredPartition(tuple(parts))


def bij_thm8b_inverse(q: ColoredPartition) -> RootedPartition:
    counts: dict[int, int] = {}
    k = l = 0
    for v, c in q.parts:
        u, rest = _split_two(v)
        _require(rest == 1 and 1 <= c <= u + 3, f"{v}_{c} is not a part of {PLAIN}")
        if c == 1:
            l += v
        elif c == 2:
            k += v
        else:
            t = c - 3
            counts[2**t] = counts.get(2**t, 0) + v // 2**t
    return two_ones(Partition.from_mults(counts), k, l)


def bij_thm10b(lam: RootedPartition, d: int) -> ColoredPartition:
    """(2d+1)-ary doubly rooted partition of n+2 to a partition in Q(n, 2d+1).

    A part (2d+1)^t of multiplicity s in mu gives parts 2^r (2d+1)^t of color 1
    for the binary digits 2^r of s; nu and pi become binary parts colored 2 and 3.
    """
    b = 2 * d + 1
    mu, k, l = split_two_ones(lam)
    parts: list[ColoredPart] = []
    for v, s in mu.mults:
        x = v
        while x % b == 0:
            x //= b
        _require(x == 1, f"{lam} is not a {b}-ary partition")
        parts += [(p * v, 1) for p in _binary_digits(s)]
    parts += [(p, 2) for p in _binary_digits(k)]
    parts += [(p, 3) for p in _binary_digits(l)]
    return ColoredPartition(tuple(parts))


def bij_thm10b_inverse(q: ColoredPartition, d: int) -> RootedPartition:
    fam = ColorFamily("odd", d)
    counts: dict[int, int] = {}
    k = l = 0
    for v, c in q.parts:
        _require(1 <= c <= fam.palette(v), f"{v}_{c} is not a part of {fam}")
        if c == 2:
            k += v
        elif c == 3:
            l += v
        else:
            r, odd = _split_two(v)
            counts[odd] = counts.get(odd, 0) + 2**r
    return two_ones(Partition.from_mults(counts), k, l)


def enumerate_domain(n: int, kind: str = "binary", d: int = 2) -> list[RootedPartition]:
    """Doubly rooted partitions of ``n`` with both roots equal to 1."""
    return enumerate_rooted(n, (1, 1), kind, d)


def color_map_audits(n: int, ds: tuple[int, ...] = (1, 2, 3)) -> list[MapAudit]:
    """Audit the color bijections from doubly rooted partitions of n+2 onto partitions of n."""
    out = [audit_map("thm8b", n, enumerate_domain(n + 2), iter_Q(PLAIN, n), bij_thm8b, bij_thm8b_inverse)]
    for d in ds:
        out.append(
            audit_map(
                f"thm10b(d={d})",
                n,
                enumerate_domain(n + 2, "dary", 2 * d + 1),
                iter_Q(ColorFamily("odd", d), n),
                lambda lam, d=d: bij_thm10b(lam, d),
                lambda q, d=d: bij_thm10b_inverse(q, d),
            )
        )
    return out


__all__ = [
    "ColorFamily",
    "ColoredPartition",
    "PLAIN",
    "iter_Q",
    "enumerate_Q",
    "count_Q",
    "count_Q_via_binomials",
    "bij_thm8b",
    "bij_thm8b_inverse",
    "bij_thm10b",
    "bij_thm10b_inverse",
    "enumerate_domain",
    "color_map_audits",
]
