"""Rooted binary partitions and the bijections on them.

A root is a pair ``(value, slot)`` where ``slot`` is the 0-based position of
the hatted part among the parts equal to ``value``, read left to right in the
weakly decreasing sequence.  Direct sums put the left operand first, so the
right operand's slots are shifted by the left operand's multiplicities.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .partitions import (
    EMPTY,
    MalformedInput,
    Partition,
    PartitionFamily,
    direct_sum,
    is_power,
    iter_family,
    ones,
    scale,
    unscale,
)


@dataclass(frozen=True)
class RootedPartition:
    base: Partition
    roots: tuple[tuple[int, int], ...]

    def __post_init__(self):
        roots = tuple(sorted(self.roots, key=lambda r: (-r[0], r[1])))
        if len(set(roots)) != len(roots):
            raise ValueError("two roots occupy the same slot")
        for v, s in roots:
            if not 0 <= s < self.base.m(v):
                raise ValueError(f"root {v} at slot {s} is not a part of {self.base}")
        object.__setattr__(self, "roots", roots)

    @property
    def weight(self) -> int:
        return self.base.weight

    def root_values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.roots)

    def slots(self, value: int) -> list[int]:
        return [s for v, s in self.roots if v == value]

    def __str__(self) -> str:
        hats = set(self.roots)
        out = []
        for v, c in self.base.mults:
            for s in range(c):
                out.append(("^" if (v, s) in hats else "") + str(v))
        return "(" + ",".join(out) + ")"

    @classmethod
    def parse(cls, text: str) -> "RootedPartition":
        """Parse ``(4,2,2,1,^1,1,1)``; a ``^`` marks a root."""
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"not a rooted partition literal: {text!r}")
        body = s[1:-1].strip()
        parts, roots, seen = [], [], {}
        for tok in body.split(",") if body else []:
            tok = tok.strip()
            hat = tok.startswith("^")
            v = int(tok[1:] if hat else tok)
            if hat:
                roots.append((v, seen.get(v, 0)))
            seen[v] = seen.get(v, 0) + 1
            parts.append(v)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {text!r}")
        return cls(Partition.from_parts(parts), tuple(roots))


def rooted(base: Partition, *roots: tuple[int, int]) -> RootedPartition:
    return RootedPartition(base, tuple(roots))


def rooted_sum(left: RootedPartition | Partition, right: RootedPartition | Partition) -> RootedPartition:
    """Direct sum keeping root positions; parts of ``left`` precede equal parts of ``right``."""
    if isinstance(left, Partition):
        left = RootedPartition(left, ())
    if isinstance(right, Partition):
        right = RootedPartition(right, ())
    shifted = tuple((v, s + left.base.m(v)) for v, s in right.roots)
    return RootedPartition(direct_sum(left.base, right.base), left.roots + shifted)


def _placements(lam: Partition, roots: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if len(roots) == 1:
        (i,) = roots
        for s in range(lam.m(i)):
            yield ((i, s),)
    elif len(roots) == 2:
        i, j = roots
        if i == j:
            for s, t in combinations(range(lam.m(i)), 2):
                yield ((i, s), (i, t))
        else:
            for s in range(lam.m(i)):
                for t in range(lam.m(j)):
                    yield ((i, s), (j, t))
    else:
        raise ValueError("only one or two roots are supported")


def placement_count(lam: Partition, roots: tuple[int, ...]) -> int:
    if len(roots) == 1:
        return lam.m(roots[0])
    i, j = roots
    if i == j:
        return comb(lam.m(i), 2)
    return lam.m(i) * lam.m(j)


def _check_roots(roots: Iterable[int], base: int | None) -> tuple[int, ...]:
    rs = tuple(roots)
    if base is not None and not all(is_power(r, base) for r in rs):
        raise ValueError(f"root values {rs} are not powers of {base}")
    return rs


def enumerate_rooted(n: int, roots: Iterable[int], kind: str = "binary", d: int = 2) -> list[RootedPartition]:
    """All rooted partitions of ``n`` in the family with the given root values."""
    fam = PartitionFamily(kind, n, 0, d)
    rs = _check_roots(roots, fam.base)
    return [RootedPartition(lam, pl) for lam in iter_family(fam) for pl in _placements(lam, rs)]


def count_rooted(n: int, roots: Iterable[int], kind: str = "binary", d: int = 2) -> int:
    """Same cardinality as :func:`enumerate_rooted`, summing placements per base partition."""
    fam = PartitionFamily(kind, n, 0, d)
    rs = _check_roots(roots, fam.base)
    return sum(placement_count(lam, rs) for lam in iter_family(fam))


def _without_ones(lam: Partition) -> Partition:
    return Partition(tuple((v, c) for v, c in lam.mults if v != 1))


def _require(cond: bool, msg: str):
    if not cond:
        raise MalformedInput(msg)


# BR_1(n) -> B(2n-2): split at the hatted 1; nu is the 1-hat and every 1 after it.
def bij_f_thm3f(lam: RootedPartition) -> Partition:
    _require(lam.root_values() == (1,), f"{lam} must have a single root equal to 1")
    (_, s), = lam.roots
    j = lam.base.m(1) - s
    mu = direct_sum(_without_ones(lam.base), ones(s))
    return direct_sum(scale(mu, 2), ones(2 * j - 2))


def bij_f_thm3f_inverse(lam: Partition) -> RootedPartition:
    k = lam.m(1)
    _require(k % 2 == 0, f"{lam} has an odd number of 1's")
    try:
        half = unscale(_without_ones(lam), 2)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    return rooted_sum(half, rooted(ones(k // 2 + 1), (1, 0)))


def two_ones(prefix: Partition, k: int, l: int) -> RootedPartition:
    # prefix, then 1-hat, then k ones, then 1-hat, then l ones
    p1 = prefix.m(1)
    base = direct_sum(prefix, ones(k + l + 2))
    return RootedPartition(base, ((1, p1), (1, p1 + k + 1)))


def split_two_ones(lam: RootedPartition) -> tuple[Partition, int, int]:
    """Decompose ``mu (+) (1^) (+) (1^k) (+) (1^) (+) (1^l)``; ``mu`` keeps the leading 1's."""
    _require(lam.root_values() == (1, 1), f"{lam} must have two roots equal to 1")
    (_, s1), (_, s2) = lam.roots
    m1 = lam.base.m(1)
    mu = direct_sum(_without_ones(lam.base), ones(s1))
    return mu, s2 - s1 - 1, m1 - s2 - 1


# BR_1(n) -> BR_{1,1}: nu holds all 1's; i ones precede the hat and j follow it.
def map_f_thm3g(lam: RootedPartition) -> RootedPartition:
    _require(lam.root_values() == (1,), f"{lam} must have a single root equal to 1")
    (_, s), = lam.roots
    i, j = s, lam.base.m(1) - s - 1
    mu = _without_ones(lam.base)
    return two_ones(unscale(mu, 2), i // 2, j // 2)


def map_f_thm3g_inverse(lam: RootedPartition, n: int) -> list[RootedPartition]:
    """Preimages of ``lam`` among single-rooted partitions of ``n``.

    For odd ``n`` exactly one preimage, chosen by the weight of ``lam``; for
    even ``n`` the full fiber of size two.
    """
    mu, k, l = split_two_ones(lam)
    prefix = scale(mu, 2)

    def build(before: int, after: int) -> RootedPartition:
        return rooted_sum(direct_sum(prefix, ones(before)), rooted(ones(after + 1), (1, 0)))

    if n % 2:
        if 2 * lam.weight == n + 1:
            return [build(2 * k + 1, 2 * l + 1)]
        if 2 * lam.weight == n + 3:
            return [build(2 * k, 2 * l)]
        raise MalformedInput(f"{lam} is not in the image of BR_1({n})")
    _require(2 * lam.weight == n + 2, f"{lam} is not in the image of BR_1({n})")
    return [build(2 * k, 2 * l + 1), build(2 * k + 1, 2 * l)]


# BR_2(n) -> BR_{1,1}(floor(n/2)+1): halve the non-1 parts, the 2-hat becomes the first 1-hat.
def bij_f_thm4e(lam: RootedPartition) -> RootedPartition:
    _require(lam.root_values() == (2,), f"{lam} must have a single root equal to 2")
    (_, s), = lam.roots
    i = lam.base.m(1)
    half = unscale(_without_ones(lam.base), 2)
    first = RootedPartition(half, ((1, s),))
    return rooted_sum(first, rooted(ones(i // 2 + 1), (1, 0)))


def bij_f_thm4e_inverse(lam: RootedPartition, n: int) -> RootedPartition:
    """Inverse at domain weight ``n``; ``n`` fixes the parity of the number of 1's."""
    _require(lam.root_values() == (1, 1), f"{lam} must have two roots equal to 1")
    _require(lam.weight == n // 2 + 1, f"{lam} is not in the image of BR_2({n})")
    (_, s1), (_, s2) = lam.roots
    l = lam.base.m(1) - s2 - 1
    i = 2 * l + n % 2
    # every 1 up to the second hat came from a 2 of the preimage
    mu = direct_sum(_without_ones(lam.base), ones(s2))
    return rooted_sum(RootedPartition(scale(mu, 2), ((2, s1),)), ones(i))


# BR_{1,1}(n) -> BR_{1,2}(n) or BR_{1,2}(n+1): nu (first hat plus the 1's up to
# the second hat) becomes ceil(k/2) twos with the first one hatted.
def bij_f_thm4f(lam: RootedPartition) -> RootedPartition:
    mu, between, after = split_two_ones(lam)
    k = between + 1
    c = (k + 1) // 2
    m2 = mu.m(2)
    base = direct_sum(direct_sum(mu, Partition(((2, c),))), ones(after + 1))
    return RootedPartition(base, ((2, m2), (1, mu.m(1))))


def bij_f_thm4f_inverse(lam: RootedPartition, n: int) -> RootedPartition:
    """Inverse at domain weight ``n``; ``lam`` has weight ``n`` (k even) or ``n + 1`` (k odd)."""
    _require(sorted(lam.root_values()) == [1, 2], f"{lam} must have roots 1 and 2")
    _require(lam.weight in (n, n + 1), f"{lam} is not in the image of BR_{{1,1}}({n})")
    s2 = dict(lam.roots)[2]
    s1 = dict(lam.roots)[1]
    c = lam.base.m(2) - s2
    k = 2 * c if lam.weight == n else 2 * c - 1
    counts = lam.base.as_dict()
    counts[2] -= c
    counts[1] -= s1
    rest = Partition.from_mults(counts)  # holds pi: the second hat and the 1's after it
    mu = direct_sum(_without_ones(rest), ones(s1))
    return two_ones(mu, k - 1, rest.m(1) - 1)


@dataclass
class MapAudit:
    name: str
    n: int
    domain_size: int
    codomain_size: int
    fiber_sizes: set[int]
    round_trip_failures: list[str]
    outside: list[str]
    expected_fiber: int = 1

    @property
    def passed(self) -> bool:
        return not self.round_trip_failures and not self.outside and self.covers

    @property
    def covers(self) -> bool:
        return self.fiber_sizes <= {self.expected_fiber} and self.codomain_size * self.expected_fiber == self.domain_size


def audit_map(name, n, domain, codomain, forward, inverse=None, fiber: int = 1) -> MapAudit:
    """Exhaustive check that ``forward`` maps ``domain`` onto ``codomain`` with every fiber of size ``fiber``.

    ``inverse(y)`` returns one preimage (or the list of all preimages when
    ``fiber > 1``); each must map back to ``y``.
    """
    domain = list(domain)
    cod = set(codomain)
    hits: dict = {}
    outside = []
    for x in domain:
        y = forward(x)
        if y not in cod:
            outside.append(f"{x} -> {y}")
        hits.setdefault(y, []).append(x)
    sizes = {len(v) for v in hits.values()}
    if len(hits) < len(cod):
        sizes.add(0)
    bad = []
    if inverse is not None:
        for y in cod:
            pre = inverse(y)
            pre = pre if isinstance(pre, list) else [pre]
            if sorted(map(str, pre)) != sorted(map(str, hits.get(y, []))) or any(forward(x) != y for x in pre):
                bad.append(str(y))
    return MapAudit(name, n, len(domain), len(cod), sizes, bad, outside, fiber)


def rooted_map_audits(n: int) -> list[MapAudit]:
    """Audit each map on rooted partitions at domain weight ``n`` (n >= 1)."""
    br1 = enumerate_rooted(n, (1,))
    out = [
        audit_map("thm3f", n, br1, iter_family(PartitionFamily("binary", 2 * n - 2)), bij_f_thm3f, bij_f_thm3f_inverse),
    ]
    if n % 2:
        cod3g = enumerate_rooted((n + 1) // 2, (1, 1)) + enumerate_rooted((n + 3) // 2, (1, 1))
        out.append(audit_map("thm3g", n, br1, cod3g, map_f_thm3g, lambda y: map_f_thm3g_inverse(y, n)))
    else:
        cod3g = enumerate_rooted(n // 2 + 1, (1, 1))
        out.append(audit_map("thm3g", n, br1, cod3g, map_f_thm3g, lambda y: map_f_thm3g_inverse(y, n), fiber=2))
    out.append(
        audit_map(
            "thm4e",
            n,
            enumerate_rooted(n, (2,)),
            enumerate_rooted(n // 2 + 1, (1, 1)),
            bij_f_thm4e,
            lambda y: bij_f_thm4e_inverse(y, n),
        )
    )
    out.append(
        audit_map(
            "thm4f",
            n,
            enumerate_rooted(n, (1, 1)),
            enumerate_rooted(n, (1, 2)) + enumerate_rooted(n + 1, (1, 2)),
            bij_f_thm4f,
            lambda y: bij_f_thm4f_inverse(y, n),
        )
    )
    return out


def lemma_rooted_count(n: int, power: int) -> int:
    """Sum over i <= power/2 of |BR_{2^i, 2^(power-i)}(n)|."""
    return sum(count_rooted(n, (2**i, 2 ** (power - i))) for i in range(power // 2 + 1))


__all__ = [
    "EMPTY",
    "RootedPartition",
    "rooted",
    "rooted_sum",
    "enumerate_rooted",
    "count_rooted",
    "placement_count",
    "bij_f_thm3f",
    "bij_f_thm3f_inverse",
    "map_f_thm3g",
    "map_f_thm3g_inverse",
    "bij_f_thm4e",
    "bij_f_thm4e_inverse",
    "bij_f_thm4f",
    "bij_f_thm4f_inverse",
    "lemma_rooted_count",
    "MapAudit",
    "audit_map",
    "rooted_map_audits",
    "two_ones",
    "split_two_ones",
]
