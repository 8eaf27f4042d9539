"""Elementary symmetric partitions: the map ``pre_k`` and statistics of its images."""
from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from math import comb, isqrt
from typing import Callable, Iterable, Iterator

from .partitions import EMPTY, Partition, PartitionFamily, iter_family

DEFAULT_K_CAP = 6


@dataclass(frozen=True)
class ImageRecord:
    source: Partition
    image: Partition

    def to_json(self, n: int, k: int) -> str:
        return json.dumps(
            {"n": n, "k": k, "source": str(self.source), "image": str(self.image)},
            separators=(",", ":"),
        )


def _selections(mults: tuple[tuple[int, int], ...], k: int) -> Iterator[tuple[int, int]]:
    """Yield (product, number of position subsets) for each way of taking ``k`` parts.

    Parts are chosen by how many copies of each distinct value enter the
    product; the count of position subsets realizing that choice is a product
    of binomials.
    """
    if k == 0:
        yield 1, 1
        return
    if not mults:
        return
    (v, c), rest = mults[0], mults[1:]
    remaining = sum(cc for _, cc in rest)
    for take in range(min(c, k), -1, -1):
        if k - take > remaining:
            break
        head = v**take
        ways = comb(c, take)
        for prod, w in _selections(rest, k - take):
            yield head * prod, ways * w


def pre_k_counter(lam: Partition, k: int) -> Counter:
    out: Counter = Counter()
    if k < 1 or lam.length < k:
        return out
    for prod, ways in _selections(lam.mults, k):
        out[prod] += ways
    return out


def pre_k(lam: Partition, k: int) -> Partition:
    """Partition whose parts are the summands of ``e_k`` evaluated at the parts of ``lam``.

    Returns the empty partition when ``lam`` has fewer than ``k`` parts.
    """
    if lam.length < k:
        return EMPTY
    return Partition.from_mults(pre_k_counter(lam, k))


def pre_k_bruteforce(lam: Partition, k: int) -> Partition:
    """Same map by explicit expansion over position subsets; kept as a test oracle."""
    parts = lam.parts
    return Partition.from_parts(math.prod(c) for c in itertools.combinations(parts, k))


def pre_h(lam: Partition, k: int) -> Partition:
    """Partition of the summands of the complete homogeneous ``h_k`` at the parts of ``lam``.

    Monomials range over multisets of positions, so each distinct monomial is
    one summand even when parts repeat.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    parts = lam.parts
    return Partition.from_parts(
        math.prod(c) for c in itertools.combinations_with_replacement(parts, k)
    )


def image_multiset(family: PartitionFamily, k: int) -> list[ImageRecord]:
    """One record per source partition of length at least ``k``; images are not deduplicated."""
    if family.min_length != k:
        family = PartitionFamily(family.kind, family.n, k, family.d)
    return [ImageRecord(lam, pre_k(lam, k)) for lam in iter_family(family)]


def m_total(records: Iterable[ImageRecord], i: int) -> int:
    return sum(r.image.m(i) for r in records)


def image_mult_rec(lam: Partition, j: int) -> int:
    """Multiplicity of ``j`` in ``pre_2(lam)`` from the multiplicities of ``lam`` alone."""
    mult = lam.as_dict()
    total = 0
    for e, me in mult.items():
        if j % e:
            continue
        f = j // e
        if e < f:
            total += me * mult.get(f, 0)
    r = isqrt(j)
    if r * r == j:
        total += comb(mult.get(r, 0), 2)
    return total


@dataclass
class InjectivityReport:
    family: str
    k: int
    n_values: list[int]
    checked: int = 0
    collision: tuple[Partition, Partition, Partition] | None = None
    collision_n: int | None = None

    @property
    def passed(self) -> bool:
        return self.collision is None

    def summary(self) -> str:
        ns = f"n={self.n_values[0]}..{self.n_values[-1]}" if self.n_values else "n=()"
        if self.passed:
            return f"PASS injectivity {self.family} k={self.k} {ns} ({self.checked} sources)"
        a, b, img = self.collision
        return (
            f"FAIL injectivity {self.family} k={self.k} at n={self.collision_n}: "
            f"pre_{self.k}{a} = pre_{self.k}{b} = {img}"
        )


def check_injectivity(
    kind: str,
    n_values: Iterable[int],
    k: int,
    d: int = 2,
    where: Callable[[Partition], bool] | None = None,
) -> InjectivityReport:
    """Hash every image over the given weights and stop at the first collision.

    ``where`` restricts the sources, e.g. to partitions with at least two 1's.
    """
    ns = list(n_values)
    label = kind if kind != "dary" else f"dary(d={d})"
    rep = InjectivityReport(label, k, ns)
    for n in ns:
        seen: dict[Partition, Partition] = {}
        for lam in iter_family(PartitionFamily(kind, n, k, d)):
            if where is not None and not where(lam):
                continue
            img = pre_k(lam, k)
            rep.checked += 1
            other = seen.get(img)
            if other is not None:
                rep.collision = (other, lam, img)
                rep.collision_n = n
                return rep
            seen[img] = lam
    return rep


def image_set(kind: str, n: int, k: int, d: int = 2) -> tuple[set[Partition], list[tuple[Partition, Partition]]]:
    """Deduplicated image of a family plus any source pairs that collided."""
    seen: dict[Partition, Partition] = {}
    collisions = []
    for lam in iter_family(PartitionFamily(kind, n, k, d)):
        img = pre_k(lam, k)
        if img in seen:
            collisions.append((seen[img], lam))
        else:
            seen[img] = lam
    return set(seen), collisions
