"""Statistics of pre_k images over all partitions, and checks of the open conjectures.

pre_k is not injective for k >= 3, so every statistic says how images are
counted: ``distinct`` (the image set) or ``per_source`` (one image per source
partition).  Collisions are kept on the cached :class:`ImageStats` and are
logged in every report built on it.
"""
from __future__ import annotations

import ast
import operator
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable

from .espmap import pre_k
from .partitions import Partition, PartitionFamily, iter_family
from .report import FAIL, VerificationReport
from .sequences import delta_iter

PRIMES_C10 = (2, 3, 5, 7)
C11_PRIMES = (1, 2, 3, 5, 7, 11, 13)


def default_n_max(k: int) -> int:
    return 30 if k <= 3 else 24


COUNTINGS = ("distinct", "per_source")


@dataclass
class ImageStats:
    kind: str
    n: int
    k: int
    images: frozenset[Partition]
    collisions: list[tuple[Partition, Partition]]
    records: list[tuple[Partition, Partition]] = field(repr=False)
    part_counts: Counter = field(repr=False)
    source_part_counts: Counter = field(repr=False)

    def _pool(self, counting: str):
        if counting == "distinct":
            return self.images
        if counting == "per_source":
            return [img for _, img in self.records]
        raise ValueError(f"unknown counting {counting!r}")

    def m(self, j: int, counting: str = "distinct") -> int:
        self._pool(counting)
        counts = self.part_counts if counting == "distinct" else self.source_part_counts
        return counts.get(j, 0)

    def regular(self, d: int, counting: str = "distinct") -> int:
        """Images with no part divisible by ``d``."""
        return sum(1 for img in self._pool(counting) if all(v % d for v in img.values()))


@lru_cache(maxsize=None)
def image_stats(n: int, k: int, kind: str = "all", d: int = 2) -> ImageStats:
    seen: dict[Partition, Partition] = {}
    collisions, records = [], []
    if n >= 0:
        for lam in iter_family(PartitionFamily(kind, n, max(k, 1), d)):
            img = pre_k(lam, k)
            records.append((lam, img))
            if img in seen:
                collisions.append((seen[img], lam))
            else:
                seen[img] = lam
    counts: Counter = Counter()
    for img in seen:
        counts.update(img.as_dict())
    per_source: Counter = Counter()
    for _, img in records:
        per_source.update(img.as_dict())
    return ImageStats(kind, n, k, frozenset(seen), collisions, records, counts, per_source)


def r_dk(d: int, k: int, n: int, counting: str = "per_source") -> int:
    """d-regular partitions among the pre_k images of partitions of n.

    ``distinct`` counts each image once; ``per_source`` counts one image per
    source partition.  The two agree unless pre_k has collisions at n.
    """
    if d < 2 or k < 1:
        raise ValueError("r_dk needs d >= 2 and k >= 1")
    return image_stats(n, k).regular(d, counting)


def chi(S: Iterable[Partition], mode: str = "global") -> int:
    """Distinct parts in a collection of partitions.

    ``per_partition`` counts each partition's distinct values and sums;
    ``global`` counts values distinct across the whole collection.
    """
    if mode == "per_partition":
        return sum(len(lam.mults) for lam in S)
    if mode == "global":
        return len({v for lam in S for v in lam.values()})
    raise ValueError(f"unknown chi mode {mode!r}")


def tau(S: Iterable[Partition]) -> int:
    """Total number of parts, with multiplicity."""
    return sum(lam.length for lam in S)


def window(stat: Callable[[int], int], m: int, n: int) -> int:
    """A per-n statistic summed over the weights m..n."""
    return sum(stat(i) for i in range(m, n + 1))


# -- tiny formula language for the floor table -------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.FloorDiv: operator.floordiv}


def compile_formula(text: str) -> Callable[[int], int]:
    """Integer formula in ``n``: literals, + - *, ``//``, ``floor(a/b)``, parentheses."""
    tree = ast.parse(text.strip(), mode="eval")

    def ev(node, n):
        if isinstance(node, ast.Expression):
            return ev(node.body, n)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return n
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, n)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, n), ev(node.right, n))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "floor"
            and len(node.args) == 1
            and isinstance(node.args[0], ast.BinOp)
            and isinstance(node.args[0].op, ast.Div)
        ):
            return ev(node.args[0].left, n) // ev(node.args[0].right, n)
        raise ValueError(f"unsupported construct in formula {text!r}")

    ev(tree, 0)  # reject bad syntax up front
    return lambda n: ev(tree, n)


@dataclass(frozen=True)
class TableEntry:
    d: int
    m: int
    residue: int
    formula: str

    def __call__(self, n: int) -> int:
        return compile_formula(self.formula)(n)


def parse_table(text: str) -> list[TableEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        bits = line.split(None, 3)
        if len(bits) != 4:
            raise ValueError(f"line {lineno}: expected 'd m residue formula'")
        d, m, res = map(int, bits[:3])
        compile_formula(bits[3])
        entries.append(TableEntry(d, m, res, bits[3]))
    return entries


def load_table(path: str | None = None) -> list[TableEntry]:
    if path is None:
        text = resources.files("espart.data").joinpath("c9_table.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_table(text)


# -- conjecture checks ----------------------------------------------------------------

def _collision_guard(rep: VerificationReport, stats: ImageStats):
    """Record collisions of pre_k in the report; they change the distinct counts."""
    if not stats.collisions:
        return
    logged = rep.details.setdefault("collisions", [])
    if not logged:
        rep.notes.append(f"pre_{stats.k} is not injective at n={stats.n}; image sets are deduplicated")
    a, b = stats.collisions[0]
    logged.append(
        {"n": stats.n, "k": stats.k, "count": len(stats.collisions), "sources": [str(a), str(b)], "image": str(pre_k(a, stats.k))}
    )


def _regular_dump(d: int, n: int, ks: tuple[int, ...]) -> dict:
    """Every d-regular image at n with its source, for the counterexample artifact."""
    out = {"d": d, "n": n}
    for k in ks:
        out[f"regular_images_k{k}"] = [
            {"source": str(src), "image": str(img)}
            for src, img in image_stats(n, k).records
            if all(v % d for v in img.values())
        ]
    return out


def check_c9(
    ds: Iterable[int] = (2, 3, 4, 5),
    n_max: int = 30,
    table: list[TableEntry] | None = None,
    counting: str = "per_source",
) -> VerificationReport:
    table = load_table() if table is None else table
    rep = VerificationReport("C9")
    rep.notes.append(f"counting: {counting}")
    for d in ds:
        rows = {e.residue: e for e in table if e.d == d}
        if not rows:
            raise ValueError(f"no table column for d={d}")
        m = next(iter(rows.values())).m
        for n in range(n_max + 1):
            for k in (2, 3):
                _collision_guard(rep, image_stats(n, k))
            entry = rows.get(n % m)
            if entry is None:
                raise ValueError(f"table column d={d} has no residue {n % m} mod {m}")
            row = rep.add(n, r_dk(d, 2, n, counting) - r_dk(d, 3, n, counting), entry(n), tag=f"C9(d={d})")
            if row.status == FAIL and "counterexample" not in rep.details:
                rep.details["counterexample"] = _regular_dump(d, n, (2, 3))
    return rep


def check_c10(primes: Iterable[int] = PRIMES_C10, n_max: int = 30, counting: str = "per_source") -> VerificationReport:
    rep = VerificationReport("C10")
    rep.notes.append(f"counting: {counting}")
    for p in primes:
        for n in range(n_max + 1):
            _collision_guard(rep, image_stats(n, 2))
            rhs = 0 if n % p == 0 else 1
            row = rep.add(n, r_dk(p, 1, n, counting) - r_dk(p, 2, n, counting), rhs, tag=f"C10(p={p})")
            if row.status == FAIL and "counterexample" not in rep.details:
                rep.details["counterexample"] = _regular_dump(p, n, (1, 2))
    return rep


def _m_img(k: int, counting: str) -> Callable[[int, int], int]:
    return lambda n, j: image_stats(n, k).m(j, counting) if n >= 0 else 0


def _m_all(n: int, j: int) -> int:
    return image_stats(n, 1).m(j) if n >= 0 else 0


def c11_identities(k: int, counting: str = "distinct") -> dict[str, tuple[Callable[[int], int], Callable[[int], int]]]:
    """Name -> (per-n sequence to difference k-1 times, right-hand side)."""
    M = _m_img(k, counting)
    P = _m_all
    ids = {
        "m4[n,n+1]": (lambda n: M(n, 4) + M(n + 1, 4), lambda n: P(n, 2) + P(n, 4) + P(n + 1, 4)),
        "m6": (lambda n: M(n, 6), lambda n: P(n, 6) + P(n - 2, 2) - P(n - 2, 3)),
        "m6[n,n+1]": (lambda n: M(n, 6) + M(n + 1, 6), lambda n: P(n, 3) + P(n, 6) + P(n + 1, 6)),
        "m9[n,n+2]": (
            lambda n: window(lambda i: M(i, 9), n, n + 2),
            lambda n: P(n, 3) + window(lambda i: P(i, 9), n, n + 2),
        ),
        "m10[n,n+1]": (lambda n: M(n, 10) + M(n + 1, 10), lambda n: P(n, 5) + P(n, 10) + P(n + 1, 10)),
    }
    for p in C11_PRIMES:
        ids[f"m{p}"] = ((lambda p: lambda n: M(n, p))(p), (lambda p: lambda n: P(n, p))(p))
    return ids


def check_c11(ks: Iterable[int] = (2, 3, 4), n_max: int | None = None, counting: str = "distinct") -> VerificationReport:
    rep = VerificationReport("C11")
    rep.notes.append(f"counting: {counting}")
    for k in ks:
        top = default_n_max(k) if n_max is None else n_max
        for n in range(top + k + 3):
            _collision_guard(rep, image_stats(n, k))
        for name, (seq, rhs) in c11_identities(k, counting).items():
            tag = f"C11(k={k},{name})"
            for n in range(top + 1):
                lhs = delta_iter(seq, k - 1, n)
                row = rep.add(n, lhs, rhs(n), tag=tag)
                if row.status == FAIL and "counterexample" not in rep.details:
                    rep.details["counterexample"] = {
                        "identity": tag,
                        "n": n,
                        "window_values": [seq(n + j) for j in range(k)],
                        "rhs": rhs(n),
                    }
    return rep


# chi/tau statistics named by the collections they act on
def stat_values(name: str, n: int, mode: str = "global") -> int:
    if name == "chi_ImP2":
        return chi(image_stats(n, 2).images, mode)
    if name == "chi_ImB2":
        return chi(image_stats(n, 2, "binary").images, mode)
    if name == "chi_ImP3":
        return chi(image_stats(n, 3).images, mode)
    if name == "tau_ImP2":
        return tau(image_stats(n, 2).images)
    raise ValueError(f"unknown statistic {name!r}")


# (statistic, A-number, index offset, additive shift): stat(n) = A(n + offset) + shift
C12_IDENTIFICATIONS = (
    ("chi_ImP2", "A227800", 1, 0),
    ("chi_ImB2", "A126236", 0, 0),
    ("chi_ImP3", "A213213", 0, 1),
    ("tau_ImP2", "A258472", 0, 0),
)

CHI_MODES = ("per_partition", "global")


def resolve_chi_mode(n_max: int = 30) -> dict[str, dict[str, bool]]:
    """For each chi identification, which counting mode agrees with the reference sequence."""
    from .oeis import diff, load_bundled

    out = {}
    for stat, anum, offset, shift in C12_IDENTIFICATIONS:
        if not stat.startswith("chi"):
            continue
        ref = load_bundled(anum)
        out[stat] = {
            mode: diff([(n, stat_values(stat, n, mode)) for n in range(n_max + 1)], ref, offset, shift).passed
            for mode in CHI_MODES
        }
    return out


def check_c12(n_max: int = 30, mode: str | None = None) -> VerificationReport:
    """Compare each statistic with its bundled reference; chi uses the surviving mode.

    Passing requires every chi identification to single out the same mode.
    """
    from .oeis import diff, load_bundled

    rep = VerificationReport("C12")
    if mode is None:
        modes = resolve_chi_mode(n_max)
        survivors = {m for res in modes.values() for m, ok in res.items() if ok}
        per_stat = {s: [m for m, ok in res.items() if ok] for s, res in modes.items()}
        rep.notes.append(f"chi modes holding per identification: {per_stat}")
        if all(len(v) == 1 for v in per_stat.values()) and len(survivors) == 1:
            mode = survivors.pop()
            rep.notes.append(f"chi mode resolved to: {mode}")
        else:
            rep.notes.append("chi mode did not resolve to exactly one reading")
            rep.add(-1, len(survivors), 1, FAIL)
            mode = "global"
    rep.details["chi_mode"] = mode
    for stat, anum, offset, shift in C12_IDENTIFICATIONS:
        ref = load_bundled(anum)
        rep.notes.append(f"{anum}: {ref.provenance}")
        if stat == "chi_ImB2":
            top = max(n_max, 40)
        else:
            top = n_max
        computed = [(n, stat_values(stat, n, mode)) for n in range(top + 1)]
        refmap = dict(ref.entries)
        for n, val in computed:
            if n + offset in refmap:
                row = rep.add(n, val, refmap[n + offset] + shift, tag=f"C12({stat}~{anum})")
        d = diff(computed, ref, offset, shift)
        if not d.passed and "counterexample" not in rep.details:
            n = d.mismatches[0][0]
            k = 3 if stat == "chi_ImP3" else 2
            kind = "binary" if stat == "chi_ImB2" else "all"
            rep.details["counterexample"] = {
                "statistic": stat,
                "n": n,
                "images": sorted(str(p) for p in image_stats(n, k, kind).images),
            }
    return rep


CONJECTURES = {"C9": check_c9, "C10": check_c10, "C11": check_c11, "C12": check_c12}


def verify_conjecture(conj_id: str, **ranges) -> VerificationReport:
    try:
        check = CONJECTURES[conj_id]
    except KeyError:
        raise ValueError(f"unknown conjecture {conj_id!r}") from None
    return check(**ranges)
