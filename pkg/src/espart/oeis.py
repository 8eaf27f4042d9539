"""Reading, writing and comparing OEIS b-files.

Bundled reference files live in ``espart/data`` as ``bNNNNNN.txt``.  Lines
starting with ``#`` carry metadata as ``# key: value``.  :func:`fetch` can
download a b-file into a local cache; it never runs unless network access is
explicitly allowed, and a downloaded file is checked against the bundled one
before being accepted.  ``BFile.source`` is ``bundled`` or ``fetched``.
"""
from __future__ import annotations

import os
import re
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import fcntl
except ImportError:  # pragma: no cover - non-POSIX
    fcntl = None

CACHE_ENV = "ESPART_OEIS_CACHE"
URL_ENV = "ESPART_OEIS_URL"
DEFAULT_URL = "https://oeis.org/{id}/b{num}.txt"

_ID = re.compile(r"A\d{6}")


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class NetworkError(RuntimeError):
    pass


class IntegrityError(RuntimeError):
    pass


@dataclass
class BFile:
    sequence_id: str
    entries: list[tuple[int, int]]
    source: str = "bundled"
    metadata: dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def provenance(self) -> str:
        return self.metadata.get("provenance", self.source)


def check_id(seq_id: str) -> str:
    if not _ID.fullmatch(seq_id):
        raise ValueError(f"not an OEIS A-number: {seq_id!r}")
    return seq_id


def parse_bfile(text: str, sequence_id: str = "", source: str = "bundled") -> BFile:
    entries, meta = [], {}
    last = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep:
                meta[key.strip()] = val.strip()
            continue
        bits = line.split()
        if len(bits) != 2:
            raise ParseError(lineno, f"expected 'n a(n)', got {raw!r}")
        try:
            n, v = int(bits[0]), int(bits[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw!r}") from None
        if last is not None and n != last + 1:
            raise ParseError(lineno, f"index {n} does not follow {last}")
        last = n
        entries.append((n, v))
    return BFile(sequence_id or meta.get("sequence", ""), entries, source, meta)


def render_bfile(bf: BFile) -> str:
    head = "".join(f"# {k}: {v}\n" for k, v in bf.metadata.items())
    return head + "".join(f"{n} {v}\n" for n, v in bf.entries)


def bundled_name(seq_id: str) -> str:
    return f"b{check_id(seq_id)[1:]}.txt"


def load_bundled(seq_id: str) -> BFile:
    res = resources.files("espart.data").joinpath(bundled_name(seq_id))
    if not res.is_file():
        raise FileNotFoundError(f"no bundled b-file for {seq_id}")
    return parse_bfile(res.read_text(), seq_id, "bundled")


def bundled_ids() -> list[str]:
    names = (p.name for p in resources.files("espart.data").iterdir())
    return sorted("A" + m.group(1) for m in map(re.compile(r"b(\d{6})\.txt").fullmatch, names) if m)


@dataclass
class DiffReport:
    sequence_id: str
    compared: int
    mismatches: list[tuple[int, int, int]]  # (n, computed, reference)
    missing: list[int]

    @property
    def passed(self) -> bool:
        return self.compared > 0 and not self.mismatches

    def summary(self) -> str:
        head = f"{self.sequence_id}: {self.compared} terms compared, {len(self.mismatches)} mismatches"
        if self.mismatches:
            n, got, want = self.mismatches[0]
            head += f"; first at n={n}: computed {got}, reference {want}"
        if self.missing:
            head += f"; {len(self.missing)} indices beyond the reference"
        return head


def diff(computed, reference: BFile, offset: int = 0, shift: int = 0) -> DiffReport:
    """Compare ``computed[n]`` with ``reference[n + offset] + shift``.

    ``computed`` is a mapping or an iterable of (n, value) pairs.
    """
    pairs = computed.items() if isinstance(computed, dict) else computed
    ref = reference.as_dict()
    mism, missing, compared = [], [], 0
    for n, v in pairs:
        if n + offset not in ref:
            missing.append(n)
            continue
        compared += 1
        want = ref[n + offset] + shift
        if v != want:
            mism.append((n, v, want))
    return DiffReport(reference.sequence_id, compared, mism, missing)


def cache_dir() -> Path:
    base = os.environ.get(CACHE_ENV)
    if base:
        return Path(base)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "espart" / "oeis"


def _url(seq_id: str) -> str:
    return os.environ.get(URL_ENV, DEFAULT_URL).format(id=seq_id, num=seq_id[1:])


def _check_against_bundled(bf: BFile):
    try:
        ref = load_bundled(bf.sequence_id)
    except FileNotFoundError:
        return
    d = diff(bf.entries, ref)
    if d.mismatches:
        raise IntegrityError(f"downloaded {bf.sequence_id} disagrees with bundled copy: {d.summary()}")


def fetch(seq_id: str, allow_network: bool = False, refresh: bool = False, timeout: float = 30) -> BFile:
    """Download (or reuse the cached copy of) the b-file for ``seq_id``.

    Refuses unless ``allow_network`` is set.  A per-sequence lock file keeps
    concurrent fetches from clobbering each other.
    """
    check_id(seq_id)
    if not allow_network:
        raise NetworkError(f"fetching {seq_id} needs network access; pass --network or use the bundled copy")
    target = cache_dir() / bundled_name(seq_id)
    if target.is_file() and not refresh:
        return parse_bfile(target.read_text(), seq_id, "fetched")
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target.with_suffix(".lock"), "w") as lock:
        if fcntl is not None:
            fcntl.flock(lock, fcntl.LOCK_EX)
        if target.is_file() and not refresh:
            return parse_bfile(target.read_text(), seq_id, "fetched")
        url = _url(seq_id)
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                text = resp.read().decode()
        except (urllib.error.URLError, OSError) as exc:
            raise NetworkError(f"could not download {url}: {exc}") from exc
        bf = parse_bfile(text, seq_id, "fetched")
        _check_against_bundled(bf)
        bf.metadata.setdefault("provenance", f"downloaded from {url}")
        tmp = target.with_suffix(".tmp")
        tmp.write_text(render_bfile(bf))
        os.replace(tmp, target)
    return bf
