"""Regenerate the bundled reference b-files in src/espart/data.

The files are rebuilt from short arithmetic definitions that do not use the
package, so they serve as an independent check of the enumeration code.
They are reconstructions: no term was downloaded from oeis.org.
"""
from __future__ import annotations

import argparse
from math import comb
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "espart" / "data"
TOP = 60


def a000123(top):
    out = [1]
    for n in range(1, top + 1):
        out.append(out[n - 1] + out[n // 2])
    return out


def A000123():
    return 0, a000123(TOP)


def A131205():
    b = a000123(TOP)
    return 1, [sum(b[:n]) for n in range(1, TOP + 1)]


def A227800():
    return 1, [len({i * j for i in range(1, m) for j in range(i, m - i)}) for m in range(1, TOP + 1)]


def A126236():
    vals = []
    for n in range(1, TOP + 1):
        pw = [e for e in range(n.bit_length()) if 2**e <= n]
        vals.append(len({a + b for a in pw for b in pw if a <= b and 2**a + 2**b <= n}))
    return 1, vals


def A213213():
    vals = []
    for n in range(3, TOP + 1):
        prods = {i * j * k for i in range(1, n) for j in range(i, n) for k in range(j, n - i - j + 1)}
        vals.append(len(prods) - 1)
    return 3, vals


def A258472():
    # p[n][l]: partitions of n with exactly l parts
    p = [[0] * (TOP + 1) for _ in range(TOP + 1)]
    p[0][0] = 1
    for n in range(1, TOP + 1):
        for l in range(1, n + 1):
            p[n][l] = p[n - 1][l - 1] + (p[n - l][l] if n - l >= l else 0)
    return 0, [sum(comb(l, 2) * p[n][l] for l in range(n + 1)) for n in range(TOP + 1)]


DEFINITIONS = {
    "A000123": (A000123, "a(0)=1, a(n)=a(n-1)+a(floor(n/2)); binary partitions of 2n"),
    "A131205": (A131205, "a(n)=sum_{i=0}^{n-1} A000123(i)"),
    "A227800": (A227800, "number of distinct products i*j with 1<=i<=j and i+j<n"),
    "A126236": (A126236, "number of distinct products 2^a*2^b with 2^a+2^b<=n"),
    "A213213": (A213213, "number of distinct products i*j*k with i+j+k<=n, minus one"),
    "A258472": (A258472, "sum over partitions of n of binomial(number of parts, 2)"),
}


ALIGNMENTS = {
    "A000123": "first difference of a at n equals A000123(n-1)",
    "A131205": "a(n) = A131205(n-1) for n >= 2",
    "A227800": "chi of the pre_2 image set at n equals A227800(n+1)",
    "A126236": "chi of the binary pre_2 image set at n equals A126236(n)",
    "A213213": "chi of the pre_3 image set at n equals 1 + A213213(n), same index",
    "A258472": "tau of the pre_2 image set at n equals A258472(n)",
}


def render(seq_id: str) -> str:
    fn, definition = DEFINITIONS[seq_id]
    start, vals = fn()
    head = [
        f"sequence: {seq_id}",
        f"definition: {definition}",
        f"offset: {start}",
        f"alignment: {ALIGNMENTS[seq_id]}",
        "provenance: reconstructed offline from the definition above, not retrieved from oeis.org",
    ]
    return "".join(f"# {h}\n" for h in head) + "".join(f"{start + i} {v}\n" for i, v in enumerate(vals))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args(argv)
    for seq_id in DEFINITIONS:
        path = args.out / f"b{seq_id[1:]}.txt"
        path.write_text(render(seq_id))
        print(path)


if __name__ == "__main__":
    main()
