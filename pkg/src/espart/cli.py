"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 on a mathematical failure,
2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor

from . import conjectures, espmap, oeis, sequences, series
from .partitions import PartitionFamily, count_family, iter_family
from .report import CSV_HEADER, VerificationReport, to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """``7`` or ``0..40`` (inclusive)."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N or A..B") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def read_config(path: str) -> list[str]:
    """Turn ``key = value`` lines into command-line flags."""
    out = []
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        flag = "--" + key.strip().replace("_", "-")
        val = val.strip()
        if val.lower() == "true":
            out.append(flag)
        elif val.lower() != "false":
            out += [flag] + shlex.split(val)
    return out


# -- output helpers ---------------------------------------------------------------

def _report_json(rep: VerificationReport) -> dict:
    return {
        "id": rep.identity_id,
        "passed": rep.passed,
        "summary": rep.summary(),
        "notes": rep.notes,
        "rows": [dict(zip(CSV_HEADER, r)) for r in rep.csv_rows()],
        "details": rep.details,
    }


def emit_reports(reports: list[VerificationReport], fmt: str, out) -> int:
    if fmt == "csv":
        out.write(to_csv(reports))
    elif fmt == "json":
        out.write(json.dumps([_report_json(r) for r in reports], indent=1, sort_keys=True) + "\n")
    else:
        for rep in reports:
            out.write(rep.summary() + "\n")
            for note in rep.notes:
                out.write(f"  {note}\n")
    failed = [r for r in reports if not r.passed]
    for rep in failed:
        if rep.details and fmt == "table":
            sys.stderr.write(json.dumps({"id": rep.identity_id, **rep.details}, sort_keys=True) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def _pool_map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _open_out(args):
    return open(args.out, "w") if getattr(args, "out", None) else sys.stdout


# -- commands ---------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    fam = PartitionFamily(args.family, args.n, args.min_len, args.d)
    parts = [str(p) for p in iter_family(fam)]
    if args.format == "json":
        print(json.dumps({"family": args.family, "n": args.n, "count": len(parts), "partitions": parts}))
    else:
        for p in parts:
            print(p)
        print(f"count {len(parts)}")
    if len(parts) != count_family(fam):
        return EXIT_FAIL
    return EXIT_OK


def cmd_images(args) -> int:
    if args.k > args.k_cap:
        raise UsageError(f"k={args.k} exceeds the cap {args.k_cap}; raise --k-cap to allow it")
    out = _open_out(args)
    for n in args.n:
        for rec in espmap.image_multiset(PartitionFamily(args.family, n, args.k, args.d), args.k):
            out.write(rec.to_json(n, args.k) + "\n")
    return EXIT_OK


def _seq_row(job):
    seq_id, routes, n, d = job
    return n, {r: sequences.seq(seq_id, r, n, d) for r in routes}


def cmd_seq(args) -> int:
    avail = sequences.ROUTES[args.id]
    if args.routes == "all":
        routes = list(avail)
    else:
        try:
            routes = [sequences.Route(r.strip().upper()) for r in args.routes.split(",")]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        bad = [r.value for r in routes if r not in avail]
        if bad:
            raise UsageError(f"routes {bad} are not available for {args.id}")
    rows = _pool_map(_seq_row, [(args.id, routes, n, args.d) for n in args.n], args.jobs)
    ok = all(len(set(v.values())) == 1 for _, v in rows)
    names = [r.value for r in routes]
    if args.format == "json":
        print(json.dumps({"id": args.id, "d": args.d, "agree": ok, "rows": [{"n": n, **{r.value: v[r] for r in routes}} for n, v in rows]}))
    elif args.format == "csv":
        print(",".join(["n"] + names + ["agree"]))
        for n, v in rows:
            print(",".join(map(str, [n] + [v[r] for r in routes] + [len(set(v.values())) == 1])))
    else:
        print("n".rjust(4) + "".join(name.rjust(16) for name in names))
        for n, v in rows:
            flag = "" if len(set(v.values())) == 1 else "  MISMATCH"
            print(str(n).rjust(4) + "".join(str(v[r]).rjust(16) for r in routes) + flag)
        print("all routes agree" if ok else "routes disagree")
    return EXIT_OK if ok else EXIT_FAIL


def _verify_one(job):
    identity_id, n_max, d, ds = job
    return sequences.verify_identity(identity_id, n_max, d=d, ds=ds)


def _restrict(rep: VerificationReport, lo: int) -> VerificationReport:
    if lo > 0:
        rep.rows = [r for r in rep.rows if r.n >= lo or r.n < 0]
    return rep


def cmd_verify(args) -> int:
    ids = list(sequences.ALL_IDS) if args.id == "all" else [args.id]
    unknown = [i for i in ids if i not in sequences.ALL_IDS]
    if unknown:
        raise UsageError(f"unknown identity {unknown[0]!r}; choose from {', '.join(sequences.ALL_IDS)}")
    n = args.n
    reports = _pool_map(_verify_one, [(i, n[-1], args.d, args.ds) for i in ids], args.jobs)
    return emit_reports([_restrict(r, n[0]) for r in reports], args.format, _open_out(args))


def _conjecture_kwargs(cid: str, args) -> dict:
    top = args.n[-1] if args.n is not None else None
    kw = {}
    if cid == "C9":
        kw["ds"] = args.d or (2, 3, 4, 5)
        kw["counting"] = args.counting
        if args.table:
            kw["table"] = conjectures.load_table(args.table)
    elif cid == "C10":
        kw["primes"] = args.p or conjectures.PRIMES_C10
        kw["counting"] = args.counting
    elif cid == "C11":
        kw["ks"] = args.k or (2, 3, 4)
        if args.counting_c11:
            kw["counting"] = args.counting_c11
    if top is not None:
        kw["n_max"] = top
    return kw


def _conjecture_one(job):
    cid, kw = job
    return conjectures.verify_conjecture(cid, **kw)


def cmd_conjecture(args) -> int:
    ids = list(conjectures.CONJECTURES) if args.id == "all" else [args.id]
    if any(i not in conjectures.CONJECTURES for i in ids):
        raise UsageError(f"unknown conjecture {args.id!r}; choose from {', '.join(conjectures.CONJECTURES)}")
    jobs = [(cid, _conjecture_kwargs(cid, args)) for cid in ids]
    reports = _pool_map(_conjecture_one, jobs, args.jobs)
    if args.n is not None:
        reports = [_restrict(r, args.n[0]) for r in reports]
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump({r.identity_id: r.details for r in reports if not r.passed}, fh, indent=1, sort_keys=True)
    return emit_reports(reports, args.format, _open_out(args))


def cmd_injectivity(args) -> int:
    ok = True
    for k in args.k:
        rep = espmap.check_injectivity(args.family, list(args.n), k, args.d)
        print(rep.summary())
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oeis(args) -> int:
    if args.fetch:
        bf = oeis.fetch(args.anum, allow_network=args.network, refresh=args.refresh)
    else:
        bf = oeis.load_bundled(args.anum)
    if args.seq is None:
        sys.stdout.write(oeis.render_bfile(bf))
        return EXIT_OK
    computed = [(n, sequences.value(args.seq, n, args.d)) for n in args.n]
    rep = oeis.diff(computed, bf, args.offset, args.shift)
    print(rep.summary())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_series(args) -> int:
    s = series.gf(args.name, args.order, args.d)
    sys.stdout.write(s.dump())
    return EXIT_OK


def cmd_export(args) -> int:
    if args.what == "verify":
        reports = [sequences.verify_identity(i, args.n[-1]) for i in sequences.ALL_IDS]
    else:
        reports = [conjectures.verify_conjecture(c) for c in conjectures.CONJECTURES]
    with open(args.out, "w") as fh:
        code = emit_reports(reports, args.format, fh)
    print(f"wrote {len(reports)} reports to {args.out}")
    return code


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="espart", description="Elementary symmetric partitions: enumeration, sequences and identity checks.")
    ap.add_argument("--config", help="key = value file whose entries act as flags for the subcommand")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_default="0..20", fmt=True):
        p.add_argument("--n", type=parse_range, default=parse_range(n_default) if n_default else None, help="N or A..B")
        p.add_argument("--jobs", type=int, default=1, help="worker processes; output order does not depend on it")
        if fmt:
            p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p = sub.add_parser("enumerate", help="list the partitions of a family")
    p.add_argument("--family", choices=("all", "binary", "dary"), default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-len", type=int, default=0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("images", help="source/image records as JSON lines")
    p.add_argument("--family", choices=("all", "binary", "dary"), default="binary")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k-cap", type=int, default=espmap.DEFAULT_K_CAP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_images)

    p = sub.add_parser("seq", help="sequence values by one or more routes")
    p.add_argument("--id", choices=sequences.SEQUENCE_IDS, required=True)
    p.add_argument("--routes", default="all", help="'all' or a comma list such as BRUTE_IMAGE,SERIES_COEFF")
    p.add_argument("--d", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="check identities from the catalog")
    p.add_argument("--id", default="all", help="identity id or 'all'")
    p.add_argument("--d", type=int, help="single d for d-ary identities")
    p.add_argument("--ds", type=int_list, default=(2, 3, 4, 5), help="d values for d-ary identities")
    p.add_argument("--out")
    common(p, "0..30")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="check the open conjectures")
    p.add_argument("--id", default="all", help="C9, C10, C11, C12 or 'all'")
    p.add_argument("--d", type=int_list, help="C9: d columns")
    p.add_argument("--p", type=int_list, help="C10: primes")
    p.add_argument("--k", type=int_list, help="C11: values of k")
    p.add_argument("--counting", choices=conjectures.COUNTINGS, default="per_source", help="C9/C10 image counting")
    p.add_argument("--counting-c11", choices=conjectures.COUNTINGS)
    p.add_argument("--table", help="C9: alternative floor table file")
    p.add_argument("--dump", help="write counterexample artifacts of failing checks to this JSON file")
    p.add_argument("--out")
    common(p, None)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("injectivity", help="look for collisions of pre_k")
    p.add_argument("--family", choices=("all", "binary", "dary"), default="binary")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--k", type=int_list, default=(2,))
    p.add_argument("--d", type=int, default=2)
    p.set_defaults(func=cmd_injectivity)

    p = sub.add_parser("oeis", help="show a bundled b-file or compare a sequence with it")
    p.add_argument("--anum", required=True, help="A-number, e.g. A131205")
    p.add_argument("--seq", choices=sequences.SEQUENCE_IDS)
    p.add_argument("--offset", type=int, default=0, help="compare seq(n) with A(n + offset)")
    p.add_argument("--shift", type=int, default=0, help="added to the reference value")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=parse_range, default=parse_range("0..40"))
    p.add_argument("--fetch", action="store_true", help="use the downloaded copy instead of the bundled one")
    p.add_argument("--network", action="store_true", help="allow network access for --fetch")
    p.add_argument("--refresh", action="store_true")
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("series", help="coefficients of a generating function")
    p.add_argument("--name", choices=sorted(series.GF_CATALOG), required=True)
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("export", help="write all identity or conjecture reports to a file")
    p.add_argument("--what", choices=("verify", "conjecture"), required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=parse_range, default=parse_range("0..30"))
    p.set_defaults(func=cmd_export)
    return ap


def _with_config(argv: list[str], ap: argparse.ArgumentParser) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return argv
    extra = read_config(known.config)
    cmds = set(ap._subparsers._group_actions[0].choices)
    for i, tok in enumerate(rest):
        if tok in cmds:
            # config first, so flags given on the command line win
            return rest[: i + 1] + extra + rest[i + 1 :]
    return rest


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = ap.parse_args(_with_config(argv, ap))
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except oeis.IntegrityError as exc:
        print(f"espart: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError, FileNotFoundError, oeis.NetworkError) as exc:
        print(f"espart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
