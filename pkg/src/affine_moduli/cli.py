"""Command-line front end.

    affine-moduli classify --input recs.jsonl
    affine-moduli equiv --input pairs.jsonl --oriented
    affine-moduli canon --input recs.jsonl
    affine-moduli plot regions --output regions.svg
    affine-moduli sample plus -n 100 --seed 7
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from . import plotting
from . import reports as rp
from .errors import AffineModuliError
from .sampling import make_rng, sample_type_a, sample_type_b
from .tensor_core import DEFAULT_TOL, Tolerances

EXIT_OK, EXIT_RECORD, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, oriented=False):
    p.add_argument("--input", default="-", help="JSONL input path, or - for stdin")
    p.add_argument("--output", default="-", help="output path, or - for stdout")
    p.add_argument("--tol-zero", type=float, default=DEFAULT_TOL.zero_tol)
    p.add_argument("--tol-invariant", type=float, default=DEFAULT_TOL.invariant_tol)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    if oriented:
        p.add_argument("--oriented", action="store_true",
                       help="decide orientation-preserving equivalence")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="affine-moduli", description="Classify homogeneous affine surface structures.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _add_common(sub.add_parser("classify", help="invariants, canonical form, region, isotropy"))
    _add_common(sub.add_parser("canon", help="canonical forms only"))
    _add_common(sub.add_parser("equiv", help="decide equivalence of record pairs"), oriented=True)

    p = sub.add_parser("plot", help="emit SVG and CSV for a moduli figure")
    p.add_argument("target", choices=plotting.TARGETS)
    p.add_argument("--output", default="-", help="SVG path, or - for stdout")
    p.add_argument("--csv", default=None, help="CSV path (default: SVG path with .csv suffix)")
    p.add_argument("--samples", type=int, default=400, help="curve resolution")
    p.add_argument("-n", "--points", type=int, default=200, help="scatter points per signature")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sample", help="emit seeded random input records")
    p.add_argument("kind", choices=("plus", "minus", "zero", "B"))
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def _tolerances(args) -> Tolerances:
    return Tolerances(zero_tol=args.tol_zero, invariant_tol=args.tol_invariant,
                      rank_tol=args.tol_zero)


@contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _read_lines(path):
    fh = sys.stdin if path == "-" else open(path)
    try:
        for i, line in enumerate(fh, 1):
            if line.strip():
                yield i, line
    finally:
        if fh is not sys.stdin:
            fh.close()


def _flatten(rec, prefix=""):
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, separators=(",", ":"))
        else:
            out[key] = "" if v is None else v
    return out


def _emit(records, fh, fmt):
    if fmt == "json":
        for r in records:
            fh.write(rp.dumps(r) + "\n")
        return
    rows = [_flatten(r) for r in records]
    cols = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", restval="")
    w.writeheader()
    w.writerows(rows)
    fh.write(buf.getvalue())


def _parse_line(i, line):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise rp.RecordError(f"invalid JSON (line {i}): {e.msg}") from None
    return obj


def _run_records(args, fn):
    tol = _tolerances(args)
    out, failed, seen = [], False, set()
    for i, line in _read_lines(args.input):
        rid = f"line-{i}"
        try:
            obj = _parse_line(i, line)
            if isinstance(obj, dict) and isinstance(obj.get("id"), str) and obj["id"]:
                rid = obj["id"]
            rec = rp.parse_record(obj, i)
            rid = rec["id"]
            if rid in seen:
                raise rp.RecordError(f"duplicate id {rid!r} (line {i})")
            seen.add(rid)
            out.append(fn(rec, tol))
        except rp.RecordError as e:
            failed = True
            out.append(rp.error_record(rid, e, "record"))
        except AffineModuliError as e:
            failed = True
            out.append(rp.error_record(rid, e, "computation"))
    return out, EXIT_RECORD if failed else EXIT_OK


def _run_equiv(args):
    tol = _tolerances(args)
    out, code = [], EXIT_OK
    for i, line in _read_lines(args.input):
        pid = f"line-{i}"
        try:
            obj = _parse_line(i, line)
            if not isinstance(obj, dict) or "first" not in obj or "second" not in obj:
                raise rp.RecordError(f"pair needs 'first' and 'second' records (line {i})")
            pid = str(obj.get("id", pid))
            r1 = rp.parse_record(obj["first"], i)
            r2 = rp.parse_record(obj["second"], i)
            out.append(rp.equiv_record(pid, r1, r2, args.oriented, tol))
        except rp.UsageError as e:
            code = EXIT_USAGE
            out.append(rp.error_record(pid, e, "usage"))
        except AffineModuliError as e:
            code = max(code, EXIT_RECORD)
            out.append(rp.error_record(pid, e, "record"))
    return out, code


def sample_records(kind, n, seed):
    rng = make_rng(seed)
    if kind == "B":
        vs = sample_type_b(rng, n)
    else:
        vs = sample_type_a(rng, kind, n)
    fam = "B" if kind == "B" else "A"
    return [{"id": f"{kind}-{i:06d}", "family": fam, "gamma": [float(t) + 0.0 for t in v],
             "orientation": "plus"} for i, v in enumerate(vs)]


def _run_plot(args):
    fig = plotting.build(args.target, n=args.samples, seed=args.seed, points=args.points)
    svg = plotting.to_svg(fig)
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        Path(args.output).write_text(svg)
    csv_path = args.csv
    if csv_path is None and args.output != "-":
        csv_path = str(Path(args.output).with_suffix(".csv"))
    if csv_path is not None:
        plotting.write_csv(fig, csv_path)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "plot":
            if args.samples < 2 or args.points < 0:
                raise rp.UsageError("--samples must be >= 2 and --points >= 0")
            return _run_plot(args)
        if args.cmd == "sample":
            if args.n < 0:
                raise rp.UsageError("-n must be >= 0")
            recs, code = sample_records(args.kind, args.n, args.seed), EXIT_OK
        elif args.cmd == "equiv":
            recs, code = _run_equiv(args)
        else:
            recs, code = _run_records(args, rp.classify_record if args.cmd == "classify"
                                      else rp.canonical_record)
        with _open_out(args.output) as fh:
            _emit(recs, fh, args.format)
        return code
    except (rp.UsageError, ValueError) as e:
        print(f"affine-moduli: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"affine-moduli: I/O error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
