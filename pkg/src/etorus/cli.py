"""Command-line front end.

Subcommands: info, grid, transform, eval, verify.  All file formats are
owned here: CSV is the primary interchange format (one row per grid point,
fixed column order, '.' decimal), JSON mirrors it for tooling.  Every file
starts with a header carrying (family, rank, M, j, version, kind), and the
row order is the canonical grid order, so a file identifies its grid
configuration completely and mismatches are caught before any computation.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration or
usage, 3 I/O failure, 4 grid mismatch between file and configuration,
5 malformed row (reported with its row number).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import EtorusError, GridMismatchError, MalformedDataError
from .grids import count_formula, stabilizer_order_brute
from .rootdata import SimpleType
from .transform import ETransform
from .weyl import SIDE_F, SIDE_RJF

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_GRID_MISMATCH = 4
EXIT_MALFORMED = 5

GRAM_OFFDIAG_TOL = 1e-9
GRAM_DIAG_TOL = 1e-10
ROUNDTRIP_TOL = 1e-9
PLANCHEREL_TOL = 1e-10


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fmt(x):
    return f"{float(x):.17g}"


def _header_dict(ctx, kind):
    family, rank, M, j = ctx.grid_id
    return {"tool": "etorus", "version": __version__, "family": family,
            "rank": rank, "M": M, "j": j, "kind": kind}


def _header_line(header):
    fields = " ".join(f"{k}={header[k]}" for k in ("version", "family", "rank", "M", "j", "kind"))
    return f"# etorus {fields}"


def _parse_header_line(line):
    if not line.startswith("# etorus "):
        raise MalformedDataError("missing '# etorus' header line", row=1)
    header = {"tool": "etorus"}
    for item in line[len("# etorus "):].split():
        if "=" not in item:
            raise MalformedDataError(f"bad header field {item!r}", row=1)
        key, value = item.split("=", 1)
        header[key] = int(value) if key in ("rank", "M", "j") else value
    for key in ("version", "family", "rank", "M", "j", "kind"):
        if key not in header:
            raise MalformedDataError(f"header missing {key!r}", row=1)
    return header


def write_table(stream, header, columns, rows, fmt):
    if fmt == "json":
        json.dump({"header": header, "columns": list(columns),
                   "rows": [list(r) for r in rows]}, stream, indent=None)
        stream.write("\n")
        return
    stream.write(_header_line(header) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)


def read_table(path):
    """Read a CSV or JSON table; returns (header, columns, rows of strings)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
            header = doc["header"]
            columns = doc["columns"]
            rows = [[str(v) for v in row] for row in doc["rows"]]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MalformedDataError(f"bad JSON table: {exc}", row=0)
        return header, columns, rows
    lines = text.splitlines()
    if not lines:
        raise MalformedDataError("empty file", row=0)
    header = _parse_header_line(lines[0])
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    try:
        columns = next(reader)
    except StopIteration:
        raise MalformedDataError("missing column header row", row=2)
    rows = [row for row in reader if row]
    return header, columns, rows


def _check_grid_header(header, ctx, kind):
    family, rank, M, j = ctx.grid_id
    got = (header.get("family"), header.get("rank"), header.get("M"), header.get("j"))
    if got != (family, rank, M, j):
        raise GridMismatchError(
            f"file is for family={got[0]} rank={got[1]} M={got[2]} j={got[3]}, "
            f"configuration is family={family} rank={rank} M={M} j={j}")
    if header.get("kind") != kind:
        raise GridMismatchError(f"expected a {kind} file, got kind={header.get('kind')}")


def _grid_rows(ctx, which):
    if which == "points":
        return [list(p.bary.sygma) + [p.bary.side, p.eps] for p in ctx.points]
    return [list(w.bary.sygma) + [w.bary.side, w.h_dual] for w in ctx.weights]


def _grid_columns(ctx, which):
    n = ctx.rsd.rank
    if which == "points":
        return [f"s_{i}" for i in range(n + 1)] + ["side", "eps"]
    return [f"t_{i}" for i in range(n + 1)] + ["side", "h_dual"]


def _parse_value_rows(ctx, rows, which):
    """Validate rows against the canonical enumeration; return complex values."""
    entries = ctx.points if which == "points" else ctx.weights
    n = ctx.rsd.rank
    if len(rows) != len(entries):
        raise MalformedDataError(
            f"expected {len(entries)} rows, found {len(rows)}", row=len(rows) + 2)
    values = np.empty(len(entries), dtype=complex)
    for k, (row, entry) in enumerate(zip(rows, entries)):
        rownum = k + 3  # header line + column row are rows 1-2
        if len(row) != n + 5:
            raise MalformedDataError(f"row {rownum}: expected {n + 5} fields", row=rownum)
        try:
            coords = tuple(int(v) for v in row[:n + 1])
            side = row[n + 1]
            weight = int(row[n + 2])
            re, im = float(row[n + 3]), float(row[n + 4])
        except ValueError:
            raise MalformedDataError(f"row {rownum}: unparseable field", row=rownum)
        expect_weight = entry.eps if which == "points" else entry.h_dual
        if coords != entry.bary.sygma or side != entry.bary.side or weight != expect_weight:
            raise MalformedDataError(
                f"row {rownum}: does not match canonical enumeration "
                f"(expected {entry.bary.sygma} {entry.bary.side} {expect_weight})", row=rownum)
        if side not in (SIDE_F, SIDE_RJF):
            raise MalformedDataError(f"row {rownum}: bad side flag {side!r}", row=rownum)
        values[k] = complex(re, im)
    return values


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}")


def _resolve_config(args, need_M=True):
    family = args.family_opt or args.family
    rank = args.rank_opt if args.rank_opt is not None else args.rank
    if family is None or rank is None:
        raise CliError(EXIT_USAGE, "family and rank are required (positional or --family/--rank)")
    M = getattr(args, "M", None)
    if need_M and (M is None or M < 1):
        raise CliError(EXIT_USAGE, "-M must be a positive integer")
    try:
        SimpleType(str(family), int(rank))
    except EtorusError as exc:
        raise CliError(EXIT_USAGE, str(exc))
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("ETORUS_THREADS", "1"))
    return str(family), int(rank), M, getattr(args, "j", 1), threads


def _context(args, need_M=True):
    family, rank, M, j, threads = _resolve_config(args, need_M)
    try:
        return ETransform(family, rank, M if M is not None else 1, j, threads=threads)
    except (EtorusError, ValueError) as exc:
        raise CliError(EXIT_USAGE, str(exc))


def cmd_info(args):
    family, rank, _, _, _ = _resolve_config(args, need_M=False)
    ctx = ETransform(family, rank, 1, 1)
    rsd = ctx.rsd
    out = sys.stdout
    out.write(f"type {rsd.type}\n")
    out.write("Cartan matrix:\n")
    for row in rsd.cartan:
        out.write("  " + " ".join(f"{v:3d}" for v in row) + "\n")
    out.write(f"marks        {' '.join(str(v) for v in rsd.marks)}\n")
    out.write(f"dual marks   {' '.join(str(v) for v in rsd.dual_marks)}\n")
    out.write(f"Coxeter number m = {rsd.coxeter}\n")
    out.write(f"center order c = {rsd.center}\n")
    out.write(f"|W|   = {len(ctx.weyl_group)}\n")
    out.write(f"|W^e| = {len(ctx.even_group)}\n")
    return EXIT_OK


def cmd_grid(args):
    ctx = _context(args)
    stream, close = _open_output(args.output)
    try:
        write_table(stream, _header_dict(ctx, args.which), _grid_columns(ctx, args.which),
                    _grid_rows(ctx, args.which), args.format)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_transform(args):
    ctx = _context(args)
    header, _, rows = read_table(args.input)
    if args.direction == "forward":
        _check_grid_header(header, ctx, "samples")
        values = _parse_value_rows(ctx, rows, "points")
        coeff = ctx.forward(ctx.sample_vector(values))
        out_rows = [list(w.bary.sygma) + [w.bary.side, w.h_dual, _fmt(c.real), _fmt(c.imag)]
                    for w, c in zip(ctx.weights, coeff.values)]
        columns = _grid_columns(ctx, "weights")[:-1] + ["h_dual", "c_re", "c_im"]
        kind = "coefficients"
        _, _, reldev = ctx.plancherel_check(values)
        summary = f"plancherel reldev = {reldev:.3e}"
    else:
        _check_grid_header(header, ctx, "coefficients")
        values = _parse_value_rows(ctx, rows, "weights")
        samples = ctx.reconstruct(ctx.coefficient_vector(values))
        out_rows = [list(p.bary.sygma) + [p.bary.side, p.eps, _fmt(v.real), _fmt(v.imag)]
                    for p, v in zip(ctx.points, samples.values)]
        columns = _grid_columns(ctx, "points")[:-1] + ["eps", "value_re", "value_im"]
        kind = "samples"
        summary = f"wrote {len(out_rows)} reconstructed samples"
    stream, close = _open_output(args.output)
    try:
        write_table(stream, _header_dict(ctx, kind), columns, out_rows, args.format)
    finally:
        if close:
            stream.close()
    print(summary)
    return EXIT_OK


def _mesh_points(ctx, resolution):
    """Barycentric mesh over the even fundamental domain (rank 1 and 2).

    Rank 2 uses an R x R chart: the first axis sweeps the glued reflected
    copy (negative half) and the fundamental simplex (positive half), the
    second axis the remaining barycentric direction.
    """
    rank = ctx.rsd.rank
    if resolution < 2:
        raise CliError(EXIT_USAGE, "--resolution must be at least 2")
    j = ctx.j
    C = ctx.rsd.cartan
    marks = ctx.rsd.marks
    if rank == 1:
        # reflection through the origin wall: the glued copy is just y < 0
        a = np.linspace(-1.0, 1.0, resolution)
        return (a / marks[0])[:, np.newaxis]
    if rank != 2:
        raise CliError(EXIT_USAGE,
                       f"mesh emission needs rank 1 or 2; use --points for rank {rank}")
    other = 2 if j == 1 else 1
    out = np.empty((resolution * resolution, 2))
    a_axis = np.linspace(-1.0, 1.0, resolution)
    b_axis = np.linspace(0.0, 1.0, resolution)
    k = 0
    for a in a_axis:
        lam_j = abs(a)
        for b in b_axis:
            y = np.zeros(2)
            y[j - 1] = lam_j / marks[j - 1]
            y[other - 1] = b * (1.0 - lam_j) / marks[other - 1]
            if a < 0:
                y = y - y[j - 1] * C[:, j - 1]
            out[k] = y
            k += 1
    return out


def _read_points_file(path, rank):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh)
                    if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")
    pts = []
    for k, row in enumerate(rows, start=1):
        try:
            vec = [float(v) for v in row]
        except ValueError:
            raise MalformedDataError(f"points row {k}: unparseable field", row=k)
        if len(vec) != rank:
            raise MalformedDataError(f"points row {k}: expected {rank} coordinates", row=k)
        pts.append(vec)
    if not pts:
        raise MalformedDataError("points file holds no rows", row=0)
    return np.array(pts)


def cmd_eval(args):
    ctx = _context(args)
    header, _, rows = read_table(args.input)
    _check_grid_header(header, ctx, "coefficients")
    coeff = _parse_value_rows(ctx, rows, "weights")
    if args.points:
        mesh = _read_points_file(args.points, ctx.rsd.rank)
    else:
        mesh = _mesh_points(ctx, args.resolution)
    values = ctx.interpolate(ctx.coefficient_vector(coeff), mesh)
    if not np.isfinite(values).all():
        raise CliError(EXIT_VERIFY_FAILED, "interpolant produced non-finite values")
    euclid = mesh @ ctx.realization.dual_weights
    columns = [f"x_{i + 1}" for i in range(ctx.rsd.rank)] + ["value_re", "value_im"]
    out_rows = [[_fmt(c) for c in xy] + [_fmt(v.real), _fmt(v.imag)]
                for xy, v in zip(euclid, values)]
    stream, close = _open_output(args.output)
    try:
        write_table(stream, _header_dict(ctx, "mesh"), columns, out_rows, args.format)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_verify(args):
    ctx = _context(args)
    rng = np.random.default_rng(args.seed)
    checks = []

    expected = count_formula(ctx.stype, ctx.M)
    dev = max(abs(ctx.n_points - expected), abs(len(ctx.weights) - expected))
    checks.append(("count-formula", dev == 0, float(dev)))

    target = ctx.rsd.center * ctx.M ** ctx.rsd.rank
    dev = abs(int(ctx.eps.sum()) - target)
    checks.append(("eps-sum", dev == 0, float(dev)))

    worst = 0
    for p in ctx.points:
        brute = stabilizer_order_brute(p.bary, ctx.even_group, ctx.rsd, side="point", j=ctx.j)
        worst = max(worst, abs(len(ctx.even_group) // p.eps - brute))
    for w in ctx.weights:
        brute = stabilizer_order_brute(w.bary, ctx.even_group, ctx.rsd, side="weight", j=ctx.j)
        worst = max(worst, abs(w.h_dual - brute))
    checks.append(("stabilizers", worst == 0, float(worst)))

    _, max_off, diag_rel = ctx.gram_matrix()
    scale = ctx.rsd.center * len(ctx.even_group) * ctx.M ** ctx.rsd.rank
    ok = max_off < GRAM_OFFDIAG_TOL * scale and diag_rel < GRAM_DIAG_TOL
    checks.append(("gram", ok, max(max_off / scale, diag_rel)))

    f = rng.standard_normal(ctx.n_points) + 1j * rng.standard_normal(ctx.n_points)
    back = ctx.reconstruct(ctx.forward(f))
    err = float(np.abs(back - f).max())
    _, _, reldev = ctx.plancherel_check(f)
    ok = err < ROUNDTRIP_TOL and reldev < PLANCHEREL_TOL
    checks.append(("roundtrip", ok, max(err, reldev)))

    failed = [name for name, ok, _ in checks if not ok]
    for name, ok, dev in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name:<14} deviation {dev:.3e}")
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return EXIT_VERIFY_FAILED
    print(f"all checks passed for {ctx.stype} M={ctx.M} j={ctx.j}")
    return EXIT_OK


def _add_config_arguments(p, need_M=True):
    p.add_argument("family", nargs="?", default=None, metavar="FAMILY",
                   help="family letter A, B, C or D")
    p.add_argument("rank", nargs="?", type=int, default=None, metavar="RANK")
    p.add_argument("--family", dest="family_opt", default=None,
                   help="family letter (alternative to the positional)")
    p.add_argument("--rank", dest="rank_opt", type=int, default=None)
    if need_M:
        p.add_argument("-M", "--M", dest="M", type=int, default=None,
                       help="grid refinement level")
        p.add_argument("--j", dest="j", type=int, default=1,
                       help="reflected-domain index (default 1)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: ETORUS_THREADS or 1)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="etorus",
        description="Discrete E-function transforms on tori of the classical simple Lie groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print root-system data")
    _add_config_arguments(p, need_M=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("grid", help="emit the point or weight grid")
    p.add_argument("which", choices=("points", "weights"))
    _add_config_arguments(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("transform", help="forward or inverse transform of a file")
    p.add_argument("direction", choices=("forward", "inverse"))
    _add_config_arguments(p)
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("eval", help="sample the interpolant on a mesh or point list")
    _add_config_arguments(p)
    p.add_argument("--input", required=True, help="coefficient file")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--points", default=None,
                   help="CSV of omega-check coordinates to evaluate at (any rank)")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run the verification suite")
    _add_config_arguments(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"etorus: {exc}", file=sys.stderr)
        return exc.code
    except GridMismatchError as exc:
        print(f"etorus: grid mismatch: {exc}", file=sys.stderr)
        return EXIT_GRID_MISMATCH
    except MalformedDataError as exc:
        print(f"etorus: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except EtorusError as exc:
        print(f"etorus: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"etorus: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
