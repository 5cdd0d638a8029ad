"""Command-line driver: analyze a matrix, run the gallery, fuzz the bounds, measure convex bodies.

Exit codes: 0 success, 1 input or usage error, 2 a failed gallery check or
violated theorem bound in ``analyze``/``gallery``, 3 a violated theorem
bound during ``fuzz``. Conjecture counterexample candidates do not change
the exit code; they print a ``CONJECTURE CANDIDATE`` banner on stderr.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import math
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, bounds, convexgeom, gallery, numrange
from .linalg import as_matrix

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_FUZZ_VIOLATION = 0, 1, 2, 3
# cap on boundary points written to a report
MAX_REPORT_POINTS = 256


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------- matrix files

_IMAG_ONLY = re.compile(r"^([+-]?)([ij])$")


def parse_complex(token: str) -> complex:
    """Parse ``re``, ``re+imi``, ``imi``, ``-i`` (``j`` works too)."""
    tok = token.strip().replace(" ", "")
    m = _IMAG_ONLY.match(tok)
    if m:
        tok = f"{m.group(1)}1j"
    else:
        tok = re.sub(r"(?<=[0-9.eE+-])i$", "j", tok)
        tok = re.sub(r"([+-])i$", r"\g<1>1j", tok)
    try:
        z = complex(tok)
    except ValueError:
        raise InputError(f"not a complex number: {token!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"non-finite entry: {token!r}")
    return z


def _matrix_from_json(doc):
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise InputError('JSON matrix needs keys "n" and "entries"')
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError('"n" must be a positive integer')
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n * n:
        raise InputError(f'"entries" must hold n^2 = {n * n} pairs')
    vals = []
    for k, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise InputError(f"entry {k} is not a [re, im] pair of numbers")
        z = complex(pair[0], pair[1])
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InputError(f"entry {k} is not finite")
        vals.append(z)
    return np.array(vals, dtype=complex).reshape(n, n)


def _matrix_from_text(text):
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_complex(t) for t in re.split(r"[,\s]+", line) if t])
        except InputError as err:
            raise InputError(f"line {lineno}: {err}") from None
    if not rows:
        raise InputError("no matrix rows found")
    n = len(rows)
    bad = [i for i, r in enumerate(rows) if len(r) != n]
    if bad:
        raise InputError(f"expected {n} entries per row for a {n}x{n} matrix; row {bad[0] + 1} has {len(rows[bad[0]])}")
    return np.array(rows, dtype=complex)


def read_matrix(path) -> np.ndarray:
    """Read a JSON ``{"n", "entries"}`` file or a text file with one row per line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise InputError(f"cannot read {path}: {err}") from None
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise InputError(f"invalid JSON: {err}") from None
        M = _matrix_from_json(doc)
    else:
        M = _matrix_from_text(text)
    return as_matrix(M)


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"n": int(A.shape[0]), "entries": [[float(z.real), float(z.imag)] for z in A.ravel()]}


# ------------------------------------------------------------------ output


def load_schema() -> dict:
    """The JSON schema every report validates against."""
    return json.loads(importlib.resources.files(__package__).joinpath("report.schema.json").read_text("utf-8"))


def _envelope(command, **payload):
    return {"tool_version": __version__, "command": command, **payload}


def _emit(doc, out):
    # json writes floats via repr, the shortest string that round-trips exactly
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _downsample(sample, limit=MAX_REPORT_POINTS):
    n = len(sample.angles)
    if n <= limit:
        return sample
    idx = np.unique(np.linspace(0, n - 1, limit).round().astype(int))
    return numrange.BoundarySample(sample.angles[idx], sample.support[idx], sample.points[idx])


# ---------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    A = read_matrix(args.file)
    area_tol = args.area_tol if args.area_tol > 0 else None
    rep = bounds.evaluate_bounds(A, n_angles=args.angles, area_tol=area_tol)
    doc = _envelope(
        "analyze",
        input={"path": str(args.file), "n": int(A.shape[0]), "matrix": matrix_to_json(A)},
        bounds=rep.to_dict(),
    )
    if args.boundary:
        doc["boundary"] = _downsample(numrange.boundary(A, args.angles)).to_dict()
    if args.widths:
        doc["widths"] = numrange.width_profile(A, numrange.DEFAULT_WIDTH_ANGLES).to_dict()
    doc["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(doc, args.out)
    if not rep.theorems_hold:
        bad = [k for k, ok in rep.flags.items() if not ok]
        print(f"error: theorem bound violated: {', '.join(bad)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_gallery(args) -> int:
    t0 = time.perf_counter()
    names = gallery.select(args.filter)
    if not names:
        print(f"warning: no gallery entry matches {args.filter!r}", file=sys.stderr)
    entries = [gallery.GALLERY[name]() for name in names]
    doc = _envelope(
        "gallery",
        filter=args.filter,
        entries=[{"id": name, **e.to_dict(), "pass": e.passed} for name, e in zip(names, entries)],
        timing={"seconds": time.perf_counter() - t0},
    )
    _emit(doc, args.out)
    failed = [name for name, e in zip(names, entries) if not e.passed]
    if failed:
        print(f"error: gallery checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_fuzz(args) -> int:
    t0 = time.perf_counter()
    area_tol = args.area_tol if args.area_tol > 0 else None
    result = bounds.fuzz_conjectures(args.ensemble, args.dim, args.trials, args.seed, area_tol=area_tol)
    if args.csv:
        Path(args.csv).write_text(result.to_csv(), encoding="utf-8")
    summary = dict(result.summary)
    candidates = {k: summary[k]["candidates"] for k in ("conj1", "conj2")}
    summary["conjecture_candidate"] = any(candidates.values())
    doc = _envelope("fuzz", summary=summary, timing={"seconds": time.perf_counter() - t0})
    _emit(doc, args.out)
    for k, count in candidates.items():
        if count:
            worst = summary[k]["smallest"][0]
            print(
                f"*** CONJECTURE CANDIDATE *** {k}: {count} trial(s) below -{bounds.THEOREM_RTOL:g}; "
                f"min slack {worst['slack']!r} at seed {worst['seed']} trial {worst['trial']}",
                file=sys.stderr,
            )
    if summary["theorem_violations"]:
        print(f"error: {len(summary['theorem_violations'])} trial(s) violate a theorem bound", file=sys.stderr)
        return EXIT_FUZZ_VIOLATION
    return EXIT_OK


def _convex_body(args):
    if args.shape == "triangle":
        P = convexgeom.equilateral_triangle()
        area = 3 * math.sqrt(3) / 4
        return P, {"min_width_product": 3 * math.sqrt(3) / 2, "area": area, "ratio": 2.0}
    if args.shape == "ellipse":
        a, b = args.a, args.b
        if not (a >= b > 0):
            raise InputError("ellipse needs --a >= --b > 0")
        E = convexgeom.EllipseSpec(a, b)
        return E, {"min_width_product": 4 * a * b, "area": math.pi * a * b, "ratio": 4 / math.pi}
    if args.shape == "reuleaux":
        w = args.width
        if not w > 0:
            raise InputError("reuleaux needs --width > 0")
        P = convexgeom.reuleaux_triangle(w, n_samples=2000)
        area = (math.pi - math.sqrt(3)) * w * w / 2
        return P, {"min_width_product": w * w, "area": area, "ratio": 2 / (math.pi - math.sqrt(3))}
    if args.file is None:
        raise InputError("polygon needs --file")
    try:
        P = convexgeom.read_polygon_file(args.file)
    except OSError as err:
        raise InputError(f"cannot read {args.file}: {err}") from None
    except ValueError as err:
        raise InputError(str(err)) from None
    if P.is_degenerate:
        raise InputError("polygon has zero area")
    return P, None


def cmd_convex(args) -> int:
    t0 = time.perf_counter()
    body, closed = _convex_body(args)
    t, prod = convexgeom.min_width_product(body, args.angles)
    if isinstance(body, convexgeom.EllipseSpec):
        area = body.area
        ts = np.pi / 2 * np.arange(args.angles) / args.angles
        pairs = [convexgeom.ellipse_width(body, x) for x in ts]
        profile = [[p.t, p.wk, p.wj] for p in pairs]
        witness = None
    else:
        area = convexgeom.polygon_area(body)
        ts = np.pi / 2 * np.arange(args.angles) / args.angles
        wk = convexgeom.width(body, ts)
        wj = convexgeom.width(body, ts + np.pi / 2)
        profile = [[float(a), float(b), float(c)] for a, b, c in zip(ts, wk, wj)]
        Q = convexgeom.witness_quadrilateral(body)
        witness = {"vertices": Q.vertices.tolist(), "area": convexgeom.polygon_area(Q)}
    doc = _envelope(
        "convex",
        shape=args.shape,
        min_width_product={"t": t, "value": prod},
        area=area,
        ratio=prod / area,
        width_profile=profile,
    )
    if witness is not None:
        doc["witness_quadrilateral"] = witness
    if closed is not None:
        got = {"min_width_product": prod, "area": area, "ratio": prod / area}
        doc["closed_form"] = {k: {"expected": v, "got": got[k], "abs_error": abs(got[k] - v)} for k, v in closed.items()}
    doc["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(doc, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _positive_int(lo):
    def parse(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}")
        return v

    return parse


def _nonneg_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not v >= 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a finite number >= 0")
    return v


def build_parser():
    p = _Parser(prog="selfcomm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="all bounds for one matrix file")
    a.add_argument("file")
    a.add_argument("--angles", type=_positive_int(64), default=numrange.DEFAULT_AREA_ANGLES,
                   help="boundary normals for the area (default %(default)s)")
    a.add_argument("--area-tol", type=_nonneg_float, default=numrange.DEFAULT_AREA_TOL,
                   help="refine the area until the enclosure is this tight; 0 disables (default %(default)s)")
    a.add_argument("--boundary", action="store_true", help="include the sampled boundary")
    a.add_argument("--widths", action="store_true", help="include the width profile")
    a.add_argument("--out", help="write the JSON report here instead of stdout")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gallery", help="closed-form checks on the worked examples")
    g.add_argument("--filter", help="glob, or substring when it has no wildcard")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gallery)

    f = sub.add_parser("fuzz", help="seeded random-matrix campaign")
    f.add_argument("--ensemble", required=True, choices=bounds.ENSEMBLES)
    f.add_argument("--dim", required=True, type=_positive_int(1))
    f.add_argument("--trials", required=True, type=_positive_int(1))
    f.add_argument("--seed", required=True, type=_positive_int(0))
    f.add_argument("--area-tol", type=_nonneg_float, default=numrange.DEFAULT_AREA_TOL,
                   help="area refinement target; 0 keeps the plain grid (default %(default)s)")
    f.add_argument("--csv", help="write per-trial slacks as CSV")
    f.add_argument("--out", help="write the JSON summary here instead of stdout")
    f.set_defaults(func=cmd_fuzz)

    c = sub.add_parser("convex", help="width functionals of a planar convex body")
    c.add_argument("--shape", required=True, choices=("triangle", "ellipse", "reuleaux", "polygon"))
    c.add_argument("--a", type=float, default=2.0, help="ellipse semi-major axis")
    c.add_argument("--b", type=float, default=1.0, help="ellipse semi-minor axis")
    c.add_argument("--width", type=float, default=1.0, help="Reuleaux triangle width")
    c.add_argument("--file", help="polygon file, one 'x y' pair per line")
    c.add_argument("--angles", type=_positive_int(64), default=convexgeom.DEFAULT_WIDTH_ANGLES)
    c.add_argument("--out")
    c.set_defaults(func=cmd_convex)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        # InputError, NotSquareError and bad parameters all land here
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
