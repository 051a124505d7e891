"""Command-line interface: ``isospectral <command> GRAPH.json [options]``.

Vertices are named 1-based on the command line and in output (``v3`` or
``3``).  Exit status is 0 on success, 2 for invalid input and 3 when a
numerical computation fails to converge or exceeds a limit.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import apps, io
from .charpoly import char_poly, spectrum
from .graph import CycleOverflowError
from .reduce import (NotPiClassError, NotStructuralError, ReductionResult, eliminate_vertex,
                     identity_result, reduce_over, reduce_sequence)
from .regions import KINDS, auto_window, poly_extension, raster
from .wfield import RootFindingError

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class UsageError(ValueError):
    pass


def parse_vertices(text: str, n: int) -> list[int]:
    """``"v1,v3"`` or ``"1,3"`` (1-based) to 0-based indices; ``"all"`` for every vertex."""
    text = text.strip()
    if text.lower() == "all":
        return list(range(n))
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok.startswith("v"):
            tok = tok[1:]
        try:
            k = int(tok)
        except ValueError:
            raise UsageError(f"bad vertex label {tok!r}") from None
        if not 1 <= k <= n:
            raise UsageError(f"vertex v{k} out of range 1..{n}")
        out.append(k - 1)
    if not out:
        raise UsageError("empty vertex list")
    return out


def _labels(vs) -> list[str]:
    return [f"v{v + 1}" for v in vs]


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated numbers") from None
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated numbers")
    return vals


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> io.ParsedGraph:
    parsed = io.load_graph(path)
    for w in parsed.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return parsed


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    parsed = _load(args.graph)
    g = parsed.graph
    print(f"OK: {g.n} vertices, {g.edge_count} edges", file=sys.stderr)
    _write(io.dump_graph(g, parsed.index_base), args.out)
    return EXIT_OK


def _reduction_obj(res: ReductionResult, base: int) -> dict:
    return {
        "kept": _labels(res.kept),
        "graph": io.graph_to_obj(res.graph, base),
        "exceptional": [io.complex_to_obj(z) for z in res.exceptional],
        "exceptional_polys": [io.poly_to_obj(p) for p in res.exceptional_polys],
        "trace": [_labels(t) for t in res.trace],
    }


def cmd_reduce(args) -> int:
    parsed = _load(args.graph)
    g = parsed.graph
    chosen = [x is not None for x in (args.keep, args.eliminate, args.sequence)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --keep, --eliminate, --sequence")
    if args.keep is not None:
        keep = parse_vertices(args.keep, g.n)
        res = reduce_over(g, keep) if len(set(keep)) < g.n else identity_result(g)
    elif args.eliminate is not None:
        res = identity_result(g)
        for v in parse_vertices(args.eliminate, g.n):
            if v not in res.kept:
                raise UsageError(f"v{v + 1} listed twice")
            res = res.then(eliminate_vertex(res.graph, res.kept.index(v)))
    else:
        keeps = [parse_vertices(part, g.n) for part in args.sequence.split(";") if part.strip()]
        res = reduce_sequence(g, keeps)
    print("exceptional set: {" + ", ".join(io.fmt_number(z) for z in res.exceptional) + "}",
          file=sys.stderr)
    _write(io.dumps(_reduction_obj(res, parsed.index_base)), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = _load(args.graph).graph
    spec = spectrum(g, args.tol)
    if args.json:
        obj = {
            "charpoly": {"num": io.poly_to_obj(char_poly(g).num), "den": io.poly_to_obj(char_poly(g).den)},
            "eigenvalues": [{"value": io.complex_to_obj(v), "multiplicity": m} for v, m in spec],
        }
        sys.stdout.write(io.dumps(obj))
    else:
        print(f"characteristic function: {char_poly(g)}")
        for v, m in spec:
            print(f"{io.fmt_number(v)}\t(x{m})")
    return EXIT_OK


def cmd_region(args) -> int:
    g = _load(args.graph).graph
    ext = poly_extension(g)
    if args.window:
        window = _floats(args.window, 4, "--window")
    else:
        window = auto_window([ext])
    res = _floats(args.res, 2, "--res") if "," in args.res else [float(args.res)] * 2
    res = [int(r) for r in res]
    grid = raster(ext, args.kind, window, res)
    text = io.dumps(io.raster_to_obj(grid, g))
    _write(text, args.out)
    print(f"{args.kind}: {int(grid.union.sum())} of {res[0] * res[1]} cells in the union",
          file=sys.stderr)
    return EXIT_OK


def cmd_rho(args) -> int:
    g = _load(args.graph).graph
    est = apps.estimate_rho(g, args.levels)
    for lv in est.levels:
        ex = ", ".join(io.fmt_number(z) for z in lv.exceptional)
        print(f"level {lv.level}: keep {{{','.join(_labels(lv.kept))}}}  bound {lv.bound:.4f}"
              f"  (region radius {lv.region_radius:.4f}; retained exceptional {{{ex}}})")
    print(f"spectral radius <= {est.bound:.4f}")
    return EXIT_OK


def cmd_laplacian(args) -> int:
    parsed = _load(args.graph)
    _write(io.dump_graph(apps.laplacian(parsed.graph, args.kind), parsed.index_base), args.out)
    return EXIT_OK


def cmd_suggest(args) -> int:
    g = _load(args.graph).graph
    sugg = apps.suggest_structural_sets(g, args.strategy)
    if not sugg:
        print("no candidate structural sets")
    for rank, s in enumerate(sugg[: args.top], 1):
        removed = s.removed_from(g.n)
        print(f"{rank}. keep {{{','.join(_labels(s.keep))}}}  remove {{{','.join(_labels(removed))}}}"
              f"  score {s.score:g}  ({s.note})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isospectral", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph file and print it in canonical form")
    s.add_argument("graph")
    s.add_argument("--out", help="write the canonical graph here instead of stdout")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("reduce", help="isospectral reduction onto a vertex set")
    s.add_argument("graph")
    s.add_argument("--keep", help="kept vertices, e.g. v1,v2,v3 (or 'all')")
    s.add_argument("--eliminate", help="vertices removed one at a time, in order")
    s.add_argument("--sequence", help="kept sets applied in turn, e.g. 'v1,v2,v3;v1,v2'")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("spectrum", help="eigenvalues with multiplicity")
    s.add_argument("graph")
    s.add_argument("--tol", type=float, default=1e-6, help="root residual tolerance")
    s.add_argument("--json", action="store_true", help="machine-readable output")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("region", help="rasterize an eigenvalue inclusion region")
    s.add_argument("graph")
    s.add_argument("--kind", choices=KINDS, default="gershgorin")
    s.add_argument("--window", help="re_min,re_max,im_min,im_max (use --window=-3,3,-3,3)")
    s.add_argument("--res", default="400", help="N or NX,NY cells")
    s.add_argument("--out", help="raster file (default stdout)")
    s.set_defaults(func=cmd_region)

    s = sub.add_parser("rho", help="upper bound on the spectral radius")
    s.add_argument("graph")
    s.add_argument("--levels", type=int, default=1)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("laplacian", help="Laplacian matrix of a graph")
    s.add_argument("graph")
    s.add_argument("--kind", choices=("combinatorial", "normalized", "generalized"),
                   default="combinatorial")
    s.add_argument("--out")
    s.set_defaults(func=cmd_laplacian)

    s = sub.add_parser("suggest", help="rank candidate structural sets")
    s.add_argument("graph")
    s.add_argument("--strategy", choices=apps.STRATEGIES, default="loopless_first")
    s.add_argument("--top", type=int, default=10)
    s.set_defaults(func=cmd_suggest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RootFindingError, CycleOverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (io.GraphFormatError, NotStructuralError, NotPiClassError, UsageError,
            ValueError, IndexError, ZeroDivisionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
