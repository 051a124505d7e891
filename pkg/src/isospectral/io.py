"""JSON file formats for graphs, reductions and rasters.

Graph files::

    {"format": "isospectral-graph", "version": 1, "n": 3, "index_base": 1,
     "entries": [{"i": 1, "j": 2, "num": [[1, 0]], "den": [[0, 0], [1, 0]]}, ...]}

Coefficients are ``[re, im]`` pairs in ascending degree (a bare real number
is also accepted on input).  ``den`` defaults to 1.  Missing entries are
zero weights and repeated ``(i, j)`` entries are summed.  Output is
canonical: entries sorted, lowest terms, monic denominators, numbers
rounded to 12 significant digits.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph import WeightedDigraph
from .regions import RasterGrid
from .wfield import Poly, RationalFn

__all__ = [
    "GraphFormatError", "ParsedGraph", "parse_graph", "load_graph", "dump_graph",
    "graph_to_obj", "graph_hash", "encode_rle", "decode_rle", "raster_to_obj",
    "raster_from_obj", "fmt_number", "poly_to_obj", "complex_to_obj",
]

GRAPH_FORMAT = "isospectral-graph"
RASTER_FORMAT = "isospectral-raster"
DIGITS = 12


class GraphFormatError(ValueError):
    """Malformed graph file; the message names the offending entry."""


@dataclass
class ParsedGraph:
    graph: WeightedDigraph
    index_base: int = 1
    warnings: list[str] = field(default_factory=list)


def _round(x: float) -> float:
    if x == 0 or not np.isfinite(x):
        return 0.0
    r = float(f"{x:.{DIGITS}g}")
    return 0.0 if r == 0 else r


def _num_out(x: float):
    r = _round(x)
    return int(r) if r.is_integer() and abs(r) < 2 ** 53 else r


def complex_to_obj(z: complex) -> list:
    return [_num_out(z.real), _num_out(z.imag)]


def poly_to_obj(p: Poly) -> list:
    return [complex_to_obj(complex(c)) for c in p.c]


def fmt_number(z: complex) -> str:
    """Human-readable complex number with 12 significant digits."""
    re, im = _round(z.real), _round(z.imag)
    if im == 0:
        return f"{re:.{DIGITS}g}"
    if re == 0:
        return f"{im:.{DIGITS}g}i"
    return f"{re:.{DIGITS}g}{im:+.{DIGITS}g}i"


def _coeffs(obj, where: str) -> Poly:
    if not isinstance(obj, list):
        raise GraphFormatError(f"{where}: coefficients must be a list")
    out = []
    for k, c in enumerate(obj):
        if isinstance(c, bool):
            raise GraphFormatError(f"{where}: coefficient {k} is not a number")
        if isinstance(c, (int, float)):
            out.append(complex(c))
        elif (isinstance(c, list) and len(c) == 2
              and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)):
            out.append(complex(c[0], c[1]))
        else:
            raise GraphFormatError(f"{where}: coefficient {k} must be [re, im]")
        if not np.isfinite(out[-1]):
            raise GraphFormatError(f"{where}: coefficient {k} is not finite")
    return Poly(out)


def parse_graph(obj: Any) -> ParsedGraph:
    """Validate and convert a decoded graph file."""
    if not isinstance(obj, dict):
        raise GraphFormatError("graph file must be a JSON object")
    fmt = obj.get("format", GRAPH_FORMAT)
    if fmt != GRAPH_FORMAT:
        raise GraphFormatError(f"unexpected format {fmt!r}")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphFormatError("'n' must be a positive integer")
    base = obj.get("index_base", 1)
    if base not in (0, 1):
        raise GraphFormatError("'index_base' must be 0 or 1")
    entries = obj.get("entries", [])
    if not isinstance(entries, list):
        raise GraphFormatError("'entries' must be a list")
    w = [[RationalFn() for _ in range(n)] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    notes: list[str] = []
    for k, e in enumerate(entries):
        where = f"entry {k}"
        if not isinstance(e, dict):
            raise GraphFormatError(f"{where}: must be an object")
        try:
            i, j = e["i"], e["j"]
        except KeyError as exc:
            raise GraphFormatError(f"{where}: missing field {exc.args[0]!r}") from None
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise GraphFormatError(f"{where}: 'i' and 'j' must be integers")
        where = f"entry {k} ({i},{j})"
        if not (base <= i < n + base and base <= j < n + base):
            raise GraphFormatError(f"{where}: index out of range for n={n}, index_base={base}")
        if "num" not in e:
            raise GraphFormatError(f"{where}: missing field 'num'")
        num = _coeffs(e["num"], where)
        den = _coeffs(e["den"], where) if "den" in e else Poly([1])
        if den.is_zero:
            raise GraphFormatError(f"zero denominator at ({i},{j})")
        a, b = i - base, j - base
        if (a, b) in seen:
            notes.append(f"duplicate entry ({i},{j}) merged by summing weights")
        seen.add((a, b))
        w[a][b] = w[a][b] + RationalFn(num, den)
    return ParsedGraph(WeightedDigraph(w), base, notes)


def load_graph(path: str) -> ParsedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return parse_graph(obj)


def graph_to_obj(g: WeightedDigraph, index_base: int = 1) -> dict:
    entries = []
    for i, j in g.edges():
        w = g[i, j]
        e = {"i": i + index_base, "j": j + index_base, "num": poly_to_obj(w.num)}
        if w.den.degree > 0:
            e["den"] = poly_to_obj(w.den)
        entries.append(e)
    return {"format": GRAPH_FORMAT, "version": 1, "n": g.n, "index_base": index_base,
            "entries": entries}


def _compact(obj, indent: int = 0) -> str:
    # one top-level key per line and one list item per line; leaves stay compact
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_compact(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        items = [pad + json.dumps(x, separators=(", ", ": "), ensure_ascii=False) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=False)


def dumps(obj) -> str:
    return _compact(obj) + "\n"


def dump_graph(g: WeightedDigraph, index_base: int = 1) -> str:
    """Canonical text of a graph file."""
    return dumps(graph_to_obj(g, index_base))


def graph_hash(g: WeightedDigraph) -> str:
    return hashlib.sha256(dump_graph(g, 0).encode()).hexdigest()


# ---------------------------------------------------------------------------
# rasters


def encode_rle(mask: np.ndarray) -> list[int]:
    """Run lengths of the row-major flattened mask, starting with a run of False."""
    flat = np.asarray(mask, dtype=bool).ravel()
    if flat.size == 0:
        return []
    change = np.nonzero(flat[1:] != flat[:-1])[0] + 1
    bounds = np.concatenate([[0], change, [flat.size]])
    runs = np.diff(bounds).tolist()
    if flat[0]:
        runs = [0] + runs
    return [int(r) for r in runs]


def decode_rle(runs: list[int], shape: tuple[int, int]) -> np.ndarray:
    total = int(np.prod(shape))
    if sum(runs) != total or any(r < 0 for r in runs):
        raise ValueError(f"run lengths sum to {sum(runs)}, expected {total}")
    vals = np.arange(len(runs)) % 2 == 1
    return np.repeat(vals, runs).reshape(shape)


def raster_to_obj(grid: RasterGrid, g: WeightedDigraph | None = None) -> dict:
    nx, ny = grid.resolution
    return {
        "format": RASTER_FORMAT,
        "version": 1,
        "window": [_num_out(x) for x in grid.window],
        "resolution": [nx, ny],
        "layout": "row-major, shape [ny, nx], rows ascend in imaginary part",
        "metadata": {
            "graph_sha256": graph_hash(g) if g is not None else None,
            "kind": grid.kind,
            "slack": grid.slack,
        },
        "masks": [{"label": s.label(), "cells": int(m.sum()), "rle": encode_rle(m)}
                  for s, m in zip(grid.specs, grid.masks)],
        "union": {"cells": int(grid.union.sum()), "rle": encode_rle(grid.union)},
    }


def raster_from_obj(obj: dict) -> dict:
    """Decode masks of a raster file into boolean arrays keyed by label (plus ``"union"``)."""
    if obj.get("format") != RASTER_FORMAT:
        raise ValueError("not a raster file")
    nx, ny = obj["resolution"]
    out = {m["label"]: decode_rle(m["rle"], (ny, nx)) for m in obj["masks"]}
    out["union"] = decode_rle(obj["union"]["rle"], (ny, nx))
    return out
