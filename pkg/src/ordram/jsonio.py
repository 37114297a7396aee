"""File formats, validation diagnostics and outcome records.

Graph files:   {"n": int, "edges": [[i, j], ...]} with 0-based indices and
               i < j required on ingestion.
Curve files:   [{"points": [[xnum, xden, ynum, yden], ...]}, ...] with exact
               rational coordinates, denominators nonzero, x strictly
               increasing, at least two points per curve.

Outcome records are emitted as single JSON lines with a stable field order
so reruns with identical inputs and seed are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from . import __version__
from .core import OrderedGraph
from .curves import CurveFamily, PolylineCurve
from .errors import InputFormatError


def graph_to_json(g: OrderedGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def validate_graph_obj(obj) -> list[str]:
    bad: list[str] = []
    if not isinstance(obj, dict):
        return ["graph file must be a JSON object"]
    n = obj.get("n")
    if not isinstance(n, int) or n < 0:
        bad.append("n: must be a nonnegative integer")
        n = 0
    edges = obj.get("edges")
    if not isinstance(edges, list):
        return bad + ["edges: must be a list of pairs"]
    seen = set()
    for pos, e in enumerate(edges):
        where = f"edges[{pos}]"
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            bad.append(f"{where}: must be a pair of integers")
            continue
        i, j = e
        if i == j:
            bad.append(f"{where}: self-loop at {i}")
        elif i > j:
            bad.append(f"{where}: requires i < j, got [{i}, {j}]")
        elif not (0 <= i and j < n):
            bad.append(f"{where}: [{i}, {j}] outside 0..{n - 1}")
        elif (i, j) in seen:
            bad.append(f"{where}: duplicate of [{i}, {j}]")
        else:
            seen.add((i, j))
    return bad


def graph_from_json(obj) -> OrderedGraph:
    bad = validate_graph_obj(obj)
    if bad:
        raise InputFormatError(bad)
    return OrderedGraph(obj["n"], [tuple(e) for e in obj["edges"]])


def _frac_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def curves_to_json(fam: CurveFamily) -> list:
    return [
        {"points": [_frac_pair(x) + _frac_pair(y) for x, y in c.points]}
        for c in fam.curves
    ]


def validate_curves_obj(obj) -> list[str]:
    bad: list[str] = []
    if not isinstance(obj, list):
        return ["curve file must be a JSON list of curves"]
    for ci, cur in enumerate(obj):
        where = f"curves[{ci}]"
        if not isinstance(cur, dict) or "points" not in cur:
            bad.append(f"{where}: must be an object with a 'points' list")
            continue
        pts = cur["points"]
        if not isinstance(pts, list) or len(pts) < 2:
            bad.append(f"{where}.points: needs at least two points")
            continue
        xs = []
        broken = False
        for pi, row in enumerate(pts):
            if not (
                isinstance(row, list)
                and len(row) == 4
                and all(isinstance(v, int) for v in row)
            ):
                bad.append(f"{where}.points[{pi}]: must be [xnum,xden,ynum,yden]")
                broken = True
                continue
            if row[1] == 0 or row[3] == 0:
                bad.append(f"{where}.points[{pi}]: zero denominator")
                broken = True
                continue
            xs.append(Fraction(row[0], row[1]))
        if not broken and any(xs[i] >= xs[i + 1] for i in range(len(xs) - 1)):
            bad.append(f"{where}: x coordinates must be strictly increasing")
    return bad


def family_from_json(obj) -> CurveFamily:
    bad = validate_curves_obj(obj)
    if bad:
        raise InputFormatError(bad)
    curves = tuple(
        PolylineCurve(
            tuple(
                (Fraction(a, b), Fraction(c, d)) for a, b, c, d in cur["points"]
            )
        )
        for cur in obj
    )
    return CurveFamily(curves, "none")


def validate_file(path: Union[str, Path]) -> list[str]:
    """Format diagnostics for a graph or curve file; empty list means valid."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        return [f"unreadable: {exc}"]
    if isinstance(obj, dict):
        return validate_graph_obj(obj)
    if isinstance(obj, list):
        return validate_curves_obj(obj)
    return ["unrecognized file shape (expected object or list)"]


def load_graph(path: Union[str, Path]) -> OrderedGraph:
    return graph_from_json(json.loads(Path(path).read_text()))


def load_family(path: Union[str, Path]) -> CurveFamily:
    return family_from_json(json.loads(Path(path).read_text()))


def sha256_file(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def make_record(
    command: list[str],
    input_digest: Optional[str],
    variant: str,
    certificate,
    sizes: dict,
    seed: Optional[int],
    elapsed_ms: Optional[int] = None,
) -> dict:
    """Outcome record with a frozen field order (append-only JSON lines)."""
    return {
        "record": "outcome",
        "command": list(command),
        "input_digest": input_digest,
        "variant": variant,
        "certificate": certificate,
        "sizes": sizes,
        "elapsed_ms": elapsed_ms,
        "seed": seed,
        "version": __version__,
    }


def dump_record(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"), allow_nan=False)
