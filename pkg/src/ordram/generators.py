"""Seeded instance generators for graphs and curve families.

Every generator draws from the embedded SplitMix64 stream only, consuming a
fixed number of draws per decision, so identical parameters and seed give
byte-identical instances on any platform. Curve coordinates are rationals
with small denominators to keep exact arithmetic cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import OrderedGraph, interval_partition
from .curves import CurveFamily, PolylineCurve, grounded_family
from .rng import SplitMix64

GRAPH_KINDS = ("two-clique", "four-clique", "random-ordered")
CURVE_KINDS = ("grounded-curves", "crossing-curves")


def gen_two_clique(n: int, p: float, seed: int) -> OrderedGraph:
    """Two interval cliques with Bernoulli(p) cross edges.

    The pair stream is fixed (left vertex ascending, then right vertex
    ascending) and one draw is consumed per cross pair regardless of p.
    """
    half = n // 2
    edges = [(i, j) for i in range(half) for j in range(i + 1, half)]
    edges += [(i, j) for i in range(half, n) for j in range(i + 1, n)]
    rng = SplitMix64(seed)
    for i in range(half):
        for j in range(half, n):
            if rng.chance(p):
                edges.append((i, j))
    return OrderedGraph(n, edges)


def gen_four_clique(n: int, epsilon: float, seed: int) -> OrderedGraph:
    """Four interval cliques (remainder in the last) plus Bernoulli(epsilon)
    cross edges between distinct intervals, pair stream ascending."""
    intervals = interval_partition(n, 4)
    block = [0] * n
    for b, iv in enumerate(intervals):
        for v in iv:
            block[v] = b
    edges = []
    rng = SplitMix64(seed)
    for i in range(n):
        for j in range(i + 1, n):
            if block[i] == block[j]:
                edges.append((i, j))
            elif rng.chance(epsilon):
                edges.append((i, j))
    return OrderedGraph(n, edges)


def gen_random_ordered(n: int, p: float, seed: int) -> OrderedGraph:
    """Plain Bernoulli(p) graph on ordered vertices."""
    rng = SplitMix64(seed)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.chance(p)
    ]
    return OrderedGraph(n, edges)


def _wiggle(rng: SplitMix64, amplitude: int, denom: int) -> Fraction:
    return Fraction(rng.below(2 * amplitude * denom + 1) - amplitude * denom, denom)


def gen_grounded_curves(
    n: int, segs: int, seed: int, amplitude: int = 2, denom: int = 8
) -> CurveFamily:
    """Grounded x-monotone polylines with distinct integer y-intercepts.

    Each curve walks right in integer steps of 1..4 with its heights wiggled
    around the intercept by at most `amplitude`; larger amplitudes give
    denser intersection graphs.
    """
    if n < 1 or segs < 1:
        raise ValueError("need n >= 1 and segs >= 1")
    rng = SplitMix64(seed)
    intercepts = rng.shuffle(list(range(n)))
    curves = []
    for i in range(n):
        base = Fraction(intercepts[i])
        pts = [(Fraction(0), base)]
        x = Fraction(0)
        for s in range(segs):
            x = x + 1 + rng.below(4)
            if s == segs - 1:
                # distinct fractional tail so right endpoints never tie
                x = x + Fraction(i + 1, n + 1)
            pts.append((x, base + _wiggle(rng, amplitude, denom)))
        curves.append(PolylineCurve(tuple(pts)))
    return grounded_family(curves)


def gen_crossing_curves(
    n: int,
    segs: int,
    x0: Fraction,
    seed: int,
    amplitude: int = 2,
    denom: int = 8,
) -> CurveFamily:
    """Curves all properly crossing the vertical line x = x0.

    Crossing heights are distinct integers, and the horizontal extents on
    each side are distinct integers, so the orders a decomposition witness
    needs are always well defined. Each side is cut into `segs` equal-length
    segments whose interior heights wiggle by at most `amplitude` around the
    crossing height.
    """
    if n < 1 or segs < 1:
        raise ValueError("need n >= 1 and segs >= 1")
    x0 = Fraction(x0)
    rng = SplitMix64(seed)
    heights = rng.shuffle(list(range(n)))
    left_extents = rng.shuffle(list(range(1, n + 1)))
    right_extents = rng.shuffle(list(range(1, n + 1)))
    curves = []
    for i in range(n):
        h = Fraction(heights[i])
        lspan = Fraction(n + left_extents[i])
        rspan = Fraction(n + right_extents[i])
        pts = []
        for j in range(segs):
            x = x0 - lspan + j * lspan / segs
            pts.append((x, h + _wiggle(rng, amplitude, denom)))
        pts.append((x0, h))
        for j in range(1, segs + 1):
            x = x0 + j * rspan / segs
            pts.append((x, h + _wiggle(rng, amplitude, denom)))
        curves.append(PolylineCurve(tuple(pts)))
    return CurveFamily(tuple(curves), "none")


@dataclass(frozen=True)
class GenSpec:
    """Reproducible instance description: identical specs generate identical
    bytes."""

    kind: str
    n: int
    seed: int
    params: dict = field(compare=False, default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "seed": self.seed,
            "params": dict(self.params),
        }


def generate(spec: GenSpec) -> Union[OrderedGraph, CurveFamily]:
    p = spec.params
    if spec.kind == "two-clique":
        return gen_two_clique(spec.n, float(p.get("p", 0.0)), spec.seed)
    if spec.kind == "four-clique":
        return gen_four_clique(spec.n, float(p.get("epsilon", 0.0)), spec.seed)
    if spec.kind == "random-ordered":
        return gen_random_ordered(spec.n, float(p.get("p", 0.0)), spec.seed)
    if spec.kind == "grounded-curves":
        return gen_grounded_curves(
            spec.n,
            int(p.get("segs", 4)),
            spec.seed,
            amplitude=int(p.get("amplitude", 2)),
        )
    if spec.kind == "crossing-curves":
        return gen_crossing_curves(
            spec.n,
            int(p.get("segs", 2)),
            Fraction(p.get("x0", 0)),
            spec.seed,
            amplitude=int(p.get("amplitude", 2)),
        )
    raise ValueError(f"unknown generator kind {spec.kind!r}")
