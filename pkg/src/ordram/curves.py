"""Exact x-monotone polyline geometry and the curve-family bi-clique pipeline.

Conventions fixed here once:
  - All coordinates are exact rationals (fractions.Fraction); predicates are
    decided by sign computations, never by floating-point epsilons.
  - Curves are closed point sets, so touching endpoints count as an
    intersection.
  - A grounded curve starts on the vertical axis (first point has x = 0) and
    lives in the closed right half-plane.
  - Splitting at a vertical line reflects the left parts about the line, so
    both halves present as grounded families in the canonical frame; a
    reflection is an isometry, so intersection structure is untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .core import (
    Biclique,
    OrderedGraph,
    _bits,
    _mask,
    complement,
    induced_subgraph,
    is_biclique,
    m1_pattern,
    max_biclique_oracle,
    max_degree,
    monotone_path,
    find_induced_embedding,
)
from .errors import (
    CurveMissesLine,
    DuplicateKey,
    InstanceTooLarge,
    OracleContractViolation,
)
from .outcomes import CoBicliqueFound, InducedPatternFound, PreconditionViolation

Point = tuple[Fraction, Fraction]

GROUNDED_Y_ORDER = "grounded-y-order"
RIGHT_ENDPOINT_ORDER = "right-endpoint-order"
NO_ORDER = "none"


@dataclass(frozen=True)
class PolylineCurve:
    """x-monotone piecewise-linear curve: at least two points, x strictly
    increasing, so every vertical line meets it in at most one point."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a polyline needs at least two points")
        xs = [p[0] for p in self.points]
        if any(xs[i] >= xs[i + 1] for i in range(len(xs) - 1)):
            raise ValueError("x coordinates must be strictly increasing")

    @property
    def x_first(self) -> Fraction:
        return self.points[0][0]

    @property
    def x_last(self) -> Fraction:
        return self.points[-1][0]

    @property
    def y_start(self) -> Fraction:
        return self.points[0][1]

    def y_range(self) -> tuple[Fraction, Fraction]:
        ys = [p[1] for p in self.points]
        return min(ys), max(ys)

    def segments(self) -> list[tuple[Point, Point]]:
        return [
            (self.points[i], self.points[i + 1])
            for i in range(len(self.points) - 1)
        ]

    def is_grounded(self) -> bool:
        return self.x_first == 0

    def y_at(self, x: Fraction) -> Fraction:
        """Height of the unique curve point at abscissa x (x must be covered)."""
        if not self.x_first <= x <= self.x_last:
            raise ValueError(f"x={x} outside the curve's span")
        pts = self.points
        for i in range(len(pts) - 1):
            (x0, y0), (x1, y1) = pts[i], pts[i + 1]
            if x0 <= x <= x1:
                if x == x0:
                    return y0
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[-1][1]

    def translated(self, dx: Fraction) -> "PolylineCurve":
        return PolylineCurve(tuple((x + dx, y) for x, y in self.points))

    def reflected_about(self, x0: Fraction) -> "PolylineCurve":
        """Mirror about the vertical line x = x0; point order is reversed to
        keep x increasing."""
        return PolylineCurve(tuple((x0 - x, y) for x, y in reversed(self.points)))


def curve_from_rationals(rows: Sequence[Sequence[int]]) -> PolylineCurve:
    """Build a curve from [xnum, xden, ynum, yden] rows."""
    return PolylineCurve(
        tuple((Fraction(a, b), Fraction(c, d)) for a, b, c, d in rows)
    )


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _bbox_overlap(p: Point, q: Point, r: Point, s: Point) -> bool:
    return (
        min(p[0], q[0]) <= max(r[0], s[0])
        and min(r[0], s[0]) <= max(p[0], q[0])
        and min(p[1], q[1]) <= max(r[1], s[1])
        and min(r[1], s[1]) <= max(p[1], q[1])
    )


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """p collinear with a,b assumed; True iff p lies within the closed box."""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed-segment intersection by exact orientation signs."""
    if not _bbox_overlap(p1, p2, q1, q2):
        return False
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def curves_intersect(c1: PolylineCurve, c2: PolylineCurve) -> bool:
    """Whether the two closed polylines share a point.

    Prunes by the x-spans and y-ranges, then walks the two segment lists in
    x order so only x-overlapping segment pairs are tested.
    """
    if c1.x_last < c2.x_first or c2.x_last < c1.x_first:
        return False
    lo1, hi1 = c1.y_range()
    lo2, hi2 = c2.y_range()
    if hi1 < lo2 or hi2 < lo1:
        return False
    segs1 = c1.segments()
    segs2 = c2.segments()
    i = j = 0
    while i < len(segs1) and j < len(segs2):
        a, b = segs1[i]
        c, d = segs2[j]
        if b[0] < c[0]:
            i += 1
            continue
        if d[0] < a[0]:
            j += 1
            continue
        if segments_intersect(a, b, c, d):
            return True
        if b[0] < d[0]:
            i += 1
        else:
            j += 1
    return False


# ---------------------------------------------------------------------------
# Families and intersection graphs.

@dataclass(frozen=True)
class CurveFamily:
    """A curve list plus the provenance of its vertex order."""

    curves: tuple[PolylineCurve, ...]
    order_tag: str = NO_ORDER

    def __len__(self) -> int:
        return len(self.curves)


def grounded_family(curves: Iterable[PolylineCurve]) -> CurveFamily:
    """Validate groundedness and sort by the y coordinate on the axis."""
    cs = list(curves)
    for i, c in enumerate(cs):
        if not c.is_grounded():
            raise ValueError(f"curve {i} is not grounded (first x != 0)")
    keys = [c.y_start for c in cs]
    if len(set(keys)) != len(keys):
        raise DuplicateKey("two curves share a y-intercept; perturb the input")
    cs.sort(key=lambda c: c.y_start)
    return CurveFamily(tuple(cs), GROUNDED_Y_ORDER)


def right_ordered_family(curves: Iterable[PolylineCurve]) -> CurveFamily:
    """Sort by right-endpoint x coordinate, requiring distinct keys."""
    cs = list(curves)
    keys = [c.x_last for c in cs]
    if len(set(keys)) != len(keys):
        raise DuplicateKey("two curves share a right endpoint x; perturb the input")
    cs.sort(key=lambda c: c.x_last)
    return CurveFamily(tuple(cs), RIGHT_ENDPOINT_ORDER)


def intersection_graph_of(curves: Sequence[PolylineCurve]) -> OrderedGraph:
    """Intersection graph with the list order as the vertex order."""
    n = len(curves)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if curves_intersect(curves[i], curves[j])
    ]
    return OrderedGraph(n, edges)


def intersection_graph(fam: CurveFamily) -> OrderedGraph:
    """Intersection graph in the family's resolved vertex order: the stored
    order for tagged families, right-endpoint order otherwise."""
    if fam.order_tag == NO_ORDER:
        fam = right_ordered_family(fam.curves)
    return intersection_graph_of(fam.curves)


@dataclass(frozen=True)
class GroundedReport:
    """Outcome of the two structural checks on a grounded, y-ordered family."""

    m1_witness: Optional[tuple[int, ...]]
    p4_witness: Optional[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return self.m1_witness is None and self.p4_witness is None


def grounded_ordering_properties(fam: CurveFamily) -> GroundedReport:
    """Check that the y-ordered intersection graph has no induced intertwined
    two-edge matching, and its complement no induced four-vertex monotone
    path. A witness here would indicate a geometry bug, so it is returned for
    inspection rather than swallowed."""
    if fam.order_tag != GROUNDED_Y_ORDER:
        fam = grounded_family(fam.curves)
    g = intersection_graph(fam)
    m1 = find_induced_embedding(g, m1_pattern())
    p4 = find_induced_embedding(complement(g), monotone_path(4))
    return GroundedReport(
        m1.mapping if m1 else None,
        p4.mapping if p4 else None,
    )


def split_at_line(
    fam: CurveFamily, x0: Fraction
) -> tuple[CurveFamily, CurveFamily, tuple[int, ...]]:
    """Cut every curve at the vertical line x = x0 into grounded halves.

    Both halves are returned in the shared vertex order given by the curves'
    heights at the line (which must be distinct); order_map[i] is the index
    in the input family of the curve at shared position i. A curve whose
    interior vertex lies on the line splits at that vertex; otherwise the
    crossing point is interpolated. Curves that merely touch the line with an
    endpoint (or miss it) are rejected.
    """
    x0 = Fraction(x0)
    heights: list[tuple[Fraction, int]] = []
    for idx, c in enumerate(fam.curves):
        if not (c.x_first < x0 < c.x_last):
            raise CurveMissesLine(idx, f"needs x_first < {x0} < x_last")
        heights.append((c.y_at(x0), idx))
    if len({h for h, _ in heights}) != len(heights):
        raise DuplicateKey("two curves cross the line at the same height")
    heights.sort()
    order_map = tuple(idx for _, idx in heights)

    lefts, rights = [], []
    for _, idx in heights:
        c = fam.curves[idx]
        left_pts = [p for p in c.points if p[0] < x0]
        right_pts = [p for p in c.points if p[0] > x0]
        cross = (x0, c.y_at(x0))
        left = PolylineCurve(tuple(left_pts + [cross]))
        right = PolylineCurve(tuple([cross] + right_pts))
        lefts.append(left.reflected_about(x0))
        rights.append(right.translated(-x0))
    left_fam = CurveFamily(tuple(lefts), GROUNDED_Y_ORDER)
    right_fam = CurveFamily(tuple(rights), GROUNDED_Y_ORDER)
    return left_fam, right_fam, order_map


def graph_union(g1: OrderedGraph, g2: OrderedGraph) -> OrderedGraph:
    if g1.n != g2.n:
        raise ValueError("union requires equal vertex counts")
    return OrderedGraph(g1.n, list(g1.edges | g2.edges))


# ---------------------------------------------------------------------------
# Degree-bounded induced subgraphs (heuristic stand-in for the existential
# route; the returned bound is always verified, the size is best-effort).

def high_degree_filter(g: OrderedGraph, vertices: Sequence[int], eps: Fraction) -> list[int]:
    """Drop vertices whose degree inside the set exceeds 2*eps*|set|.

    When the set spans at most eps * C(|set|,2) edges, fewer than half the
    vertices are dropped and the survivors have degree at most 4*eps times
    the survivor count; with no edge bound it still returns the filtered set.
    """
    u0 = sorted(set(vertices))
    umask = _mask(u0)
    cutoff = 2 * eps * len(u0)
    return [v for v in u0 if (g.adj[v] & umask).bit_count() <= cutoff]


def _peel(adj: Sequence[int], n: int, delta: Fraction) -> list[int]:
    """Remove the max-degree vertex (lowest index on ties) until the induced
    max degree is at most delta * survivor count."""
    umask = (1 << n) - 1
    degs = [(adj[v] & umask).bit_count() for v in range(n)]
    size = n
    while size > 0:
        worst = -1
        worst_deg = -1
        mm = umask
        while mm:
            v = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            if degs[v] > worst_deg:
                worst = v
                worst_deg = degs[v]
        if worst_deg <= delta * size:
            break
        umask &= ~(1 << worst)
        size -= 1
        hit = adj[worst] & umask
        while hit:
            v = (hit & -hit).bit_length() - 1
            hit &= hit - 1
            degs[v] -= 1
    return sorted(_bits(umask))


def sparse_or_dense_subgraph(
    g: OrderedGraph, delta: Fraction
) -> tuple[tuple[int, ...], str]:
    """Greedy double peel: find an induced subgraph whose max degree is at
    most delta times its size, on the graph side or the complement side, and
    return the larger survivor (ties prefer the graph side).

    The degree bound on the declared side is re-verified before returning;
    the survivor size carries no guarantee and is reported as-is.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    n = g.n
    full = (1 << n) - 1
    co_adj = [(full ^ g.adj[v]) & ~(1 << v) for v in range(n)]
    u_graph = _peel(g.adj, n, delta)
    u_co = _peel(co_adj, n, delta)
    if len(u_graph) >= len(u_co):
        chosen, side, rows = u_graph, "graph", g.adj
    else:
        chosen, side, rows = u_co, "complement", co_adj
    umask = _mask(chosen)
    worst = max(((rows[v] & umask).bit_count() for v in chosen), default=0)
    assert worst <= delta * len(chosen), "peel exited without meeting its bound"
    return tuple(chosen), side


# ---------------------------------------------------------------------------
# Greedy certificate growers (fallbacks for the pipeline oracle).

def greedy_cobiclique(g: OrderedGraph) -> Biclique:
    """Deterministic balanced co-bi-clique grower.

    Vertices are inserted in ascending degree order (index breaks ties);
    each joins whichever side it has no edges into, preferring the smaller
    side, and is skipped when it conflicts with both. Returns the size-0
    sentinel on complete graphs.
    """
    n = g.n
    if n < 2:
        return Biclique(frozenset(), frozenset(), True)
    order = sorted(range(n), key=lambda v: (g.adj[v].bit_count(), v))
    amask = bmask = 0
    for v in order:
        row = g.adj[v]
        fits_a = not row & bmask
        fits_b = not row & amask
        if fits_a and (not fits_b or amask.bit_count() <= bmask.bit_count()):
            amask |= 1 << v
        elif fits_b:
            bmask |= 1 << v
    size = min(amask.bit_count(), bmask.bit_count())
    if size == 0:
        return Biclique(frozenset(), frozenset(), True)
    aside = sorted(_bits(amask))[:size]
    bside = sorted(_bits(bmask))[:size]
    cert = Biclique(frozenset(aside), frozenset(bside), True)
    assert is_biclique(g, cert)
    return cert


def greedy_biclique(g: OrderedGraph) -> Biclique:
    """Greedy balanced bi-clique via the same grower on the complement."""
    cert = greedy_cobiclique(complement(g))
    if cert.size == 0:
        return Biclique(frozenset(), frozenset(), False)
    out = Biclique(cert.side_a, cert.side_b, False)
    assert is_biclique(g, out)
    return out


# ---------------------------------------------------------------------------
# The union recursion.

def union_biclique(
    g1: OrderedGraph,
    g2: OrderedGraph,
    c: Fraction,
    oracle: Callable[[OrderedGraph], Biclique],
) -> Biclique:
    """Bi-clique in the union of two graphs, or co-bi-clique of the union.

    oracle(h) must return, for any induced subgraph h of g1 or g2 above the
    contract size, either a bi-clique of h (forwarded directly, since union
    edges contain each graph's edges) or a co-bi-clique of h of size at least
    max(1, floor(c * h.n)). The recursion runs k = 1 + ceil(log2(1/c))
    splitting rounds on g1, one co-bi-clique call on g2 over the surviving
    pieces, and closes with the pigeonhole pair, certifying a co-bi-clique of
    size floor(c^(k+1)/2 * n) in the union's complement. Every oracle return
    is validated; a bad or undersized certificate raises
    OracleContractViolation.
    """
    if g1.n != g2.n:
        raise ValueError("the two graphs must share a vertex set")
    c = Fraction(c)
    if not 0 < c < 1:
        raise ValueError("c must lie strictly between 0 and 1")
    n = g1.n
    k = 1 + math.ceil(math.log2(1 / c))
    c_final = c ** (k + 1) / 2
    union = graph_union(g1, g2)

    def call(host: OrderedGraph, part: Sequence[int]) -> Biclique:
        sub, idx = induced_subgraph(host, part)
        if sub.n < 2:
            raise OracleContractViolation(
                f"subfamily of size {sub.n} is below the contract threshold; "
                f"the host is too small for c={c}"
            )
        got = oracle(sub)
        if not got.in_complement:
            if got.size < 1 or not is_biclique(sub, got):
                raise OracleContractViolation("forwarded bi-clique is invalid")
        else:
            need = max(1, math.floor(c * sub.n))
            if got.size < need or not is_biclique(sub, got):
                raise OracleContractViolation(
                    f"co-bi-clique of size {got.size} < required {need} "
                    f"on {sub.n} vertices"
                )
        return Biclique(
            frozenset(idx[v] for v in got.side_a),
            frozenset(idx[v] for v in got.side_b),
            got.in_complement,
        )

    parts: list[list[int]] = [list(range(n))]
    for _ in range(k):
        next_parts: list[list[int]] = []
        for part in parts:
            got = call(g1, part)
            if not got.in_complement:
                assert is_biclique(union, got)
                return got
            next_parts.append(sorted(got.side_a))
            next_parts.append(sorted(got.side_b))
        parts = next_parts

    merged = sorted(v for part in parts for v in part)
    got = call(g2, merged)
    if not got.in_complement:
        assert is_biclique(union, got)
        return got
    aset, bset = got.side_a, got.side_b

    clean = Biclique(aset, bset, True)
    if is_biclique(union, clean):
        return _balanced(clean)

    best_j = max(
        range(len(parts)), key=lambda j: (len(aset & set(parts[j])), -j)
    )
    a_side = aset & set(parts[best_j])
    best_j2 = max(
        (j for j in range(len(parts)) if j != best_j),
        key=lambda j: (len(bset & set(parts[j])), -j),
    )
    b_side = bset & set(parts[best_j2])
    size = min(len(a_side), len(b_side))
    if size < 1:
        raise OracleContractViolation("pigeonhole produced an empty side")
    cert = Biclique(
        frozenset(sorted(a_side)[:size]),
        frozenset(sorted(b_side)[:size]),
        True,
    )
    assert is_biclique(union, cert), "pigeonhole pair has a union edge"
    assert cert.size >= math.floor(c_final * n)
    return cert


def _balanced(b: Biclique) -> Biclique:
    size = min(len(b.side_a), len(b.side_b))
    return Biclique(
        frozenset(sorted(b.side_a)[:size]),
        frozenset(sorted(b.side_b)[:size]),
        b.in_complement,
    )


# ---------------------------------------------------------------------------
# Grounded-family certificate engine and the full pipeline.

@dataclass(frozen=True)
class CurvesConfig:
    """Tunable constants for the curve pipeline.

    Defaults derive from the engines' own hypotheses: the peel bound is the
    smaller of the matching gate 1/(8*2^3) and the path gate 1/(24*4^2); the
    union contract constant trades recursion depth against certificate size.
    Absolute output sizes are heuristic-limited and are reported, never
    promised.
    """

    delta: Fraction = Fraction(1, 384)
    c_union: Fraction = Fraction(1, 4)
    exhaustive_cap: int = 14
    seed: int = 0
    retry_cap: int = 256


def grounded_candidates(
    g: OrderedGraph, cfg: CurvesConfig = CurvesConfig()
) -> tuple[Biclique, Biclique]:
    """Best (co-bi-clique, bi-clique) pair found for one grounded-family
    intersection graph, each certified or a size-0 sentinel.

    Candidate routes: exhaustive search on small hosts; the greedy growers;
    the degree peel followed by the matching engine on the sparse side, or
    the path engine on the complement of the dense side (whose co-bi-clique
    is a bi-clique of the host).
    """
    from .matchings import find_matching_or_cobiclique
    from .paths import find_path_or_cobiclique
    from .errors import RetryExhausted, SizeInfeasible

    co_candidates = [Biclique(frozenset(), frozenset(), True)]
    bi_candidates = [Biclique(frozenset(), frozenset(), False)]

    def remap(b: Biclique, idx, in_complement: bool) -> Biclique:
        return Biclique(
            frozenset(idx[v] for v in b.side_a),
            frozenset(idx[v] for v in b.side_b),
            in_complement,
        )

    if g.n <= cfg.exhaustive_cap:
        co_candidates.append(max_biclique_oracle(g, True, cfg.exhaustive_cap))
        bi_candidates.append(max_biclique_oracle(g, False, cfg.exhaustive_cap))
    else:
        co_candidates.append(greedy_cobiclique(g))
        bi_candidates.append(greedy_biclique(g))
        part, side = sparse_or_dense_subgraph(g, cfg.delta)
        sub, idx = induced_subgraph(g, part)
        if side == "graph" and sub.n >= 2:
            try:
                got = find_matching_or_cobiclique(
                    sub, m1_pattern(), cfg.seed, cfg.retry_cap
                )
            except (RetryExhausted, SizeInfeasible):
                got = None
            if isinstance(got, CoBicliqueFound):
                co_candidates.append(remap(got.biclique, idx, True))
        elif sub.n >= 2:
            out = find_path_or_cobiclique(complement(sub), 4)
            if isinstance(out, CoBicliqueFound):
                bi_candidates.append(remap(out.biclique, idx, False))

    best_co = max(co_candidates, key=lambda b: b.size)
    best_bi = max(bi_candidates, key=lambda b: b.size)
    return best_co, best_bi


def grounded_certificate(
    g: OrderedGraph, cfg: CurvesConfig = CurvesConfig()
) -> Biclique:
    """Single best certificate for a grounded-family graph: the co-bi-clique
    when one exists, otherwise a bi-clique (complete hosts have nothing else)."""
    best_co, best_bi = grounded_candidates(g, cfg)
    if best_co.size >= 1:
        return best_co
    return best_bi


@dataclass(frozen=True)
class CurvesResult:
    """Pipeline outcome: a certificate relative to the full intersection
    graph plus a trace of the branch that produced it."""

    biclique: Biclique
    branch: str
    notes: dict = field(compare=False, default_factory=dict)


def _pick_free_x(fam_curves: Sequence[PolylineCurve], lo: Fraction, hi: Fraction) -> Fraction:
    """A vertical-line abscissa strictly inside (lo, hi) avoiding every curve
    vertex, so no endpoint ever lands exactly on the cut."""
    bad = sorted(
        x for c in fam_curves for x, _ in c.points if lo < x < hi
    )
    ceiling = bad[0] if bad else hi
    return (lo + ceiling) / 2


def curves_ramsey(
    fam: CurveFamily, cfg: CurvesConfig = CurvesConfig()
) -> CurvesResult:
    """Bi-clique of the intersection graph or co-bi-clique of its complement.

    A vertical line is placed after the first third of right endpoints. If a
    third of the curves cross it, the crossing subfamily is split into two
    grounded halves and the union recursion runs with the grounded
    certificate engine as its oracle; otherwise the line separates two linear
    groups outright. The result is indexed against the right-endpoint order
    of the input family and re-verified against its intersection graph.
    """
    ordered = right_ordered_family(fam.curves)
    curves_list = ordered.curves
    n = len(curves_list)
    if n < 3:
        raise ValueError("the pipeline needs at least three curves")
    m = n // 3
    lo = curves_list[m - 1].x_last
    hi = curves_list[m].x_last
    x0 = _pick_free_x(curves_list, lo, hi)

    crossing = [
        i for i, c in enumerate(curves_list) if c.x_first < x0 < c.x_last
    ]
    if len(crossing) >= m:
        sub = CurveFamily(tuple(curves_list[i] for i in crossing), NO_ORDER)
        left, right, order_map = split_at_line(sub, x0)
        g1 = intersection_graph(left)
        g2 = intersection_graph(right)

        def oracle(h: OrderedGraph) -> Biclique:
            # Prefer the co-bi-clique while it meets the union contract;
            # forwarding a bi-clique ends the recursion early but is always
            # acceptable to it.
            need = max(1, math.floor(cfg.c_union * h.n))
            best_co, best_bi = grounded_candidates(h, cfg)
            if best_co.size >= need:
                return best_co
            if best_bi.size >= 1:
                return best_bi
            return best_co

        cert = union_biclique(g1, g2, cfg.c_union, oracle)
        back = [crossing[order_map[p]] for p in range(len(crossing))]
        mapped = Biclique(
            frozenset(back[v] for v in cert.side_a),
            frozenset(back[v] for v in cert.side_b),
            cert.in_complement,
        )
        return CurvesResult(
            mapped,
            "split-union",
            {"line": x0, "crossing": len(crossing), "halves_size": g1.n},
        )

    left_group = list(range(m))
    right_group = [
        i for i in range(m, n) if i not in crossing
    ]
    size = min(len(left_group), len(right_group))
    cert = Biclique(
        frozenset(left_group[:size]),
        frozenset(sorted(right_group)[:size]),
        in_complement=True,
    )
    return CurvesResult(
        cert, "separated", {"line": x0, "crossing": len(crossing)}
    )
