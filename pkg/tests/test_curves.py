"""Exact geometry, grounded orderings, splitting, peeling, union recursion."""

from fractions import Fraction as F

import pytest

from ordram.core import Biclique, OrderedGraph, complement, is_biclique, max_degree
from ordram.curves import (
    CurveFamily,
    CurvesConfig,
    PolylineCurve,
    curves_intersect,
    curves_ramsey,
    greedy_cobiclique,
    grounded_family,
    grounded_ordering_properties,
    high_degree_filter,
    intersection_graph,
    intersection_graph_of,
    right_ordered_family,
    segments_intersect,
    sparse_or_dense_subgraph,
    split_at_line,
    union_biclique,
)
from ordram.errors import CurveMissesLine, DuplicateKey, OracleContractViolation
from ordram.generators import (
    gen_crossing_curves,
    gen_grounded_curves,
    gen_two_clique,
)
from ordram.rng import SplitMix64


def seg(x0, y0, x1, y1):
    return PolylineCurve(((F(x0), F(y0)), (F(x1), F(y1))))


def naive_intersect(c1, c2):
    """Oracle: all segment pairs, no pruning of any kind."""
    return any(
        segments_intersect(a, b, c, d)
        for a, b in c1.segments()
        for c, d in c2.segments()
    )


# --- predicates ---------------------------------------------------------------

def test_disjoint_horizontals():
    assert not curves_intersect(seg(0, 0, 5, 0), seg(1, 2, 4, 2))


def test_x_crossing():
    assert curves_intersect(seg(0, 0, 2, 2), seg(0, 2, 2, 0))


def test_shared_endpoint_counts():
    assert curves_intersect(seg(0, 0, 2, 2), seg(2, 2, 4, 0))


def test_collinear_overlap_counts():
    assert curves_intersect(seg(0, 0, 3, 0), seg(2, 0, 5, 0))


def test_curves_intersect_matches_naive_scan():
    for seed in range(50):
        fam = gen_grounded_curves(10, 4, seed, amplitude=3)
        for i in range(10):
            for j in range(i + 1, 10):
                assert curves_intersect(fam.curves[i], fam.curves[j]) == naive_intersect(
                    fam.curves[i], fam.curves[j]
                )


# --- intersection graphs --------------------------------------------------------

def test_disjoint_stacked_family_is_edgeless():
    curves = [seg(0, i, 6 + F(i, 10), i) for i in range(6)]
    g = intersection_graph(grounded_family(curves))
    assert g.edge_count() == 0


def test_common_point_family_is_complete():
    curves = [
        PolylineCurve(((F(0), F(i)), (F(1), F(0)), (F(2 + i), F(i))))
        for i in range(5)
    ]
    g = intersection_graph(grounded_family(curves))
    assert g.edge_count() == 5 * 4 // 2


def test_duplicate_order_keys_rejected():
    with pytest.raises(DuplicateKey):
        grounded_family([seg(0, 1, 2, 0), seg(0, 1, 3, 5)])
    with pytest.raises(DuplicateKey):
        right_ordered_family([seg(0, 0, 2, 0), seg(1, 5, 2, 6)])


# --- grounded ordering properties ----------------------------------------------

def test_disjoint_curves_pass_grounded_checks():
    curves = [seg(0, i, 5, i) for i in range(4)]
    report = grounded_ordering_properties(grounded_family(curves))
    assert report.ok


def test_grounded_checks_on_seeded_families():
    for seed in range(150):
        fam = gen_grounded_curves(10, 4, seed, amplitude=3)
        report = grounded_ordering_properties(fam)
        assert report.m1_witness is None, (seed, report.m1_witness)
        assert report.p4_witness is None, (seed, report.p4_witness)


def test_figure_configuration_has_no_complement_path():
    # Four grounded curves: the outer pair intersects, one short curve sits
    # inside the enclosed pocket, one high curve dips down to cross the
    # outer-lowest curve far right.
    a1 = PolylineCurve(((F(0), F(-1)), (F(3, 2), F(-3, 2)), (F(2), F(2)), (F(5), F(5, 2))))
    a2 = PolylineCurve(((F(0), F(0)), (F(1, 2), F(-1, 2)), (F(1), F(0))))
    a3 = PolylineCurve(((F(0), F(5, 2)), (F(1), F(1, 2)), (F(3), F(1, 2)), (F(7, 2), F(3))))
    a4 = PolylineCurve(((F(0), F(7, 2)), (F(2), F(3)), (F(7, 2), F(4)), (F(9, 2), F(3, 2))))
    fam = grounded_family([a1, a2, a3, a4])
    g = intersection_graph(fam)
    # vertex order is intercept order: a1 < a2 < a3 < a4
    assert g.edges == {(0, 2), (0, 3)}
    report = grounded_ordering_properties(fam)
    assert report.ok


# --- splitting -------------------------------------------------------------------

def test_split_single_segment_interpolates():
    fam = CurveFamily((seg(-2, 0, 2, 4),), "none")
    left, right, order = split_at_line(fam, F(0))
    assert order == (0,)
    assert left.curves[0].points[0] == (F(0), F(2))
    assert right.curves[0].points[0] == (F(0), F(2))
    assert left.curves[0].points[-1] == (F(2), F(0))


def test_split_at_existing_vertex():
    c = PolylineCurve(((F(-1), F(0)), (F(0), F(5)), (F(1), F(0))))
    left, right, _ = split_at_line(CurveFamily((c,), "none"), F(0))
    assert left.curves[0].points == ((F(0), F(5)), (F(1), F(0)))
    assert right.curves[0].points == ((F(0), F(5)), (F(1), F(0)))


def test_split_rejects_miss_and_touch():
    with pytest.raises(CurveMissesLine):
        split_at_line(CurveFamily((seg(1, 0, 2, 1),), "none"), F(0))
    with pytest.raises(CurveMissesLine):
        split_at_line(CurveFamily((seg(0, 0, 2, 1),), "none"), F(0))


def test_split_union_identity_seeded():
    for seed in range(40):
        fam = gen_crossing_curves(8, 2, F(0), seed)
        left, right, order = split_at_line(fam, F(0))
        g1 = intersection_graph_of(left.curves)
        g2 = intersection_graph_of(right.curves)
        whole = intersection_graph_of([fam.curves[i] for i in order])
        assert (g1.edges | g2.edges) == whole.edges


# --- degree-bounded subgraphs -----------------------------------------------------

def test_peel_on_edgeless_and_complete():
    g = OrderedGraph(12)
    u, side = sparse_or_dense_subgraph(g, F(1, 3))
    assert side == "graph" and len(u) == 12
    kn = OrderedGraph(12, [(i, j) for i in range(12) for j in range(i + 1, 12)])
    u, side = sparse_or_dense_subgraph(kn, F(1, 3))
    assert side == "complement" and len(u) == 12


def test_peel_finds_clique_block_in_two_clique_instance():
    g = gen_two_clique(512, 0.01, 3)
    u, side = sparse_or_dense_subgraph(g, F(3, 10))
    assert side == "complement"
    assert len(u) >= 250
    co = complement(g)
    umask = 0
    for v in u:
        umask |= 1 << v
    worst = max((co.adj[v] & umask).bit_count() for v in u)
    assert worst <= F(3, 10) * len(u)


def test_high_degree_filter_halves():
    for seed in range(10):
        rng = SplitMix64(seed)
        g = OrderedGraph(
            40,
            [
                (i, j)
                for i in range(40)
                for j in range(i + 1, 40)
                if rng.chance(0.05)
            ],
        )
        eps = F(1, 10)
        edges = g.edge_count()
        if edges <= eps * (40 * 39 // 2):
            kept = high_degree_filter(g, range(40), eps)
            assert len(kept) > 20
            kmask = 0
            for v in kept:
                kmask |= 1 << v
            assert all(
                (g.adj[v] & kmask).bit_count() <= 4 * eps * len(kept) for v in kept
            )


# --- union recursion ---------------------------------------------------------------

def half_split_oracle(h):
    mid = h.n // 2
    return Biclique(frozenset(range(mid)), frozenset(range(mid, 2 * mid)), True)


def test_union_of_edgeless_pair():
    g = OrderedGraph(16)
    got = union_biclique(g, g, F(1, 2), half_split_oracle)
    assert got.in_complement and got.size == 8
    assert is_biclique(g, got)


def test_union_forwards_biclique():
    n = 16
    kn = OrderedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    empty = OrderedGraph(n)

    def oracle(h):
        mid = h.n // 2
        if h.edge_count() == h.n * (h.n - 1) // 2:
            return Biclique(frozenset(range(mid)), frozenset(range(mid, 2 * mid)), False)
        return half_split_oracle(h)

    got = union_biclique(kn, empty, F(1, 2), oracle)
    assert not got.in_complement
    assert is_biclique(kn, got)


def test_union_rejects_bogus_oracle():
    g = OrderedGraph(16, [(0, 1)])

    def liar(h):
        return Biclique(frozenset({0}), frozenset({1}), True)  # 0-1 is an edge

    with pytest.raises(OracleContractViolation):
        union_biclique(g, g, F(1, 2), liar)


def test_union_on_curve_halves():
    for seed in (2, 5):
        fam = gen_crossing_curves(64, 2, F(0), seed, amplitude=1)
        left, right, _ = split_at_line(fam, F(0))
        g1 = intersection_graph_of(left.curves)
        g2 = intersection_graph_of(right.curves)
        union = OrderedGraph(64, list(g1.edges | g2.edges))
        cfg = CurvesConfig()

        def oracle(h):
            from ordram.curves import grounded_candidates
            import math

            need = max(1, math.floor(cfg.c_union * h.n))
            co, bi = grounded_candidates(h, cfg)
            if co.size >= need:
                return co
            return bi if bi.size else co

        got = union_biclique(g1, g2, cfg.c_union, oracle)
        assert is_biclique(union, got)


# --- greedy grower ------------------------------------------------------------------

def test_greedy_cobiclique_on_sparse_graph():
    g = gen_two_clique(40, 0.0, 0)
    got = greedy_cobiclique(g)
    assert got.size == 20
    assert is_biclique(g, got)
    kn = OrderedGraph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    assert greedy_cobiclique(kn).size == 0


# --- end-to-end ----------------------------------------------------------------------

def test_ramsey_separated_branch():
    curves = [seg(3 * i, 0, 3 * i + 1, 1) for i in range(9)]
    res = curves_ramsey(CurveFamily(tuple(curves), "none"))
    assert res.branch == "separated"
    assert res.biclique.in_complement and res.biclique.size == 3
    g = intersection_graph(right_ordered_family(curves))
    assert is_biclique(g, res.biclique)


def test_ramsey_complete_crossing_family_forwards_biclique():
    # Curves pairwise intersecting through one shared point right of the line.
    curves = [
        PolylineCurve(((F(-2 - i, 2), F(i)), (F(0), F(i)), (F(1), F(0)), (F(4 + i, 2), F(i))))
        for i in range(12)
    ]
    fam = CurveFamily(tuple(curves), "none")
    res = curves_ramsey(fam)
    assert not res.biclique.in_complement
    g = intersection_graph(right_ordered_family(curves))
    assert g.edge_count() == 12 * 11 // 2
    assert is_biclique(g, res.biclique)


def test_ramsey_seeded_families_certify():
    sizes = []
    for seed in range(8):
        fam = gen_crossing_curves(60, 2, F(0), seed, amplitude=2)
        res = curves_ramsey(fam)
        g = intersection_graph(right_ordered_family(fam.curves))
        assert is_biclique(g, res.biclique)
        sizes.append((res.branch, res.biclique.size))
    assert any(b == "split-union" for b, _ in sizes)
