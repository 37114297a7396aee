"""Holes, forcing 4-tuples, the exhaustive claim, witnesses, extraction."""

from fractions import Fraction as F
from itertools import permutations, product

import pytest

from ordram.core import Biclique, OrderedGraph, complement, is_biclique, max_biclique_oracle, monotone_path
from ordram.curves import CurveFamily, PolylineCurve, intersection_graph_of
from ordram.errors import OrderViolation, WitnessInvalid
from ordram.generators import gen_crossing_curves
from ordram.magical import (
    OrderType,
    ThresholdResult,
    TripleOrderedGraph,
    double_magical_witness,
    extract_biclique_dense,
    is_forcing,
    is_ihole,
    is_magical,
    order_type,
    threshold_pipeline,
    type_is_forcing,
    verify_forcing_claim,
)


# --- middle-vertex implication ---------------------------------------------------

def test_edgeless_and_complete_are_magical():
    assert is_magical(OrderedGraph(5), (4, 3, 2, 1, 0)) is None
    k5 = OrderedGraph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert is_magical(k5, (0, 1, 2, 3, 4)) is None


def test_path_with_identity_ranks_violates():
    assert is_magical(monotone_path(3), (0, 1, 2)) == (0, 1, 2)


def test_violation_matches_brute_force():
    from ordram.generators import gen_random_ordered
    from ordram.rng import SplitMix64

    for seed in range(60):
        rng = SplitMix64(seed)
        n = 5 + rng.below(3)
        g = gen_random_ordered(n, 0.45, seed)
        perm = tuple(rng.shuffle(list(range(n))))
        brute = None
        for a in range(n):
            if brute:
                break
            for b in range(a + 1, n):
                if brute:
                    break
                for c in range(b + 1, n):
                    if (
                        g.has_edge(a, b)
                        and g.has_edge(b, c)
                        and not g.has_edge(a, c)
                        and not (perm[b] < perm[a] and perm[b] < perm[c])
                    ):
                        brute = (a, b, c)
                        break
        assert is_magical(g, perm) == brute


# --- holes -------------------------------------------------------------------------

def test_identity_ranks_have_no_holes():
    for a in range(3):
        for b in range(a + 1, 4):
            for c in range(b + 1, 5):
                assert not is_ihole(a, b, c, (0, 1, 2, 3, 4))


def test_middle_minimum_is_hole():
    assert is_ihole(0, 1, 2, (1, 0, 2))
    assert is_ihole(0, 1, 2, (2, 0, 1))


def test_exactly_two_rank_patterns_are_holes():
    holes = [p for p in permutations(range(3)) if is_ihole(0, 1, 2, p)]
    assert len(holes) == 2  # exactly the patterns placing the middle lowest


def test_hole_requires_index_order():
    with pytest.raises(OrderViolation):
        is_ihole(2, 1, 0, (0, 1, 2))


# --- forcing and order types ----------------------------------------------------------

def realize_type(signs):
    """Build rank arrays on vertices (a,b,b',c) = (0,1,2,3) realizing the
    four signs; the definitional and type routes must then agree."""
    s1, s2, s3, s4 = signs
    # ranks under order two for (a=0, b=1, c=3); vertex 2 gets the leftover
    base2 = {"+": {0: 0, 1: 1, 3: 2}, "-": None}
    perm2 = [0] * 4
    perm3 = [0] * 4
    # order two: a vs b via s1, b vs c via s2
    ranks = {(True, True): (0, 1, 2), (True, False): (1, 2, 0),
             (False, True): (1, 0, 2), (False, False): (2, 1, 0)}
    ra, rb, rc = ranks[(s1 == "+", s2 == "+")]
    perm2[0], perm2[1], perm2[3] = ra, rb, rc
    perm2[2] = 3
    ra, rb2, rc = ranks[(s3 == "+", s4 == "+")]
    perm3[0], perm3[2], perm3[3] = ra, rb2, rc
    perm3[1] = 3
    return tuple(perm2), tuple(perm3)


def test_order_type_realization_and_agreement():
    for signs in product("+-", repeat=4):
        perm2, perm3 = realize_type(signs)
        t = order_type(0, 1, 2, 3, perm2, perm3)
        assert t.signs == signs
        assert is_forcing(0, 1, 2, 3, perm2, perm3) == type_is_forcing(t)


def test_sixteen_types_and_seven_nonforcing():
    types = OrderType.all_types()
    assert len(types) == 16
    nonforcing = [t for t in types if not type_is_forcing(t)]
    assert len(nonforcing) == 7
    assert type_is_forcing(OrderType(("+", "+", "+", "+")))
    assert not type_is_forcing(OrderType(("-", "+", "+", "+")))


def test_forcing_requires_position_constraints():
    with pytest.raises(OrderViolation):
        is_forcing(0, 3, 2, 1, (0, 1, 2, 3), (0, 1, 2, 3))


def test_identity_orderings_force_immediately():
    ident = (0, 1, 2, 3, 4)
    assert is_forcing(0, 1, 1, 2, ident, ident)


# --- the exhaustive claim ---------------------------------------------------------------

def test_forcing_claim_report():
    report = verify_forcing_claim()
    assert report.orderings_checked == 14400
    assert report.all_contain_forcing
    assert report.first_counterexample is None
    assert report.tuples_examined >= 14400


# --- triple-ordered graphs ----------------------------------------------------------------

def test_witness_validation_rejects_tampering():
    n = 4
    base = OrderedGraph(n, [(0, 1)])
    good1 = OrderedGraph(n, [(0, 1), (2, 3)])
    good2 = OrderedGraph(n, [(0, 1)])
    ident = tuple(range(n))
    with pytest.raises(WitnessInvalid):
        # intersection of witness edges is {(0,1)} but base says edgeless
        TripleOrderedGraph(OrderedGraph(n), ident, ident, (good1, good2))
    # a witness that is not magical: path 0-1-2 with identity ranks
    badw = monotone_path(4)
    with pytest.raises(WitnessInvalid):
        TripleOrderedGraph(
            OrderedGraph(4, list(badw.edges)), ident, ident, (badw, badw)
        )


def test_disjoint_crossing_curves_give_complete_base():
    curves = [
        PolylineCurve(((F(-2 - i), F(i)), (F(0), F(i)), (F(2 + i), F(i))))
        for i in range(6)
    ]
    fam = CurveFamily(tuple(curves), "none")
    tg = double_magical_witness(fam, F(0))
    assert tg.base.edge_count() == 6 * 5 // 2


def test_pairwise_intersecting_curves_give_edgeless_base():
    curves = [
        PolylineCurve(((F(-2 - i), F(i)), (F(0), F(i)), (F(1), F(-1)), (F(2 + i), F(i))))
        for i in range(5)
    ]
    fam = CurveFamily(tuple(curves), "none")
    tg = double_magical_witness(fam, F(0))
    assert tg.base.edge_count() == 0


def test_seeded_witnesses_never_invalid():
    for seed in range(60):
        fam = gen_crossing_curves(12, 2, F(0), seed)
        tg = double_magical_witness(fam, F(0))
        assert tg.witness is not None


# --- extraction ------------------------------------------------------------------------------

def test_complete_graph_extraction():
    n = 11
    kn = OrderedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    tg = TripleOrderedGraph(kn, tuple(range(n)), tuple(range(n)))
    got = extract_biclique_dense(tg)
    assert got.size >= n // 2
    assert is_biclique(kn, got)


def test_edgeless_extraction_sentinel():
    tg = TripleOrderedGraph(OrderedGraph(6), tuple(range(6)), tuple(range(6)))
    assert extract_biclique_dense(tg).size == 0


def test_extraction_within_oracle_bound():
    for seed in range(12):
        fam = gen_crossing_curves(14, 2, F(0), seed, amplitude=1)
        tg = double_magical_witness(fam, F(0))
        got = extract_biclique_dense(tg)
        cap = max_biclique_oracle(tg.base, False, 14)
        assert got.size <= cap.size
        if got.size:
            assert is_biclique(tg.base, got)


# --- threshold pipeline -----------------------------------------------------------------------

def test_threshold_case2_separated_group():
    # floor(eps*n/2) short curves strictly left of everything else.
    eps = F(1, 4)
    n = 16
    m = int(eps * n / 2)
    shorts = [PolylineCurve(((F(0), F(i)), (F(1 + F(i, 10)), F(i)))) for i in range(m)]
    longs = [
        PolylineCurve(((F(10), F(i)), (F(20 + i), F(i)))) for i in range(n - m)
    ]
    fam = CurveFamily(tuple(shorts + longs), "none")
    res = threshold_pipeline(fam, eps)
    assert res.case == 2
    assert res.biclique.size == m


def test_threshold_case1_disjoint_crossers():
    curves = [
        PolylineCurve(((F(-2 - i), F(i)), (F(0), F(i)), (F(2 + i), F(i))))
        for i in range(20)
    ]
    fam = CurveFamily(tuple(curves), "none")
    res = threshold_pipeline(fam, F(1, 5))
    assert res.case == 1
    assert res.biclique.size >= (res.notes["crossing"] - 1) // 2
    assert res.density == 0


def test_threshold_seeded_sparse_families():
    for seed in range(3):
        fam = gen_crossing_curves(60, 2, F(0), seed, amplitude=6)
        res = threshold_pipeline(fam, F(1, 20))
        assert isinstance(res, ThresholdResult)
        assert res.biclique.size >= 1
        g = intersection_graph_of(
            sorted(fam.curves, key=lambda c: c.x_last)
        )
        assert is_biclique(g, res.biclique)
