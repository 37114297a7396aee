"""Monotone target-path reachability and the induced-path / co-bi-clique
dichotomy.

reach_or_cobiclique implements the interval-halving argument: the target set
is divided into consecutive blocks of size 3m (m a power of two), the source
set is halved k = log2(m) times while keeping a certified reached block, and
every failure to advance yields m source-side vertices versus m block
vertices spanning no edges. find_path_or_cobiclique drives that procedure
once per path vertex, recovering each next vertex from a minimum-vertex
increasing path.

Integer conventions (fixed so thresholds are testable): block sizes use
floor with the last block absorbing the remainder; m is the largest power of
two at most floor(n / (6 log2 n)) and is rejected when it does not exceed
n / (12 log2 n); all emitted size guarantees are computed with floors.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .core import OrderedGraph, _bits, _mask, interval_partition, max_degree, monotone_path
from .core import Biclique, Embedding, is_biclique
from .errors import NoValidM
from .outcomes import (
    CoBicliqueFound,
    FarVertex,
    InducedPatternFound,
    PathOutcome,
    PreconditionViolation,
    ReachSet,
    cobiclique_guarantee,
    reach_guarantee,
)


def monotone_reach(
    g: OrderedGraph, sources: Iterable[int], targets: Iterable[int]
) -> ReachSet:
    """Single increasing sweep computing the reachable part of the target set.

    A target vertex t is reached iff some source below t is adjacent to it,
    or some already-reached target below t is adjacent to it. O(n^2) via
    bitmask rows.
    """
    src = sorted(set(sources))
    tgt = sorted(set(targets))
    for v in src + tgt:
        g._check(v)
    smask = _mask(src)
    reached = 0
    parents: dict[int, int] = {}
    for t in tgt:
        below = (1 << t) - 1
        avail = g.adj[t] & (smask | reached) & below
        if avail:
            reached |= 1 << t
            parents[t] = (avail & -avail).bit_length() - 1
    return ReachSet(
        frozenset(src), frozenset(tgt), frozenset(_bits(reached)), parents
    )


def _blocks_of(tsorted: Sequence[int], size: int) -> list[list[int]]:
    count = len(tsorted) // size
    out = [list(tsorted[i * size : (i + 1) * size]) for i in range(count - 1)]
    out.append(list(tsorted[(count - 1) * size :]))
    return out


def _pick_m(n_param: int) -> int:
    """Largest power of two <= floor(n/(6 log2 n)); NoValidM if the window
    (n/(12 log2 n), n/(6 log2 n)] closes."""
    if n_param < 2:
        raise NoValidM(f"parameter {n_param} too small for the reach dichotomy")
    log = math.log2(n_param)
    cap = math.floor(n_param / (6 * log))
    if cap < 1:
        raise NoValidM(
            f"no power of two in the window for n={n_param} "
            f"(floor(n/(6 log2 n)) = {cap})"
        )
    m = 1 << (cap.bit_length() - 1)
    assert m > n_param / (12 * log)
    return m


def reach_or_cobiclique(
    g: OrderedGraph, sources: Iterable[int], targets: Iterable[int], n_param: int
) -> PathOutcome:
    """Either a source vertex reaching at least ceil(n_param/12) targets, or a
    co-bi-clique of size at least ceil(n_param / (12 log2 n_param)).

    Requires every source below every target, |sources| >= n/(6 log2 n) and
    |targets| >= n for n = n_param. The initial m-element source subset is
    the top slice of the source set (the vertices nearest the targets);
    halving ties prefer the lower-index half.
    """
    S = sorted(set(sources))
    T = sorted(set(targets))
    for v in S + T:
        g._check(v)
    if not S or not T or S[-1] >= T[0]:
        return PreconditionViolation(
            "source-target-order",
            {
                "max_source": S[-1] if S else None,
                "min_target": T[0] if T else None,
            },
        )
    m = _pick_m(n_param)
    log = math.log2(n_param)
    if len(S) < n_param / (6 * log):
        return PreconditionViolation(
            "source-too-small",
            {"size": len(S), "required": n_param / (6 * log), "n_param": n_param},
        )
    if len(T) < n_param:
        return PreconditionViolation(
            "target-too-small", {"size": len(T), "required": n_param}
        )

    k_exp = m.bit_length() - 1
    blocks = _blocks_of(T, 3 * m)
    if len(blocks) <= k_exp:
        return PreconditionViolation(
            "target-too-small",
            {"size": len(T), "required": 3 * m * (k_exp + 1), "note": "blocks"},
        )
    cobound = cobiclique_guarantee(n_param)

    tmask = _mask(T)
    s_cur = S[-m:]
    anchor = list(s_cur)  # certified set facing the next block
    for step in range(k_exp):
        blk_mask = _mask(blocks[step])
        nmask = 0
        for x in anchor:
            nmask |= g.adj[x]
        nmask &= blk_mask
        if nmask.bit_count() < 2 * m:
            aside = frozenset(anchor[:m])
            bside = frozenset(sorted(_bits(blk_mask & ~nmask))[:m])
            cert = Biclique(aside, bside, in_complement=True)
            assert is_biclique(g, cert)
            return CoBicliqueFound(cert, cobound, f"interval-advance-{step}")
        half = len(s_cur) // 2
        lower, upper = s_cur[:half], s_cur[half:]
        lo_hits = _mask(monotone_reach(g, lower, T).reached) & blk_mask
        if lo_hits.bit_count() >= m:
            s_cur = lower
        else:
            s_cur = upper
        hits = _mask(monotone_reach(g, s_cur, T).reached) & blk_mask
        assert hits.bit_count() >= m, "both halves lost the reached block"
        anchor = sorted(_bits(hits))

    v = s_cur[0]
    full = monotone_reach(g, [v], T)
    rmask = _mask(full.reached)
    if k_exp > 0:
        anchor = sorted(_bits(rmask & _mask(blocks[k_exp - 1])))
        assert len(anchor) >= m
    else:
        anchor = [v]
    total = 0
    for bi in range(max(k_exp - 1, 0), len(blocks)):
        blk_mask = _mask(blocks[bi])
        cnt = (rmask & blk_mask).bit_count()
        if cnt < m:
            aside = frozenset(anchor[:m])
            bside = frozenset(sorted(_bits(blk_mask & ~rmask))[:m])
            cert = Biclique(aside, bside, in_complement=True)
            assert is_biclique(g, cert)
            return CoBicliqueFound(cert, cobound, f"reach-sweep-{bi}")
        total += cnt
    bound = reach_guarantee(n_param)
    assert total >= bound and len(full.reached) >= bound
    return FarVertex(v, full, bound)


def minimum_n(k: int) -> int:
    """Smallest host size for which find_path_or_cobiclique's internal
    parameters (floor(n/k) and floor(n/2k)) admit a valid power-of-two m.

    The window is nonempty exactly when floor(p / (6 log2 p)) >= 1, which
    first holds at p = 30.
    """
    return 60 * k


def _min_vertex_path(
    g: OrderedGraph, src: int, dst: int, allowed_mask: int
) -> list[int]:
    """Increasing path src < u1 < ... < dst with interior vertices inside
    allowed_mask, minimizing the vertex count (BFS over the increasing-edge
    DAG)."""
    if g.adj[src] >> dst & 1:
        return [src, dst]
    parent = {src: -1}
    frontier = [src]
    while frontier and dst not in parent:
        nxt = []
        for u in frontier:
            ahead = g.adj[u] & allowed_mask & ~((1 << (u + 1)) - 1)
            for v in _bits(ahead):
                if v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    if dst not in parent:
        raise AssertionError("destination certified reachable but BFS missed it")
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def find_path_or_cobiclique(g: OrderedGraph, k: int) -> PathOutcome:
    """Either a verified induced monotone path on k vertices, or a
    co-bi-clique of size at least ceil(n / (24 k^2 log2 n)).

    Gate: the host must satisfy max degree < n / (24 k^2) and n >=
    minimum_n(k); otherwise the violated inequality is reported. The search
    keeps x_1 < ... < x_l with the reach of x_l into the next interval
    certified at every step; each advance calls reach_or_cobiclique with
    parameter floor(n / 2k) and recovers the next path vertex from a
    minimum-vertex increasing path.
    """
    if k < 2:
        raise ValueError("paths need at least two vertices")
    n = g.n
    cden = 24 * k * k
    delta = max_degree(g)
    if delta * cden >= n:
        return PreconditionViolation(
            "max-degree", {"delta": delta, "num": 1, "den": cden, "n": n}
        )
    if n < minimum_n(k):
        return PreconditionViolation(
            "n-too-small", {"n": n, "n_min": minimum_n(k), "k": k}
        )
    bound = math.ceil(n / (cden * math.log2(n)))
    blocks = interval_partition(n, k)
    block_masks = [_mask(b) for b in blocks]
    full_mask = (1 << n) - 1

    def wrap_cobiclique(out: CoBicliqueFound, stage: str) -> CoBicliqueFound:
        assert out.biclique.size >= bound
        return CoBicliqueFound(out.biclique, bound, stage)

    def wrap_violation(out: PreconditionViolation, l: int, xs) -> PreconditionViolation:
        details = dict(out.details)
        details.update({"stage": f"path-step-{l}", "partial_path": list(xs)})
        return PreconditionViolation(out.reason, details)

    out = reach_or_cobiclique(g, list(blocks[0]), list(blocks[1]), n // k)
    if isinstance(out, CoBicliqueFound):
        return wrap_cobiclique(out, "path-step-1")
    if isinstance(out, PreconditionViolation):
        return wrap_violation(out, 1, [])
    xs = [out.vertex]
    avail_mask = full_mask  # vertices clear of earlier path neighborhoods
    s_cur = sorted(
        _bits(_mask(monotone_reach(g, [xs[0]], _bits(avail_mask)).reached) & block_masks[1])
    )

    for l in range(2, k + 1):
        if not s_cur:
            return PreconditionViolation(
                "reach-empty", {"stage": f"path-step-{l}", "partial_path": list(xs)}
            )
        if l < k:
            next_mask = avail_mask & ~g.adj[xs[-1]]
            t_set = list(_bits(next_mask & block_masks[l]))
            out = reach_or_cobiclique(g, s_cur, t_set, n // (2 * k))
            if isinstance(out, CoBicliqueFound):
                return wrap_cobiclique(out, f"path-step-{l}")
            if isinstance(out, PreconditionViolation):
                return wrap_violation(out, l, xs)
            w = out.vertex
            path = _min_vertex_path(g, xs[-1], w, avail_mask)
            xs.append(path[1])
            s_cur = sorted(
                _bits(
                    _mask(monotone_reach(g, [xs[-1]], _bits(next_mask)).reached)
                    & block_masks[l]
                )
            )
            avail_mask = next_mask
        else:
            w = s_cur[0]
            path = _min_vertex_path(g, xs[-1], w, avail_mask)
            xs.append(path[1])

    emb = Embedding(tuple(xs))
    found = InducedPatternFound(emb, monotone_path(k))
    assert found.verify(g), "constructed path failed verification"
    return found
