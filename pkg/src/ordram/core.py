"""Ordered graphs on integer-ordered vertices, induced-pattern search, and
bi-clique certificates.

Vertices are 0..n-1 and the vertex order is the integer order on indices:
ingestion relabels everything up front so the order never travels separately
from the graph. Graphs are immutable after construction and all operations
here are pure functions, so everything is safe to share between threads.

Terminology note: a monotone path P_k has k vertices and k-1 edges. "Length"
counts vertices throughout this package, not edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import IndexOutOfRange, InstanceTooLarge


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _low_bits(mask: int, k: int) -> int:
    """The k lowest set bits of mask."""
    out = 0
    for _ in range(k):
        low = mask & -mask
        out |= low
        mask ^= low
    return out


class OrderedGraph:
    """Immutable loop-free graph whose total vertex order is the index order.

    Edges are stored canonically as pairs (i, j) with i < j, plus one
    adjacency bitmask per vertex for O(1) membership queries.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"edge ({i},{j}) outside 0..{n - 1}")
            canon.add((i, j) if i < j else (j, i))
        # Adjacency rows are built through bytearrays: one byte op per edge
        # end instead of a big-int shift, which matters on dense hosts.
        nbytes = (n + 7) >> 3
        rows = [bytearray(nbytes) for _ in range(n)]
        for i, j in canon:
            rows[i][j >> 3] |= 1 << (j & 7)
            rows[j][i >> 3] |= 1 << (i & 7)
        self.n = n
        self.edges = frozenset(canon)
        self.adj = tuple(int.from_bytes(r, "little") for r in rows)

    def has_edge(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        return bool(self.adj[i] >> j & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return tuple(_bits(self.adj[v]))

    def edge_count(self) -> int:
        return len(self.edges)

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise IndexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrderedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, edges={sorted(self.edges)})"


def complement(g: OrderedGraph) -> OrderedGraph:
    """Exact complement over all vertex pairs; an involution."""
    edges = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if not g.adj[i] >> j & 1
    ]
    return OrderedGraph(g.n, edges)


def max_degree(g: OrderedGraph) -> int:
    return max((row.bit_count() for row in g.adj), default=0)


def neighborhood(g: OrderedGraph, vertices: Iterable[int]) -> frozenset[int]:
    """All vertices outside the given set adjacent to at least one member."""
    umask = 0
    for v in vertices:
        g._check(v)
        umask |= 1 << v
    nmask = 0
    for v in _bits(umask):
        nmask |= g.adj[v]
    return frozenset(_bits(nmask & ~umask))


def induced_subgraph(
    g: OrderedGraph, vertices: Iterable[int]
) -> tuple[OrderedGraph, tuple[int, ...]]:
    """Subgraph on the given vertices with relative order preserved.

    Returns the relabeled graph together with the strictly increasing index
    map: position p in the subgraph corresponds to original vertex map[p].
    """
    keep = sorted(set(vertices))
    for v in keep:
        g._check(v)
    pos = {v: p for p, v in enumerate(keep)}
    edges = [
        (pos[i], pos[j]) for (i, j) in g.edges if i in pos and j in pos
    ]
    return OrderedGraph(len(keep), edges), tuple(keep)


# ---------------------------------------------------------------------------
# Patterns: ordered graphs used as induced-subgraph targets.

def monotone_path(k: int) -> OrderedGraph:
    """P_k: k vertices in order, adjacent exactly when consecutive."""
    if k < 1:
        raise ValueError("a monotone path needs at least one vertex")
    return OrderedGraph(k, [(i, i + 1) for i in range(k - 1)])


def ordered_matching(pairs: Sequence[tuple[int, int]]) -> OrderedGraph:
    """Ordered matching on 2k vertices from k pairwise-disjoint pairs."""
    k = len(pairs)
    seen: set[int] = set()
    for a, b in pairs:
        if a == b:
            raise ValueError("matching edge endpoints must differ")
        seen.add(a)
        seen.add(b)
    if seen != set(range(2 * k)):
        raise ValueError("pairs must cover 0..2k-1 exactly once each")
    return OrderedGraph(2 * k, list(pairs))


def m1_pattern() -> OrderedGraph:
    """The intertwined two-edge matching on {0,1,2,3}: edges {0,2} and {1,3}."""
    return ordered_matching([(0, 2), (1, 3)])


def interval_partition(n: int, parts: int) -> list[range]:
    """Consecutive intervals of size floor(n/parts); the last one absorbs the
    remainder."""
    if parts < 1 or n < parts:
        raise ValueError(f"cannot split {n} vertices into {parts} intervals")
    base = n // parts
    out = [range(i * base, (i + 1) * base) for i in range(parts - 1)]
    out.append(range((parts - 1) * base, n))
    return out


# ---------------------------------------------------------------------------
# Embeddings.

@dataclass(frozen=True)
class Embedding:
    """Order-preserving induced embedding, stored as the image tuple:
    pattern vertex p maps to host vertex mapping[p]."""

    mapping: tuple[int, ...]

    def verify(self, g: OrderedGraph, pattern: OrderedGraph) -> bool:
        """Independent re-check: strictly increasing and exactly induced."""
        m = self.mapping
        if len(m) != pattern.n:
            return False
        if any(not 0 <= v < g.n for v in m):
            return False
        if any(m[i] >= m[i + 1] for i in range(len(m) - 1)):
            return False
        for p in range(pattern.n):
            for q in range(p + 1, pattern.n):
                if pattern.has_edge(p, q) != g.has_edge(m[p], m[q]):
                    return False
        return True

    def to_json(self) -> dict:
        return {"map": list(self.mapping)}


def find_induced_embedding(
    g: OrderedGraph, pattern: OrderedGraph
) -> Optional[Embedding]:
    """Order-respecting backtracking search for an induced copy of pattern.

    Candidates are pruned by degree (a host image needs at least the pattern
    degree) and by the remaining-vertex count; the order constraint pins the
    embedding so no isomorphism canonization is involved. Returns None only
    after the search space is exhausted.
    """
    k = pattern.n
    if k == 0:
        return Embedding(())
    if k > g.n:
        return None
    pat_deg = [pattern.degree(v) for v in range(k)]
    chosen: list[int] = []

    def attempt(pos: int, lo: int) -> bool:
        if pos == k:
            return True
        need = 0
        avoid = 0
        for q, host in enumerate(chosen):
            if pattern.adj[q] >> pos & 1:
                need |= 1 << host
            else:
                avoid |= 1 << host
        for v in range(lo, g.n - (k - pos) + 1):
            row = g.adj[v]
            if row.bit_count() < pat_deg[pos]:
                continue
            if (row & need) == need and not (row & avoid):
                chosen.append(v)
                if attempt(pos + 1, v + 1):
                    return True
                chosen.pop()
        return False

    if not attempt(0, 0):
        return None
    emb = Embedding(tuple(chosen))
    assert emb.verify(g, pattern), "search returned an invalid embedding"
    return emb


def contains_induced(g: OrderedGraph, pattern: OrderedGraph) -> bool:
    return find_induced_embedding(g, pattern) is not None


# ---------------------------------------------------------------------------
# Bi-cliques.

@dataclass(frozen=True)
class Biclique:
    """Certificate (A, B): disjoint equal-size sides, every cross pair an edge
    of the graph (in_complement=False) or of its complement (True).

    The empty certificate (both sides empty) is the size-0 sentinel some
    searches return when nothing exists; it never passes is_biclique.
    """

    side_a: frozenset[int]
    side_b: frozenset[int]
    in_complement: bool = False

    @property
    def size(self) -> int:
        return len(self.side_a)

    def to_json(self) -> dict:
        return {
            "a": sorted(self.side_a),
            "b": sorted(self.side_b),
            "in_complement": self.in_complement,
        }

    @staticmethod
    def from_json(obj: dict) -> "Biclique":
        return Biclique(
            frozenset(obj["a"]), frozenset(obj["b"]), bool(obj["in_complement"])
        )


def is_biclique(g: OrderedGraph, b: Biclique) -> bool:
    """Certificate checker: True iff all Biclique invariants hold against g."""
    for v in b.side_a | b.side_b:
        g._check(v)
    if not b.side_a or not b.side_b:
        return False
    if len(b.side_a) != len(b.side_b):
        return False
    if b.side_a & b.side_b:
        return False
    for u in b.side_a:
        row = g.adj[u]
        for w in b.side_b:
            present = bool(row >> w & 1)
            if present == b.in_complement:
                return False
    return True


def max_biclique_oracle(
    g: OrderedGraph, in_complement: bool = False, n_cap: int = 16
) -> Biclique:
    """Exhaustive maximum balanced bi-clique, for test oracles and small runs.

    Complete depth-first enumeration of one side A with sound pruning: the
    achievable balanced size from a state never exceeds min(|A| + remaining
    vertices, |common neighborhood of A minus A|), and B greedily completes
    from said common neighborhood. Deterministic (fixed DFS order, strict
    improvements only). Returns the size-0 sentinel when no bi-clique of
    size 1 exists on the requested side.
    """
    if g.n > n_cap:
        raise InstanceTooLarge(f"n={g.n} exceeds the exhaustive cap {n_cap}")
    n = g.n
    full = (1 << n) - 1
    if in_complement:
        rows = [(full ^ g.adj[v]) & ~(1 << v) for v in range(n)]
    else:
        rows = list(g.adj)
    best_size = 0
    best = (0, 0)

    def descend(i: int, amask: int, asize: int, common: int) -> None:
        nonlocal best_size, best
        avail = common & ~amask
        if asize > best_size and avail.bit_count() >= asize:
            best_size = asize
            best = (amask, _low_bits(avail, asize))
        if i == n:
            return
        if min(asize + n - i, avail.bit_count() if asize else n) <= best_size:
            return
        descend(i + 1, amask | (1 << i), asize + 1, common & rows[i])
        descend(i + 1, amask, asize, common)

    descend(0, 0, 0, full)
    return Biclique(
        frozenset(_bits(best[0])), frozenset(_bits(best[1])), in_complement
    )
