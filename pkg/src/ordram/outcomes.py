"""Tagged outcome types shared by the extraction engines.

Every variant carries enough state to re-verify itself against the host
graph without trusting the algorithm that produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from .core import (
    Biclique,
    Embedding,
    OrderedGraph,
    induced_subgraph,
    is_biclique,
    max_degree,
)


@dataclass(frozen=True)
class ReachSet:
    """Vertices of the target set reachable through increasing target-paths.

    parents maps each reached vertex to its predecessor on one witness path
    (a source vertex or an earlier reached vertex), so any membership claim
    can be spot-checked by walking back to the source set.
    """

    source: frozenset[int]
    target: frozenset[int]
    reached: frozenset[int]
    parents: Mapping[int, int] = field(compare=False, default_factory=dict)

    def witness_path(self, t: int) -> list[int]:
        """Increasing path source-vertex, t1, ..., t proving t was reached."""
        if t not in self.reached:
            raise KeyError(f"{t} was not reached")
        path = [t]
        while path[-1] not in self.source:
            path.append(self.parents[path[-1]])
        path.reverse()
        return path


@dataclass(frozen=True)
class FarVertex:
    """A single source vertex whose target reach met the size guarantee."""

    vertex: int
    reach: ReachSet
    bound: int

    variant = "far-vertex"

    def verify(self, g: OrderedGraph) -> bool:
        from .paths import monotone_reach  # local import to avoid a cycle

        fresh = monotone_reach(g, [self.vertex], self.reach.target)
        return fresh.reached == self.reach.reached and len(
            self.reach.reached
        ) >= self.bound

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "reached": sorted(self.reach.reached)}

    def sizes(self) -> dict:
        return {"reach": len(self.reach.reached), "bound": self.bound}


@dataclass(frozen=True)
class CoBicliqueFound:
    """Bi-clique certificate in the complement, with its promised bound and
    the pipeline stage that emitted it."""

    biclique: Biclique
    bound: int
    stage: str

    variant = "co-bi-clique"

    def verify(self, g: OrderedGraph) -> bool:
        return (
            self.biclique.in_complement
            and is_biclique(g, self.biclique)
            and self.biclique.size >= self.bound
        )

    def to_json(self) -> dict:
        return self.biclique.to_json()

    def sizes(self) -> dict:
        return {"size": self.biclique.size, "bound": self.bound}


@dataclass(frozen=True)
class InducedPatternFound:
    """Verified order-preserving induced copy of the requested pattern."""

    embedding: Embedding
    pattern: OrderedGraph

    variant = "induced-pattern"

    def verify(self, g: OrderedGraph) -> bool:
        if not self.embedding.verify(g, self.pattern):
            return False
        sub, _ = induced_subgraph(g, self.embedding.mapping)
        return sub == self.pattern

    def to_json(self) -> dict:
        return {
            "map": list(self.embedding.mapping),
            "pattern_edges": sorted(self.pattern.edges),
        }

    def sizes(self) -> dict:
        return {"vertices": self.pattern.n}


@dataclass(frozen=True)
class PreconditionViolation:
    """A named hypothesis failed; details hold the numbers behind the claim."""

    reason: str
    details: dict = field(compare=False, default_factory=dict)

    variant = "precondition-violation"

    def verify(self, g: OrderedGraph) -> bool:
        """Re-check the recorded inequality against the graph where possible."""
        d = self.details
        if self.reason == "max-degree":
            return max_degree(g) * d["den"] >= g.n * d["num"]
        if self.reason == "n-too-small":
            return g.n < d["n_min"]
        if self.reason == "source-too-small":
            return d["size"] < d["required"]
        if self.reason == "target-too-small":
            return d["size"] < d["required"]
        if self.reason == "source-target-order":
            return d["max_source"] >= d["min_target"]
        if self.reason == "interval-arithmetic":
            return d["interval"] < 2 * d["m"] - 1
        if self.reason == "reach-empty":
            return True
        return True

    def to_json(self) -> dict:
        return {"reason": self.reason, "details": _plain(self.details)}

    def sizes(self) -> dict:
        return {}


def _plain(obj):
    """Recursively coerce detail payloads into JSON-serializable plain data."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [_plain(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "numerator"):
        return {"num": obj.numerator, "den": obj.denominator}
    return str(obj)


PathOutcome = Union[FarVertex, CoBicliqueFound, InducedPatternFound, PreconditionViolation]


def reach_guarantee(n_param: int) -> int:
    """Reach size a far vertex must certify for lemma parameter n_param."""
    return math.ceil(n_param / 12)


def cobiclique_guarantee(n_param: int) -> int:
    """Co-bi-clique size the reach dichotomy must certify for n_param."""
    return math.ceil(n_param / (12 * math.log2(n_param)))
