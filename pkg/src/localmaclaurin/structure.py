"""Equality cases: balanced complete multipartite structure on the s-clique support."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .certified import format_fraction
from .graph import (
    Graph,
    GraphError,
    MultipartitePartition,
    bits,
    clique_number,
    complement_components,
    complete_multipartite_decomposition,
    enumerate_cliques,
    s_clique_support,
)
from .weights import DomainError, as_weights, h_poly


class Prediction(str, enum.Enum):
    TIGHT = "tight"
    STRICT = "strict"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ReducedGraph:
    """Complete graph on the parts, weighted by part sums ``z``."""

    z: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.z)

    def graph(self) -> Graph:
        return Graph.complete(len(self.z))


@dataclass(frozen=True)
class EqualityDiagnosis:
    support: int
    omega: int
    is_complete_multipartite: bool
    parts: MultipartitePartition | None
    z: tuple[Fraction, ...] | None
    balanced: bool
    prediction: Prediction

    @property
    def num_parts(self) -> int | None:
        return None if self.parts is None else len(self.parts)

    @property
    def predicts_tight(self) -> bool:
        return self.prediction is Prediction.TIGHT

    def to_json(self) -> dict:
        return {
            "support": list(bits(self.support)),
            "omega": self.omega,
            "complete_multipartite": self.is_complete_multipartite,
            "num_parts": self.num_parts,
            "parts": None if self.parts is None else self.parts.as_lists(),
            "z": None if self.z is None else [format_fraction(v) for v in self.z],
            "balanced": self.balanced,
            "prediction": self.prediction.value,
        }


def _lift(mask: int, keep: list[int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << keep[i]
    return out


def diagnose_equality(G: Graph, s: int, q: int, x=None) -> EqualityDiagnosis:
    """Predict whether ``f_{s,q,G}(x) = h_{s,G}(x)^(q/s)`` from graph structure alone.

    Equality for positive weights happens exactly when the graph induced on
    the vertices lying in some ``s``-clique is complete ``omega``-partite and
    every part carries the same total weight. Weights vanishing somewhere on
    that vertex set fall outside the characterisation and are reported as
    UNDECIDED.
    """
    if s >= q:
        raise DomainError("equality analysis needs s < q (s = q is always an equality)")
    omega = clique_number(G)
    if q > omega:
        raise DomainError(f"q={q} exceeds the clique number {omega}")
    x = as_weights(G, x)
    support = s_clique_support(G, s)
    sub, keep = G.induced(support)
    partition = complete_multipartite_decomposition(sub)
    if partition is None:
        prediction = Prediction.STRICT
        parts = None
        z = None
        balanced = False
    else:
        parts = MultipartitePartition(tuple(_lift(p, keep) for p in partition.parts))
        z = tuple(sum((x[v] for v in bits(p)), Fraction(0)) for p in parts.parts)
        balanced = len(set(z)) == 1
        tight = balanced and len(parts) == omega
        prediction = Prediction.TIGHT if tight else Prediction.STRICT
    if any(x[v] == 0 for v in bits(support)):
        prediction = Prediction.UNDECIDED
    return EqualityDiagnosis(support, omega, partition is not None, parts, z, balanced, prediction)


def canonical_cliques(G: Graph, parts: MultipartitePartition, k: int) -> tuple[int, ...]:
    """``k``-cliques meeting every part in at most one vertex."""
    return tuple(
        c for c in enumerate_cliques(G, k)
        if all((c & p).bit_count() <= 1 for p in parts.parts)
    )


def complement_partition(G: Graph) -> MultipartitePartition:
    """Complement components of ``G`` as a partition (parts need not be independent)."""
    return MultipartitePartition(tuple(complement_components(G)))


def _check_parts(G: Graph, parts: MultipartitePartition):
    union = 0
    for p in parts.parts:
        if union & p:
            raise GraphError("parts overlap")
        union |= p
        for v in bits(p):
            if G.adj[v] & p:
                raise GraphError(f"part {list(bits(p))} is not independent")
    if union != G.vertex_mask:
        raise GraphError("parts do not cover the vertex set")
    for i, p in enumerate(parts.parts):
        rest = union & ~p
        for v in bits(p):
            if rest & ~G.adj[v]:
                raise GraphError("some cross-part pair is not adjacent")


def reduce(G: Graph, parts: MultipartitePartition, x=None, check: bool = True) -> ReducedGraph:
    """Collapse each part to one vertex weighted by the part's total weight.

    With ``check`` the identity ``h_{s,G}(x) = h_{s,R}(z)`` is confirmed
    exactly for every ``s`` up to the number of parts.
    """
    _check_parts(G, parts)
    x = as_weights(G, x)
    z = tuple(sum((x[v] for v in bits(p)), Fraction(0)) for p in parts.parts)
    reduced = ReducedGraph(z)
    if check:
        R = reduced.graph()
        for s in range(1, len(z) + 1):
            if h_poly(G, s, x) != h_poly(R, s, z):
                raise AssertionError(f"reduced-graph identity fails at s={s}")
    return reduced
