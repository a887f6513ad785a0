"""Graph blowups: each vertex becomes an independent set, each edge a complete bipartite join."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .graph import MAX_VERTICES, Graph, GraphError, bits, enumerate_cliques, sigma_map, to_mask
from .weights import DEFAULT_SCHEDULE, f_poly, h_poly


@dataclass(frozen=True)
class BlowupSpec:
    base: Graph
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.multiplicities) != self.base.n:
            raise ValueError("one multiplicity per base vertex is required")
        for m in self.multiplicities:
            if not isinstance(m, int) or m < 0:
                raise ValueError(f"multiplicities must be nonnegative integers, got {m!r}")


@dataclass(frozen=True)
class Blowup:
    graph: Graph
    provenance: tuple[int, ...]  # base vertex of each blown-up vertex

    def image(self, mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= 1 << self.provenance[v]
        return out


def blowup(spec: BlowupSpec) -> Blowup:
    total = sum(spec.multiplicities)
    if total > MAX_VERTICES:
        raise GraphError(f"blowup has {total} vertices, limit is {MAX_VERTICES}")
    provenance = tuple(v for v, m in enumerate(spec.multiplicities) for _ in range(m))
    blocks = []
    offset = 0
    for m in spec.multiplicities:
        blocks.append(((1 << m) - 1) << offset)
        offset += m
    adj = []
    for v in provenance:
        row = 0
        for u in bits(spec.base.adj[v]):
            row |= blocks[u]
        adj.append(row)
    return Blowup(Graph(total, tuple(adj)), provenance)


def clear_denominators(x, limit: int = MAX_VERTICES) -> tuple[int, ...]:
    """Smallest integer vector proportional to the nonnegative rational vector ``x``."""
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        raise ValueError("weights must be nonnegative")
    scale = lcm(*(v.denominator for v in x)) if x else 1
    ints = [int(v * scale) for v in x]
    g = gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    if sum(ints) > limit:
        raise GraphError(f"integral rescaling needs {sum(ints)} vertices, limit is {limit}")
    return tuple(ints)


@dataclass
class BlowupEquivalence:
    s: int
    q: int
    clique_count: int
    h_value: Fraction
    counts_match: bool
    sigma_preserved: bool
    sigma_failures: list = field(default_factory=list)
    f_blowup: object = None
    f_base: object = None
    f_match: bool = False

    @property
    def ok(self) -> bool:
        return self.counts_match and self.sigma_preserved and self.f_match

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "q": self.q,
            "k_s_blowup": self.clique_count,
            "h_s_base": str(self.h_value),
            "counts_match": self.counts_match,
            "sigma_preserved": self.sigma_preserved,
            "f_blowup": self.f_blowup.to_json(),
            "f_base": self.f_base.to_json(),
            "f_match": self.f_match,
            "ok": self.ok,
        }


def check_blowup_equivalence(base: Graph, s: int, q: int, x, bits_: int = DEFAULT_SCHEDULE[-1],
                             tolerance: Fraction = Fraction(1, 2**40)) -> BlowupEquivalence:
    """Compare clique counts, sigma values and ``f`` between a blowup and its weighted base.

    Zero multiplicities delete vertices, which can lower sigma, so sigma and
    ``f`` are compared against the base induced on the support of ``x``.
    The clique count is compared against ``h_s`` of the full base.
    """
    xs = tuple(x)
    for v in xs:
        if Fraction(v).denominator != 1:
            raise ValueError(f"blowup weights must be integers, got {v}")
    mult = tuple(int(v) for v in xs)
    b = blowup(BlowupSpec(base, mult))
    Gx = b.graph

    k_s = len(enumerate_cliques(Gx, s))
    h = h_poly(base, s, mult)

    support = to_mask(v for v, m in enumerate(mult) if m)
    core, keep = base.induced(support)
    index = {v: i for i, v in enumerate(keep)}
    core_mult = tuple(mult[v] for v in keep)
    core_sigma = sigma_map(core, q)
    failures = []
    for clique, t in sigma_map(Gx, q).items():
        image = to_mask(index[b.provenance[v]] for v in bits(clique))
        if image.bit_count() != q or core_sigma.get(image) != t:
            failures.append((list(bits(clique)), [keep[i] for i in bits(image)], t))

    f_big = f_poly(Gx, s, q, None, bits_)
    f_small = f_poly(core, s, q, core_mult, bits_)
    if f_big.is_exact and f_small.is_exact:
        f_match = f_big.value == f_small.value
    else:
        joint = max(f_big.hi, f_small.hi) - min(f_big.lo, f_small.lo)
        f_match = f_big.overlaps(f_small) and joint <= tolerance * max(Fraction(1), f_big.hi)
    return BlowupEquivalence(s, q, k_s, h, k_s == h, not failures, failures, f_big, f_small, f_match)
