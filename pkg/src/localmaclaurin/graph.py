"""Dense bitset graphs, graph6 / edge-list I/O and clique machinery.

Vertex sets are plain Python ints used as bitsets (bit ``v`` set means vertex
``v`` is present). All enumeration is deterministic and lexicographic.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

MAX_VERTICES = 1024


class GraphError(ValueError):
    """Raised for malformed graph input or invariant violations."""


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class NotACliqueError(GraphError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood bitset of ``v``. Instances are immutable and
    hashable, which lets clique enumerations be memoised per graph.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour index >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at edge {v}-{u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label count does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if labels is None else tuple(labels))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> "Graph":
        part_of = [i for i, size in enumerate(sizes) for _ in range(size)]
        n = len(part_of)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if part_of[u] != part_of[v]]
        return cls.from_edges(n, edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def common_neighbourhood(self, mask: int) -> int:
        common = self.vertex_mask
        for v in bits(mask):
            common &= self.adj[v]
        return common

    def induced(self, mask: int) -> tuple["Graph", list[int]]:
        """Subgraph on ``mask``, relabelled to ``0..k-1``; also returns the old indices."""
        keep = list(bits(mask))
        index = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            adj.append(to_mask(index[u] for u in bits(self.adj[v] & mask)))
        labels = None if self.labels is None else tuple(self.labels[v] for v in keep)
        return Graph(len(keep), tuple(adj), labels), keep

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- graph6 ------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise GraphError(f"n={n} too large for graph6")


def encode_graph6(G: Graph) -> str:
    """Encode ``G`` in graph6 (no ``>>graph6<<`` header)."""
    out = bytearray(_encode_n(G.n))
    acc = nbits = 0
    for v in range(1, G.n):
        for u in range(v):
            acc = acc << 1 | (G.adj[v] >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string.

    Accepts the optional ``>>graph6<<`` header and both the short (n <= 62)
    and the ``~``-prefixed long header. Errors carry the offending byte offset.
    """
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    data = s.encode("ascii", errors="replace")
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the printable graph6 range", base + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size header", base + len(data))
        n = 0
        for b in data[2:8]:
            n = n << 6 | (b - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte size header", base + len(data))
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds supported maximum {MAX_VERTICES}", base)

    needed = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) < needed:
        raise Graph6Error(f"expected {needed} data bytes, found {len(body)}", base + len(data))
    if len(body) > needed:
        raise Graph6Error("trailing bytes after graph data", base + pos + needed)

    adj = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    if k % 6:
        last = body[-1] - 63
        if last & ((1 << (6 - k % 6)) - 1):
            raise Graph6Error("nonzero padding bits", base + pos + needed - 1)
    return Graph(n, tuple(adj))


# -- edge lists --------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines (0-based).

    An optional ``n=<count>`` line fixes the vertex count so isolated
    high-index vertices survive. Lines starting with ``#`` are ignored.
    Duplicate edges are dropped with a warning.
    """
    n_header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("n="):
            try:
                n_header = int(line[2:])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex-count header {line!r}") from None
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices, got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"line {lineno}: duplicate edge {key} ignored", stacklevel=2)
            continue
        seen.add(key)
        edges.append(key)
    top = max((v for e in edges for v in e), default=-1) + 1
    n = top if n_header is None else n_header
    if n < top:
        raise GraphError(f"header n={n} smaller than largest vertex index {top - 1}")
    return Graph.from_edges(n, edges)


def encode_edge_list(G: Graph) -> str:
    lines = [f"n={G.n}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


# -- cliques -----------------------------------------------------------------

@lru_cache(maxsize=4096)
def enumerate_cliques(G: Graph, k: int) -> tuple[int, ...]:
    """All ``k``-cliques of ``G`` as bitsets, in lexicographic order of sorted vertex tuples."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out: list[int] = []

    def extend(clique: int, size: int, candidates: int):
        if size == k:
            out.append(clique)
            return
        # not enough candidates left to finish
        if candidates.bit_count() < k - size:
            return
        for v in bits(candidates):
            later = candidates & G.adj[v] & ~((2 << v) - 1)
            extend(clique | 1 << v, size + 1, later)

    extend(0, 0, G.vertex_mask)
    return tuple(out)


def clique_count(G: Graph, k: int) -> int:
    return len(enumerate_cliques(G, k))


def clique_vertices(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def _max_clique_size(adj: Sequence[int], candidates: int) -> int:
    """Size of a largest clique inside ``candidates`` (Bron-Kerbosch with pivoting)."""
    best = 0

    def expand(size: int, p: int, x: int):
        nonlocal best
        if not p:
            if size > best:
                best = size
            return
        if size + p.bit_count() <= best:
            return
        pool = p | x
        pivot = max(bits(pool), key=lambda u: (p & adj[u]).bit_count())
        for v in bits(p & ~adj[pivot]):
            expand(size + 1, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, candidates, 0)
    return best


@lru_cache(maxsize=4096)
def clique_number(G: Graph) -> int:
    return _max_clique_size(G.adj, G.vertex_mask)


@lru_cache(maxsize=1024)
def maximal_cliques(G: Graph) -> tuple[int, ...]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted lexicographically."""
    found: list[int] = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            found.append(r)
            return
        pool = p | x
        pivot = max(bits(pool), key=lambda u: (p & G.adj[u]).bit_count())
        for v in bits(p & ~G.adj[pivot]):
            expand(r | 1 << v, p & G.adj[v], x & G.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if G.n:
        expand(0, G.vertex_mask, 0)
    return tuple(sorted(found, key=clique_vertices))


def sigma(G: Graph, clique: int | Iterable[int]) -> int:
    """Size of a largest clique of ``G`` containing ``clique``."""
    mask = clique if isinstance(clique, int) else to_mask(clique)
    if not G.is_clique(mask):
        raise NotACliqueError(f"{clique_vertices(mask)} is not a clique")
    return mask.bit_count() + _max_clique_size(G.adj, G.common_neighbourhood(mask))


@lru_cache(maxsize=4096)
def sigma_map(G: Graph, q: int) -> dict[int, int]:
    """Map every ``q``-clique (bitset) to its clique-extension number.

    Common neighbourhoods are built incrementally along the enumeration
    tree, so each q-clique costs one intersection plus one clique search.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    result: dict[int, int] = {}

    def extend(clique: int, size: int, candidates: int, common: int):
        if size == q:
            result[clique] = q + _max_clique_size(G.adj, common)
            return
        for v in bits(candidates):
            later = candidates & G.adj[v] & ~((2 << v) - 1)
            extend(clique | 1 << v, size + 1, later, common & G.adj[v])

    extend(0, 0, G.vertex_mask, G.vertex_mask)
    return result


def sigma_histogram(G: Graph, q: int) -> dict[int, int]:
    hist: dict[int, int] = {}
    for value in sigma_map(G, q).values():
        hist[value] = hist.get(value, 0) + 1
    return dict(sorted(hist.items()))


def s_clique_support(G: Graph, s: int) -> int:
    """Union of all ``s``-cliques, as a bitset."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return G.vertex_mask
    support = 0
    for c in enumerate_cliques(G, s):
        support |= c
    return support


def complement_components(G: Graph) -> list[int]:
    """Connected components of the complement, ordered by smallest vertex."""
    comp = G.complement()
    remaining = G.vertex_mask
    parts = []
    while remaining:
        start = remaining & -remaining
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= comp.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        parts.append(seen)
        remaining &= ~seen
    return parts


@dataclass(frozen=True)
class MultipartitePartition:
    parts: tuple[int, ...]

    def __len__(self):
        return len(self.parts)

    def as_lists(self) -> list[list[int]]:
        return [list(bits(p)) for p in self.parts]


def complete_multipartite_decomposition(G: Graph) -> MultipartitePartition | None:
    """Parts of ``G`` if it is complete multipartite, otherwise ``None``.

    The parts are the complement's connected components; ``G`` is complete
    multipartite exactly when each of them is independent in ``G``.
    """
    parts = complement_components(G)
    for p in parts:
        for v in bits(p):
            if G.adj[v] & p:
                return None
    return MultipartitePartition(tuple(parts))
