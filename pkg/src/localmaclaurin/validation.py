"""Input coercion shared by the estimators and the CLI."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from .certified import parse_fraction
from .graph import Graph, GraphError, parse_edge_list, parse_graph6
from .weights import as_weights


def check_graph(G) -> Graph:
    """Coerce ``G`` into a :class:`Graph`.

    Accepts a Graph, a graph6 string, a square 0/1 adjacency array, or any
    object with networkx's ``nodes``/``edges`` interface (nodes are relabelled
    in sorted order, and the labels kept).
    """
    if isinstance(G, Graph):
        return G
    if isinstance(G, bytes):
        G = G.decode("ascii")
    if isinstance(G, str):
        return parse_graph6(G)
    if hasattr(G, "nodes") and hasattr(G, "edges"):
        nodes = sorted(G.nodes()) if _sortable(G.nodes()) else sorted(G.nodes(), key=repr)
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in G.edges() if u != v]
        if len(edges) != sum(1 for _ in G.edges()):
            raise GraphError("self-loops are not allowed")
        return Graph.from_edges(len(nodes), edges, labels=[str(v) for v in nodes])
    arr = np.asarray(G)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        if not np.array_equal(arr, arr.T):
            raise GraphError("adjacency matrix is not symmetric")
        if np.any(np.diag(arr)):
            raise GraphError("adjacency matrix has self-loops")
        n = arr.shape[0]
        return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if arr[u, v]])
    raise TypeError(f"cannot interpret {type(G).__name__} as a graph")


def _sortable(nodes) -> bool:
    try:
        sorted(nodes)
    except TypeError:
        return False
    return True


def check_graphs(X) -> list[Graph]:
    if isinstance(X, (Graph, str, bytes)) or hasattr(X, "edges"):
        return [check_graph(X)]
    return [check_graph(G) for G in X]


def check_weights(G: Graph, x) -> tuple[Fraction, ...]:
    """Validate weights: strings like ``"2/3"`` are parsed, floats converted exactly."""
    if x is None:
        return as_weights(G, None)
    if isinstance(x, str):
        x = x.split(",")
    values = [parse_fraction(v) if isinstance(v, str) else Fraction(v) for v in x]
    return as_weights(G, values)


def read_weights_file(path: str | Path) -> list[Fraction]:
    """One rational per line (``p/q`` or integer); ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_fraction(line))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


def load_graph(source: str, fmt: str = "auto") -> Graph:
    """Read a graph from an existing file path, or decode ``source`` inline.

    ``fmt`` is ``graph6``, ``edgelist`` or ``auto``; ``auto`` treats files
    with a ``.g6`` suffix or a single printable line as graph6.
    """
    path = Path(source)
    if path.exists():
        text = path.read_text(encoding="utf-8")
        if fmt == "auto":
            lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
            if path.suffix == ".g6" or (len(lines) == 1 and len(lines[0].split()) == 1
                                        and not lines[0].lower().startswith("n=")):
                fmt = "graph6"
            else:
                fmt = "edgelist"
        if fmt == "graph6":
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if len(lines) != 1:
                raise GraphError(f"{source}: expected exactly one graph6 line, found {len(lines)}")
            return parse_graph6(lines[0])
        return parse_edge_list(text)
    if fmt == "edgelist":
        return parse_edge_list(source.replace(";", "\n"))
    return parse_graph6(source)


def parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(" ", "").split(",") if tok]


def iter_lines(paths: Iterable[str]) -> Iterable[str]:
    for p in paths:
        yield from Path(p).read_text(encoding="ascii").splitlines()
