import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localmaclaurin.graph import (
    Graph,
    Graph6Error,
    GraphError,
    NotACliqueError,
    bits,
    clique_number,
    complete_multipartite_decomposition,
    encode_edge_list,
    encode_graph6,
    enumerate_cliques,
    maximal_cliques,
    parse_edge_list,
    parse_graph6,
    s_clique_support,
    sigma,
    sigma_map,
    to_mask,
)

from conftest import random_graph

K4_MINUS = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])  # missing 2-3


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def test_graph_invariants_rejected():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (0b1,))
    with pytest.raises(GraphError):
        Graph(2, (0b100, 0))


class TestGraph6:
    def test_star_against_networkx(self):
        ours = parse_graph6("D?{")
        ref = nx.from_graph6_bytes(b"D?{")
        assert ours.n == 5
        assert sorted(ours.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())

    def test_single_vertex(self):
        G = parse_graph6("@")
        assert G.n == 1 and G.num_edges() == 0

    def test_k2(self):
        # n=2 -> 'A'; one bit (0,1)=1 padded to 100000 = 32 -> chr(95) = '_'
        G = parse_graph6("A_")
        assert G.n == 2 and G.edges() == [(0, 1)]

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<A_") == parse_graph6("A_")

    @pytest.mark.parametrize("text, offset", [
        ("A", 1),      # missing data byte
        ("A__", 2),    # trailing byte
        ("A`", 1),     # padding bit set
        ("A\x7f", 1),  # out of range
        ("", 0),
    ])
    def test_malformed(self, text, offset):
        with pytest.raises(Graph6Error) as err:
            parse_graph6(text)
        assert err.value.offset == offset
        assert "byte offset" in str(err.value)

    def test_too_many_vertices(self):
        big = "~" + "".join(chr(63 + d) for d in (0, 16, 1))  # n = 1025
        with pytest.raises(Graph6Error, match="exceeds"):
            parse_graph6(big)

    def test_long_form_roundtrip(self):
        rng = random.Random(3)
        G = random_graph(rng, 70, 0.1)
        text = encode_graph6(G)
        assert text[0] == "~"
        assert parse_graph6(text) == G
        assert text == nx.to_graph6_bytes(_to_nx(G), header=False).decode().strip()

    def test_corpus_roundtrip_and_reference(self, corpus_lines):
        for line in corpus_lines:
            G = parse_graph6(line)
            assert encode_graph6(G) == line
            ref = nx.from_graph6_bytes(line.encode())
            assert G.n == ref.number_of_nodes()
            assert sorted(G.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())

    @settings(max_examples=60)
    @given(graphs(max_n=12))
    def test_roundtrip_property(self, G):
        assert parse_graph6(encode_graph6(G)) == G


def _to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


class TestEdgeList:
    def test_path(self):
        G = parse_edge_list("0 1\n1 2")
        assert G.n == 3 and G.edges() == [(0, 1), (1, 2)]

    def test_header_keeps_isolated(self):
        G = parse_edge_list("n=4\n0 1")
        assert G.n == 4 and G.num_edges() == 1

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            parse_edge_list("0 0")

    def test_non_integer(self):
        with pytest.raises(GraphError, match="non-integer"):
            parse_edge_list("0 a")

    def test_duplicate_warns(self):
        with pytest.warns(UserWarning, match="duplicate"):
            G = parse_edge_list("0 1\n1 0\n")
        assert G.num_edges() == 1

    def test_roundtrip(self):
        G = parse_edge_list("n=5\n0 1\n3 2  # comment\n")
        assert parse_edge_list(encode_edge_list(G)) == G


class TestCliques:
    def test_k4_pairs(self):
        assert len(enumerate_cliques(Graph.complete(4), 2)) == 6

    def test_path_edges(self):
        assert [tuple(bits(c)) for c in enumerate_cliques(Graph.path(3), 2)] == [(0, 1), (1, 2)]

    def test_c5_triangle_free(self):
        assert enumerate_cliques(Graph.cycle(5), 3) == ()

    def test_lexicographic(self):
        G = Graph.complete(5)
        tuples = [tuple(bits(c)) for c in enumerate_cliques(G, 3)]
        assert tuples == list(itertools.combinations(range(5), 3))

    @pytest.mark.parametrize("G, omega", [
        (Graph.complete(5), 5),
        (Graph.cycle(5), 2),
        (K4_MINUS, 3),
        (Graph.empty(0), 0),
        (Graph.empty(3), 1),
    ])
    def test_clique_number(self, G, omega):
        assert clique_number(G) == omega

    @settings(max_examples=80)
    @given(graphs())
    def test_counts_against_subsets(self, G):
        # brute force: test every vertex subset
        for k in range(1, G.n + 1):
            brute = [to_mask(c) for c in itertools.combinations(range(G.n), k) if G.is_clique(to_mask(c))]
            assert list(enumerate_cliques(G, k)) == brute
        assert len(enumerate_cliques(G, 1)) == G.n
        if G.n:
            assert len(enumerate_cliques(G, 2)) == G.num_edges()
        brute_omega = max((k for k in range(G.n + 1)
                           if any(G.is_clique(to_mask(c)) for c in itertools.combinations(range(G.n), k))),
                          default=0)
        assert clique_number(G) == brute_omega

    @settings(max_examples=50)
    @given(graphs())
    def test_maximal_cliques_match_networkx(self, G):
        ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(_to_nx(G))) if G.n else []
        assert sorted(tuple(bits(c)) for c in maximal_cliques(G)) == ref

    def test_complete_counts(self):
        from math import comb
        for n in range(1, 8):
            for s in range(1, n + 1):
                assert len(enumerate_cliques(Graph.complete(n), s)) == comb(n, s)


class TestSigma:
    def test_k4_minus_edge(self):
        assert sigma(K4_MINUS, [0, 1]) == 3

    def test_complete(self):
        assert sigma(Graph.complete(5), [1, 2, 3]) == 5

    def test_c5_edge(self):
        assert sigma(Graph.cycle(5), [0, 1]) == 2

    def test_not_a_clique(self):
        with pytest.raises(NotACliqueError):
            sigma(Graph.path(3), [0, 2])

    def test_sigma_maps(self):
        assert set(sigma_map(K4_MINUS, 2).values()) == {3} and len(sigma_map(K4_MINUS, 2)) == 5
        assert set(sigma_map(Graph.complete(4), 3).values()) == {4}
        assert set(sigma_map(Graph.cycle(5), 2).values()) == {2}

    @settings(max_examples=60)
    @given(graphs())
    def test_bounds_and_monotone(self, G):
        omega = clique_number(G)
        for q in range(1, omega + 1):
            smap = sigma_map(G, q)
            for I, t in smap.items():
                assert q <= t <= omega
                assert sigma(G, I) == t
                if q + 1 <= omega:
                    for J, t2 in sigma_map(G, q + 1).items():
                        if J & I == I:
                            assert t2 <= t


class TestSupportAndMultipartite:
    def test_triangle_plus_isolated(self):
        G = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
        assert s_clique_support(G, 3) == 0b0111
        assert s_clique_support(G, 1) == 0b1111

    def test_path_support(self):
        assert s_clique_support(Graph.path(3), 2) == 0b111

    def test_c4(self):
        parts = complete_multipartite_decomposition(Graph.cycle(4))
        assert parts.as_lists() == [[0, 2], [1, 3]]

    def test_path3(self):
        assert complete_multipartite_decomposition(Graph.path(3)).as_lists() == [[0, 2], [1]]

    def test_path4(self):
        assert complete_multipartite_decomposition(Graph.path(4)) is None

    @settings(max_examples=80)
    @given(graphs())
    def test_iff_complement_is_cliques(self, G):
        parts = complete_multipartite_decomposition(G)
        comp = G.complement()
        comps = list(nx.connected_components(_to_nx(comp))) if G.n else []
        complement_is_cliques = all(comp.is_clique(to_mask(c)) for c in comps)
        assert (parts is not None) == complement_is_cliques
        if parts is not None:
            assert clique_number(G) == len(parts)
            for R in maximal_cliques(G):
                assert all((R & p).bit_count() == 1 for p in parts.parts)
