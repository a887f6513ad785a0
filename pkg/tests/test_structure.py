import random
from fractions import Fraction

import pytest

from localmaclaurin.graph import Graph, GraphError, MultipartitePartition, bits, clique_number, enumerate_cliques, sigma_map
from localmaclaurin.structure import (
    Prediction,
    canonical_cliques,
    complement_partition,
    diagnose_equality,
    reduce,
)
from localmaclaurin.weights import DomainError, Verdict, h_poly, verify_localised

from conftest import random_graph


def test_k4_tight():
    d = diagnose_equality(Graph.complete(4), 2, 3)
    assert d.is_complete_multipartite and d.num_parts == 4
    assert d.z == (1, 1, 1, 1) and d.balanced
    assert d.prediction is Prediction.TIGHT


def test_path_strict():
    d = diagnose_equality(Graph.path(3), 1, 2)
    assert d.parts.as_lists() == [[0, 2], [1]]
    assert d.z == (2, 1) and not d.balanced
    assert d.prediction is Prediction.STRICT


def test_k22_tight():
    G = Graph.cycle(4)
    d = diagnose_equality(G, 1, 2)
    assert d.z == (2, 2) and d.predicts_tight
    assert verify_localised(G, 1, 2).lhs.value == 16 == G.n ** 2


def test_zero_weight_undecided():
    d = diagnose_equality(Graph.cycle(4), 1, 2, [1, 0, 1, 1])
    assert d.prediction is Prediction.UNDECIDED


def test_domain_errors():
    with pytest.raises(DomainError):
        diagnose_equality(Graph.complete(3), 2, 2)
    with pytest.raises(DomainError):
        diagnose_equality(Graph.cycle(5), 1, 3)


def test_support_restriction():
    # triangle with a pendant: U_2 is everything, U_3 is the triangle
    G = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    d = diagnose_equality(G, 2, 3)
    assert list(bits(d.support)) == [0, 1, 2, 3]
    assert d.prediction is Prediction.STRICT
    assert verify_localised(G, 2, 3).verdict is Verdict.HOLDS


def test_isolated_vertex_matters_only_for_s1():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    assert diagnose_equality(G, 1, 2).prediction is Prediction.STRICT
    assert diagnose_equality(G, 2, 3).prediction is Prediction.TIGHT
    assert verify_localised(G, 1, 2).verdict is Verdict.HOLDS
    assert verify_localised(G, 2, 3).verdict is Verdict.TIGHT


class TestCanonical:
    def test_multipartite_all_canonical(self):
        G = Graph.complete_multipartite([2, 3, 1])
        parts = complement_partition(G)
        for k in range(1, 4):
            assert canonical_cliques(G, parts, k) == enumerate_cliques(G, k)

    def test_noncanonical_edge(self):
        # K_3 with parts {a,b},{c}: ab is an edge inside a part
        G = Graph.complete(3)
        parts = MultipartitePartition((0b011, 0b100))
        edges = canonical_cliques(G, parts, 2)
        assert 0b011 not in edges
        assert set(edges) == {0b101, 0b110}

    def test_k1(self):
        G = Graph.path(4)
        assert canonical_cliques(G, complement_partition(G), 1) == enumerate_cliques(G, 1)


class TestReduce:
    def test_k23(self):
        G = Graph.complete_multipartite([2, 3])
        R = reduce(G, complement_partition(G))
        assert R.z == (2, 3)
        assert h_poly(G, 2) == 6 == h_poly(R.graph(), 2, R.z)

    def test_singletons(self):
        G = Graph.complete(4)
        x = [Fraction(1, 2), 3, 5, 7]
        assert reduce(G, complement_partition(G), x).z == tuple(Fraction(v) for v in x)

    def test_k22(self):
        G = Graph.cycle(4)
        R = reduce(G, complement_partition(G), [1, 1, 1, 1])
        assert R.z == (2, 2) and h_poly(G, 2) == 4

    def test_invalid_parts(self):
        with pytest.raises(GraphError):
            reduce(Graph.path(4), complement_partition(Graph.path(4)))

    def test_identity_all_s(self):
        rng = random.Random(7)
        for _ in range(30):
            sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
            G = Graph.complete_multipartite(sizes)
            x = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(G.n)]
            R = reduce(G, complement_partition(G), x, check=False)
            for s in range(1, len(sizes) + 1):
                assert h_poly(G, s, x) == h_poly(R.graph(), s, R.z)


def test_multipartite_sigma_is_omega():
    for sizes in ([1, 2, 3], [2, 2], [3, 1, 1, 2]):
        G = Graph.complete_multipartite(sizes)
        omega = clique_number(G)
        assert omega == len(sizes)
        for q in range(1, omega + 1):
            assert set(sigma_map(G, q).values()) == {omega}


def test_iff_with_weights():
    """Structure prediction matches the verifier for positive non-uniform weights."""
    rng = random.Random(11)
    checked_tight = 0
    for trial in range(150):
        if trial % 3 == 0:
            # balanced weighted multipartite: equal part sums on purpose
            sizes = [rng.randint(1, 3) for _ in range(rng.randint(2, 4))]
            G = Graph.complete_multipartite(sizes)
            x = []
            for size in sizes:
                cuts = sorted(rng.sample(range(1, 12), size - 1))
                x += [Fraction(b - a) for a, b in zip([0] + cuts, cuts + [12])]
        else:
            G = random_graph(rng, rng.randint(2, 7), 0.7)
            x = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(G.n)]
        omega = clique_number(G)
        for q in range(2, omega + 1):
            for s in range(1, q):
                pred = diagnose_equality(G, s, q, x).predicts_tight
                got = verify_localised(G, s, q, x).verdict.category == "tight"
                assert pred == got, (G, s, q, x)
                checked_tight += got
    assert checked_tight > 0
