import random
from fractions import Fraction

import pytest

from localmaclaurin.certified import CertifiedValue
from localmaclaurin.blowup import BlowupSpec, blowup, check_blowup_equivalence, clear_denominators
from localmaclaurin.graph import Graph, GraphError, complete_multipartite_decomposition

from conftest import random_graph


def test_k2_to_k23():
    b = blowup(BlowupSpec(Graph.complete(2), (2, 3)))
    assert b.graph.n == 5 and b.graph.num_edges() == 6
    assert b.provenance == (0, 0, 1, 1, 1)
    parts = complete_multipartite_decomposition(b.graph)
    assert sorted(len(part) for part in parts.as_lists()) == [2, 3]


def test_unit_multiplicities_identity():
    G = Graph.cycle(5)
    assert blowup(BlowupSpec(G, (1,) * 5)).graph == G


def test_zero_deletes():
    G = Graph.path(3)
    b = blowup(BlowupSpec(G, (1, 0, 1)))
    assert b.graph.n == 2 and b.graph.num_edges() == 0
    assert b.provenance == (0, 2)


def test_overflow():
    with pytest.raises(GraphError):
        blowup(BlowupSpec(Graph.complete(2), (600, 600)))


def test_bad_multiplicity():
    with pytest.raises(ValueError):
        BlowupSpec(Graph.complete(2), (1, -1))


def test_equivalence_k2():
    eq = check_blowup_equivalence(Graph.complete(2), 2, 2, (2, 3))
    assert eq.clique_count == 6 == eq.h_value and eq.ok
    eq = check_blowup_equivalence(Graph.complete(2), 1, 2, (2, 3))
    assert eq.f_blowup == eq.f_base == CertifiedValue.exact(24)


def test_equivalence_unit_weights():
    G = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    for s, q in [(1, 2), (2, 3), (1, 3)]:
        assert check_blowup_equivalence(G, s, q, (1,) * 5).ok


def test_rejects_fractional():
    with pytest.raises(ValueError):
        check_blowup_equivalence(Graph.complete(2), 1, 2, (Fraction(1, 2), 1))


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(1, 3), 0]) == (3, 2, 0)
    assert clear_denominators([2, 4, 6]) == (1, 2, 3)
    with pytest.raises(GraphError):
        clear_denominators([Fraction(1, 1000), 2])


def test_blowup_of_multipartite_is_multipartite():
    rng = random.Random(5)
    for _ in range(20):
        sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
        G = Graph.complete_multipartite(sizes)
        mult = tuple(rng.randint(1, 3) for _ in range(G.n))
        assert complete_multipartite_decomposition(blowup(BlowupSpec(G, mult)).graph) is not None


def test_random_sigma_preservation():
    rng = random.Random(9)
    for _ in range(25):
        G = random_graph(rng, rng.randint(2, 5), 0.6)
        mult = tuple(rng.randint(0, 3) for _ in range(G.n))
        for q in (1, 2, 3):
            eq = check_blowup_equivalence(G, 1, q, mult)
            assert eq.sigma_preserved and eq.counts_match


def test_zero_weight_compares_against_deleted_base():
    # triangle with one vertex removed: sigma drops from 3 to 2 in the blowup
    eq = check_blowup_equivalence(Graph.complete(3), 1, 2, (1, 1, 0))
    assert eq.ok
    assert eq.f_blowup == CertifiedValue.exact(4)
