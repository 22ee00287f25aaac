"""Multigraphs, automorphisms, and the symmetric-product decomposition."""

import pytest

from graphknot import (
    FormatError,
    InvalidVertexError,
    Minimalizability,
    Multigraph,
    Permutation,
    automorphisms,
    brute_force_automorphisms,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    graph_to_text,
    minimalizability,
    one_point_union,
    parse_graph,
    path_graph,
    symmetric_product_orbits,
)
from graphknot.multigraph import are_isomorphic


# group orders worked out by hand: Aut(K_n) = S_n, Aut(K_{m,m}) doubles the
# side swap, a path only reverses, a cycle is dihedral
AUT_ORDERS = [
    (complete_graph(5), 120),
    (complete_graph(4), 24),
    (complete_bipartite(3, 3), 72),
    (complete_bipartite(2, 3), 12),
    (path_graph(3), 2),
    (path_graph(4), 2),
    (cycle_graph(4), 8),
    (cycle_graph(5), 10),
    (Multigraph(1, []), 1),
    (Multigraph(2, [(0, 1), (0, 1)]), 2),
]


@pytest.mark.parametrize("g,order", AUT_ORDERS)
def test_automorphism_orders(g, order):
    assert automorphisms(g).order == order


@pytest.mark.parametrize("g,order", AUT_ORDERS)
def test_backtracking_agrees_with_brute_force(g, order):
    fast = automorphisms(g)
    slow = brute_force_automorphisms(g)
    assert fast.order == slow.order == order
    assert set(fast.elements) == set(slow.elements)


def test_automorphisms_fix_the_graph():
    g = one_point_union(cycle_graph(3), 0, cycle_graph(3), 0)
    for p in automorphisms(g).elements:
        assert g.relabel(p) == g


def test_orbits_of_the_bowtie():
    g = one_point_union(cycle_graph(3), 0, cycle_graph(3), 0)
    aut = automorphisms(g)
    assert aut.order == 8
    sizes = sorted(len(o) for o in aut.orbits())
    assert sizes == [1, 4]  # cut vertex alone, outer vertices together


def test_symmetric_product_cases():
    # K5: one block of five, 5! = 120 = |Aut|
    blocks = symmetric_product_orbits(automorphisms(complete_graph(5)))
    assert blocks is not None and sorted(len(b) for b in blocks) == [5]
    # C4: dihedral of order 8 is a proper subgroup of S4
    assert symmetric_product_orbits(automorphisms(cycle_graph(4))) is None
    # star: center fixed, leaves fully symmetric
    star = Multigraph(5, [(0, i) for i in range(1, 5)])
    blocks = symmetric_product_orbits(automorphisms(star))
    assert blocks is not None and sorted(len(b) for b in blocks) == [1, 4]


@pytest.mark.parametrize(
    "g,verdict",
    [
        (complete_graph(5), Minimalizability.SYMMETRIC_PRODUCT),
        (path_graph(3), Minimalizability.SYMMETRIC_PRODUCT),
        (Multigraph(3, [(0, 1), (1, 2)]), Minimalizability.SYMMETRIC_PRODUCT),
        (cycle_graph(4), Minimalizability.UNKNOWN),
        (path_graph(4), Minimalizability.UNKNOWN),
        # a loop pins down every vertex: degrees 3, 2, 1 are all distinct
        (Multigraph(3, [(0, 0), (0, 1), (1, 2)]), Minimalizability.TRIVIAL),
    ],
)
def test_minimalizability_verdicts(g, verdict):
    assert minimalizability(g)[0] is verdict


def test_planarity():
    assert complete_graph(4).is_planar()
    assert not complete_graph(5).is_planar()
    assert not complete_bipartite(3, 3).is_planar()
    assert disjoint_union(complete_graph(4), cycle_graph(5)).is_planar()


def test_components_and_connectivity():
    g = disjoint_union(cycle_graph(3), path_graph(2))
    assert not g.is_connected()
    assert sorted(len(c) for c in g.components()) == [2, 3]
    assert complete_graph(3).is_connected()
    # isolated vertices count as their own components
    assert len(Multigraph(3, [(0, 1)]).components()) == 2


def test_multiplicity_and_loops():
    g = Multigraph(2, [(0, 1), (0, 1), (1, 1)])
    assert g.multiplicity(0, 1) == 2
    assert g.is_loop(2)
    assert g.degree(1) == 4  # loop counts twice
    assert g.degree(0) == 2


def test_one_point_union_degrees():
    g = one_point_union(cycle_graph(3), 0, cycle_graph(4), 0)
    assert g.vertex_count == 6
    assert sorted(g.degrees()) == [2, 2, 2, 2, 2, 4]


def test_text_round_trip():
    for g, _ in AUT_ORDERS:
        assert parse_graph(graph_to_text(g)) == g


def test_parse_rejects_malformed():
    with pytest.raises(FormatError):
        parse_graph("edge 0 1")  # missing header
    with pytest.raises(InvalidVertexError):
        parse_graph("graph 2\nedge 0 5")  # vertex out of range
    with pytest.raises(FormatError):
        parse_graph("graph two\n")


def test_permutation_algebra():
    p = Permutation((1, 2, 0))
    q = Permutation((0, 2, 1))
    assert p.compose(p.inverse()).is_identity()
    assert p.compose(q)(0) == p(q(0))
    assert Permutation.identity(3).is_identity()


def test_isomorphism_examples():
    assert are_isomorphic(cycle_graph(3), complete_graph(3))
    assert not are_isomorphic(cycle_graph(4), path_graph(4))
    relabeled = complete_bipartite(2, 3).relabel(Permutation((4, 2, 0, 3, 1)))
    assert are_isomorphic(relabeled, complete_bipartite(2, 3))
