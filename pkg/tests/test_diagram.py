"""Diagrams as combinatorial maps: faces, canonical codes, serialization."""

import pytest

from graphknot import (
    Crossing,
    Diagram,
    FormatError,
    TopologyError,
    Vertex,
    complete_graph,
    crossing_assignments,
    diagram_from_json,
    diagram_to_json,
    diagram_to_text,
    extract_sublink,
    mirror_diagram,
    parse_diagram,
)
from graphknot.gallery import (
    figure_eight,
    hopf_link,
    k4_diagram,
    k5_diagram,
    linked_triangles,
    trefoil,
    unknot,
    unlink,
    wheel4,
)
from graphknot.layout import base_diagram


SAMPLES = [
    unknot(),
    unlink(3),
    hopf_link(),
    trefoil(),
    figure_eight(),
    k4_diagram(),
    k5_diagram(),
    linked_triangles(),
]


def test_unknot_is_one_free_loop():
    d = unknot()
    assert d.crossing_count == 0
    assert d.free_loops == 1
    assert not d.nodes


def test_euler_count_on_the_trefoil():
    d = trefoil()
    vertices = len(d.nodes)
    edges = len(d.arcs)
    faces = len(d.faces())
    assert (vertices, edges, faces) == (3, 6, 5)
    assert vertices - edges + faces == 2


def test_faces_partition_the_darts():
    for d in SAMPLES:
        seen = [dart for face in d.faces() for dart in face]
        assert sorted(seen) == sorted(d.darts())


def test_phi_is_a_permutation():
    d = figure_eight()
    images = {d.phi(dart) for dart in d.darts()}
    assert images == set(d.darts())


def test_rejects_bad_incidence():
    # dart (0, 1) used twice
    with pytest.raises((FormatError, TopologyError)):
        Diagram([Crossing(0)], [((0, 0), (0, 1)), ((0, 1), (0, 2))])
    # odd dart left unpaired
    with pytest.raises((FormatError, TopologyError)):
        Diagram([Vertex("a", 2)], [((0, 0), (0, 0))])


def test_canonical_form_is_idempotent():
    for d in SAMPLES:
        c = d.canonical_form()
        assert c.canonical_code() == d.canonical_code()
        assert c.canonical_form().canonical_code() == c.canonical_code()


def test_canonical_code_ignores_arc_listing_order():
    d = trefoil()
    shuffled = Diagram(d.nodes, list(reversed(d.arcs)), d.free_loops)
    assert shuffled.canonical_code() == d.canonical_code()


def test_canonical_code_ignores_node_listing_order():
    d = hopf_link()
    # swap the two crossings and renumber the arc ends accordingly
    swap = {0: 1, 1: 0}
    arcs = [
        ((swap[a[0]], a[1]), (swap[b[0]], b[1])) for a, b in d.arcs
    ]
    relisted = Diagram([d.nodes[1], d.nodes[0]], arcs, d.free_loops)
    assert relisted.canonical_code() == d.canonical_code()


def test_double_mirror_restores_the_code():
    for d in SAMPLES:
        assert (
            mirror_diagram(mirror_diagram(d)).canonical_code()
            == d.canonical_code()
        )


def test_mirror_swaps_over_bits():
    d = trefoil()
    m = mirror_diagram(d)
    assert m.canonical_code() != d.canonical_code()
    for n in d.crossings():
        assert m.nodes[n].over != d.nodes[n].over


def test_text_round_trip():
    for d in SAMPLES:
        assert parse_diagram(diagram_to_text(d)).canonical_code() == d.canonical_code()


def test_json_round_trip():
    for d in SAMPLES:
        back = diagram_from_json(diagram_to_json(d))
        assert back.nodes == d.nodes
        assert back.arcs == d.arcs
        assert back.free_loops == d.free_loops


def test_parse_errors():
    with pytest.raises(FormatError):
        parse_diagram("crossing 02")  # no header
    with pytest.raises(FormatError):
        parse_diagram("diagram\ncrossing 7\n")
    with pytest.raises(FormatError):
        parse_diagram("diagram\narc 0.0\n")
    with pytest.raises(FormatError):
        parse_diagram("diagram\nvertex a\n")


def test_underlying_graph_of_k5_routing():
    d = k5_diagram()
    g = d.underlying_graph().graph
    assert g == complete_graph(5)


def test_components_split_and_merge():
    d = unlink(3)
    assert d.free_loops == 3
    assert len(linked_triangles().components()) == 1  # crossings join the strands
    lt_graph = linked_triangles().underlying_graph().graph
    assert len(lt_graph.components()) == 2  # but the graph stays split


def test_split_components_of_a_union():
    from graphknot import disjoint_union_diagrams

    d = disjoint_union_diagrams(hopf_link(), trefoil())
    parts = d.split_components()
    assert sorted(p.crossing_count for p in parts) == [2, 3]


def test_crossing_assignments_enumerate_all_bit_patterns():
    d = hopf_link()
    seen = set()
    for assigned in crossing_assignments(d):
        seen.add(tuple(assigned.nodes[n].over for n in assigned.crossings()))
    assert seen == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_extract_sublink_from_linked_triangles():
    d = linked_triangles()
    g = d.underlying_graph().graph
    cycles = [
        sorted(e for e in range(g.edge_count) if set(g.endpoints(e)) <= comp)
        for comp in g.components()
    ]
    sub = extract_sublink(d.underlying_graph(), tuple(tuple(c) for c in cycles))
    assert not sub.vertices()
    assert sub.crossing_count == 2


def test_base_diagram_places_vertices_in_graph_order():
    d = base_diagram(complete_graph(4), labels=list("wxyz"))
    labels = [d.nodes[n].label for n in d.vertices()]
    assert labels == list("wxyz")
    assert d.crossing_count == 0
