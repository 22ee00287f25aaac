"""Property-based invariants: algebra laws, round trips, move reversibility."""

from hypothesis import assume, given, settings, strategies as st

from graphknot import (
    LaurentPoly,
    Multigraph,
    RationalTangle,
    apply_move,
    diagram_from_json,
    diagram_to_json,
    diagram_to_text,
    enumerate_moves,
    graph_to_text,
    kauffman_bracket,
    parse_diagram,
    parse_graph,
)
from graphknot.diagram import Diagram
from graphknot.layout import base_diagram
from graphknot.tangle import normalize_fraction, tangle_from_fraction


# -- strategies -------------------------------------------------------------------


laurent_polys = st.dictionaries(
    st.integers(-6, 6), st.integers(-9, 9), max_size=5
).map(LaurentPoly)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.integers(0, 6))
    edges = tuple(
        (draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for _ in range(m)
    )
    return Multigraph(n, edges)


@st.composite
def link_diagrams(draw):
    word = tuple(draw(st.lists(st.integers(-3, 3), max_size=4)))
    d = RationalTangle(word).closure_n()
    for _ in range(draw(st.integers(0, 2))):
        sites = enumerate_moves(d, ("R1_add", "R2_add"))
        if not sites:
            break
        d = apply_move(d, sites[draw(st.integers(0, len(sites) - 1))])
    return d


@st.composite
def graph_diagrams(draw):
    return base_diagram(draw(multigraphs()))


# -- Laurent polynomial ring laws ------------------------------------------------


@given(laurent_polys, laurent_polys, laurent_polys)
def test_laurent_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPoly.zero() == a
    assert a * LaurentPoly.one() == a
    assert a - a == LaurentPoly.zero()


@given(laurent_polys, st.integers(-5, 5))
def test_laurent_shift_is_monomial_multiplication(a, e):
    assert a.shifted(e) == a * LaurentPoly.monomial(1, e)


@given(laurent_polys, laurent_polys)
def test_span_is_additive_for_products(a, b):
    if a and b:
        assert (a * b).span == a.span + b.span


# -- fractions ---------------------------------------------------------------------


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_normalize_fraction_is_idempotent(p, q):
    assume(p or q)
    f = normalize_fraction(p, q)
    assert normalize_fraction(*f) == f


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_normal_form_realizes_the_fraction(p, q):
    assume(p or q)
    f = normalize_fraction(p, q)
    t = tangle_from_fraction(f)
    assert t.fraction() == f
    assert t.normal_form() == t


@given(st.lists(st.integers(-4, 4), max_size=5))
def test_fraction_survives_normalization(word):
    t = RationalTangle(tuple(word))
    assert t.normal_form().fraction() == t.fraction()


@given(st.lists(st.integers(-4, 4), max_size=5))
def test_mirror_is_an_involution(word):
    t = RationalTangle(tuple(word))
    assert t.mirror().mirror() == t
    p, q = t.fraction()
    assert t.mirror().fraction() == normalize_fraction(-p, q)


# -- serialization round trips --------------------------------------------------


@given(multigraphs())
def test_graph_text_round_trip(g):
    assert parse_graph(graph_to_text(g)) == g


@given(st.one_of(link_diagrams(), graph_diagrams()))
@settings(deadline=None)
def test_diagram_text_round_trip(d):
    assert parse_diagram(diagram_to_text(d)).canonical_code() == d.canonical_code()


@given(st.one_of(link_diagrams(), graph_diagrams()))
@settings(deadline=None)
def test_diagram_json_round_trip(d):
    back = diagram_from_json(diagram_to_json(d))
    assert back.nodes == d.nodes and back.arcs == d.arcs


# -- canonical codes ----------------------------------------------------------------


@given(st.one_of(link_diagrams(), graph_diagrams()), st.randoms())
@settings(deadline=None)
def test_canonical_code_ignores_arc_order(d, rng):
    arcs = list(d.arcs)
    rng.shuffle(arcs)
    shuffled = Diagram(d.nodes, arcs, d.free_loops)
    assert shuffled.canonical_code() == d.canonical_code()


@given(st.one_of(link_diagrams(), graph_diagrams()))
@settings(deadline=None)
def test_canonical_form_is_idempotent(d):
    c = d.canonical_form()
    assert c.canonical_code() == d.canonical_code()
    assert c.canonical_form().canonical_code() == c.canonical_code()


# -- moves --------------------------------------------------------------------------


GROW_TO_SHRINK = {
    "R1_add": "R1_remove",
    "R2_add": "R2_remove",
    "R5_twist": "R5_untwist",
}


@given(st.one_of(link_diagrams(), graph_diagrams()), st.integers(0, 10_000))
@settings(deadline=None)
def test_growing_moves_can_be_undone(d, pick):
    sites = enumerate_moves(d, tuple(GROW_TO_SHRINK))
    if not sites:
        return
    site = sites[pick % len(sites)]
    grown = apply_move(d, site)
    shrunk = {
        apply_move(grown, back).canonical_code()
        for back in enumerate_moves(grown, (GROW_TO_SHRINK[site.kind],))
    }
    assert d.canonical_code() in shrunk


@given(link_diagrams(), st.integers(0, 10_000))
@settings(deadline=None, max_examples=40)
def test_bracket_survives_second_and_third_moves(d, pick):
    if d.crossing_count > 8:
        return
    sites = enumerate_moves(d, ("R2_add", "R2_remove", "R3"))
    if not sites:
        return
    site = sites[pick % len(sites)]
    assert kauffman_bracket(apply_move(d, site)) == kauffman_bracket(d)
