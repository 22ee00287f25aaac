"""The non-planarity certificate machinery and the crossing-number driver."""

import json

import pytest

from graphknot import (
    Budget,
    Multigraph,
    VertexOrientation,
    WrongDegreeError,
    additivity_check,
    certificate_from_json,
    check_nonplanar,
    complete_graph,
    cycle_graph,
    section3_crossing_number,
    verify_certificate,
)
from graphknot.criterion import condition_i, condition_ii
from graphknot.gallery import (
    bowtie,
    k5_diagram,
    subdivided_k5,
    two_squares,
    wheel4,
)
from graphknot.layout import base_diagram


def degree_four_vertices(d):
    return [n for n in d.vertices() if d.nodes[n].degree == 4]


# -- condition (i): four cycle pairs through the vertex --------------------------


def test_condition_i_holds_at_every_k5_vertex():
    d = k5_diagram()
    for v in degree_four_vertices(d):
        w = condition_i(d, v)
        assert w is not None
        assert len(w.pair_edges) == 4 and len(w.cycles) == 4
        # each chosen cycle really contains its slot pair
        for (e1, e2), cycle in zip(w.pair_edges, w.cycles):
            assert e1 in cycle and e2 in cycle


def test_condition_i_fails_on_cut_vertices():
    # no cycle crosses from one lobe to the other
    for g in (bowtie(), two_squares()):
        d = base_diagram(g)
        v = next(n for n in degree_four_vertices(d))
        assert condition_i(d, v) is None


def test_condition_i_holds_at_the_wheel_hub():
    d = base_diagram(wheel4())
    hub = degree_four_vertices(d)[0]
    assert condition_i(d, hub) is not None


def test_condition_i_needs_degree_four():
    d = base_diagram(cycle_graph(3))
    with pytest.raises(WrongDegreeError):
        condition_i(d, d.vertices()[0])


# -- condition (ii) and full certificates ------------------------------------------


def test_condition_ii_certifies_every_k5_assignment():
    d = k5_diagram()
    v = degree_four_vertices(d)[0]
    records = condition_ii(d, VertexOrientation(v, 0))
    assert records is not None
    assert len(records) == 2  # one crossing, two assignments
    for rec in records:
        assert rec.r in (1, -1)
        assert rec.certificate.bound >= 2
        assert rec.certificate.kind == "linked-cycles"
        assert any(abs(lk) == 1 for lk in rec.linking)


def test_condition_ii_gives_up_on_the_planar_wheel():
    d = base_diagram(wheel4())
    hub = degree_four_vertices(d)[0]
    assert condition_ii(d, VertexOrientation(hub, 0)) is None


def test_check_nonplanar_certifies_k5_at_every_vertex():
    d = k5_diagram()
    for v in degree_four_vertices(d):
        cert = check_nonplanar(d, VertexOrientation(v, 0))
        assert cert is not None
        assert verify_certificate(cert).ok


def test_check_nonplanar_is_silent_on_planar_graphs():
    for g in (wheel4(), bowtie(), two_squares()):
        d = base_diagram(g)
        for v in degree_four_vertices(d):
            for slot in range(4):
                assert check_nonplanar(d, VertexOrientation(v, slot)) is None


def test_certificate_found_inside_a_bigger_graph():
    # a certificate at any vertex condemns the whole graph, so a non-planar
    # subgraph shows up even with extra material attached
    d = base_diagram(subdivided_k5())
    hits = [
        v
        for v in degree_four_vertices(d)
        if check_nonplanar(d, VertexOrientation(v, 0)) is not None
    ]
    assert hits


def test_certificate_round_trips_through_json():
    d = k5_diagram()
    v = degree_four_vertices(d)[0]
    cert = check_nonplanar(d, VertexOrientation(v, 0))
    data = json.loads(json.dumps(cert.to_json()))
    back = certificate_from_json(data)
    report = verify_certificate(back)
    assert report.ok, report.notes


def tampered(cert, mutate):
    data = cert.to_json()
    mutate(data)
    return certificate_from_json(data)


def test_verifier_rejects_tampering():
    d = k5_diagram()
    cert = check_nonplanar(d, VertexOrientation(degree_four_vertices(d)[0], 0))

    def flip_linking(data):
        rec = data["assignments"][0]
        rec["linking"] = [-lk for lk in rec["linking"]]

    def drop_assignment(data):
        del data["assignments"][0]

    def fake_cycle(data):
        data["condition_i"]["cycles"][0] = data["condition_i"]["cycles"][1]

    def lower_bound(data):
        data["assignments"][0]["certificate"]["bound"] = 1

    for mutate in (flip_linking, drop_assignment, fake_cycle, lower_bound):
        report = verify_certificate(tampered(cert, mutate))
        assert not report.ok


def test_verifier_rejects_search_only_evidence():
    d = k5_diagram()
    cert = check_nonplanar(d, VertexOrientation(degree_four_vertices(d)[0], 0))

    def fake_search_kind(data):
        rec = data["assignments"][0]["certificate"]
        rec["kind"] = "exhausted-search"

    report = verify_certificate(tampered(cert, fake_search_kind))
    assert not report.ok


# -- the crossing-number driver -----------------------------------------------------


def test_driver_on_k4():
    report = section3_crossing_number(complete_graph(4))
    assert report.value == 0 and report.closed


def test_driver_on_k5():
    report = section3_crossing_number(complete_graph(5))
    assert report.value == 1 and report.closed
    # the lower bound is certified, not just searched out
    ones = [s for s in report.subproblems if s.report.value == 1]
    assert ones
    for s in ones:
        assert any(o.kind == "nonplanar-graph" for o in s.report.obstructions)


def test_driver_never_goes_below_the_planarity_bound():
    report = section3_crossing_number(complete_graph(5))
    assert report.value >= 1


def test_additivity_of_triangles():
    report = additivity_check(cycle_graph(3), cycle_graph(3), "disjoint")
    assert report.holds is True
    assert report.combined.value == 0


def test_additivity_rejects_unknown_kind():
    with pytest.raises(Exception):
        additivity_check(cycle_graph(3), cycle_graph(3), "smashed")
