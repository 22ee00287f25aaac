"""Non-planarity certificates from knotted diagrams, and crossing-number
drivers that sweep a graph's labelled drawings.

The certificate machinery is one-sided: a ``NonPlanarCertificate`` proves
the underlying graph of a diagram is non-planar (given that the graph is
minimalizable, which the caller asserts), while ``None`` only means the
method saw nothing — never that the graph is planar.

A certificate for a degree-4 vertex ``v`` packages two facts:

* condition (i): the four rotation-neighbouring edge pairs at ``v`` extend
  to cycles of the underlying graph such that the two cycles of each
  opposite pair meet only in ``v``;
* condition (ii): however the crossings of the diagram are reassigned,
  splicing one of the two single-crossing tangles into ``v`` leaves an
  embedded graph that provably needs at least two crossings (typically via
  a Hopf-linked pair of cycles).

Certificates embed the diagram in text form plus every cycle and linking
number used, so ``verify_certificate`` can recheck them arithmetically,
with no search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Diagram,
    crossing_assignments,
    diagram_to_text,
    extract_sublink,
    parse_diagram,
)
from .errors import FormatError, TopologyError, WrongDegreeError
from .invariants import (
    CrTwoResult,
    Obstruction,
    component_span_lower_bound,
    cr_at_least_two,
    crossing_number,
    CrossingNumberReport,
    cycle_vertices,
    linking_numbers,
    simple_cycles,
)
from .layout import base_diagram
from .moves import Budget, descending_diagram
from .multigraph import Multigraph, Permutation, automorphisms, disjoint_union, one_point_union
from .tangle import RationalTangle, VertexOrientation, substitute

TANGLE_PLUS = RationalTangle((1,))
TANGLE_MINUS = RationalTangle((-1,))

CERTIFICATE_FORMAT = "graphknot-certificate-v1"


# -- condition (i): crossed cycle pairs at a degree-4 vertex -------------------


@dataclass(frozen=True)
class ConditionOneWitness:
    """Cycles showing the four edge ends at ``vertex`` interleave.

    ``pair_edges[s]`` is the rotation-neighbouring pair at slots
    ``(s, s+1)``; ``cycles[s]`` runs through both of its edges.  The cycles
    of the opposite pairs (0, 2) share only the vertex itself, and likewise
    for (1, 3).
    """

    vertex: int
    graph_vertex: int
    pair_edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]

    def to_json(self):
        return {
            "graph_vertex": self.graph_vertex,
            "pairs": [list(p) for p in self.pair_edges],
            "cycles": [list(c) for c in self.cycles],
        }


def condition_i(d: Diagram, vertex: int) -> ConditionOneWitness | None:
    """Search exhaustively for a condition-(i) witness at ``vertex``."""
    if d.is_crossing(vertex) or d.degree_of(vertex) != 4:
        raise WrongDegreeError("condition (i) needs a degree-4 graph vertex")
    projection = d.underlying_graph()
    g = projection.graph
    gv = projection.node_of_vertex.index(vertex)
    slot_edges = tuple(projection.edge_at_slot((vertex, s)) for s in range(4))
    pairs = tuple((slot_edges[s], slot_edges[(s + 1) % 4]) for s in range(4))
    cycles = simple_cycles(g)
    through: list[list[list[int]]] = []
    for ea, eb in pairs:
        need = {ea, eb}
        through.append([c for c in cycles if need <= set(c)])
    chosen: list[tuple[int, ...] | None] = [None] * 4
    for s in (0, 1):
        hit = None
        for c1 in through[s]:
            vs1 = cycle_vertices(g, c1)
            for c2 in through[s + 2]:
                if vs1 & cycle_vertices(g, c2) == {gv}:
                    hit = (tuple(c1), tuple(c2))
                    break
            if hit:
                break
        if hit is None:
            return None
        chosen[s], chosen[s + 2] = hit
    return ConditionOneWitness(vertex, gv, pairs, tuple(chosen))


# -- condition (ii): every reassignment stays two crossings deep ---------------


@dataclass(frozen=True)
class AssignmentRecord:
    """One crossing assignment together with the substitution certifying it.

    ``bits`` lists the over parity per crossing (crossings by node index),
    ``r`` is +1 or -1 for which single-crossing tangle replaced the vertex,
    and ``linking`` stores the signed pairwise linking numbers behind a
    linked-cycles certificate (empty for span-based ones).
    """

    bits: tuple[int, ...]
    r: int
    certificate: Obstruction
    linking: tuple[int, ...] = ()

    def to_json(self):
        return {
            "bits": list(self.bits),
            "r": self.r,
            "certificate": self.certificate.to_json(),
            "linking": list(self.linking),
        }


def _signed_linking(sub: Diagram, cert: Obstruction) -> tuple[int, ...]:
    if cert.kind != "linked-cycles":
        return ()
    extracted = extract_sublink(sub.underlying_graph(), [list(c) for c in cert.cycles])
    lk = linking_numbers(extracted)
    return tuple(lk[key] for key in sorted(lk))


def _substitution_budget(sub: Diagram, budget: Budget | None) -> Budget:
    if budget is not None:
        return budget
    return Budget(max_crossings=sub.crossing_count + 2, max_states=4_000)


def condition_ii(
    d: Diagram,
    where: VertexOrientation,
    budget: Budget | None = None,
    allow_cap_relative: bool = False,
    max_assignment_crossings: int = 16,
) -> tuple[AssignmentRecord, ...] | None:
    """Certify cr >= 2 for a substitution of every crossing assignment.

    For each of the ``2^c`` reassignments ``D'`` of the diagram's crossings,
    try replacing ``where`` with the +1 tangle and then the -1 tangle; keep
    the first whose result is certified to need at least two crossings.
    Returns ``None`` as soon as some assignment certifies neither way.

    Cap-relative search certificates are excluded unless asked for, so by
    default every record rests on an assignment-independent obstruction
    (linked cycles or a sublink span) and the outcome is sound uncondition-
    ally.
    """
    records: list[AssignmentRecord] = []
    for assigned in crossing_assignments(d, max_assignment_crossings):
        bits = tuple(assigned.nodes[n].over for n in assigned.crossings())
        hit = None
        for r, tangle in ((1, TANGLE_PLUS), (-1, TANGLE_MINUS)):
            sub = substitute(assigned, where, tangle)
            res = cr_at_least_two(
                sub, _substitution_budget(sub, budget), search=allow_cap_relative
            )
            if not res.holds or res.certificate is None:
                continue
            if res.certificate.kind == "exhausted-search" and not allow_cap_relative:
                continue
            hit = AssignmentRecord(
                bits, r, res.certificate, _signed_linking(sub, res.certificate)
            )
            break
        if hit is None:
            return None
        records.append(hit)
    return tuple(records)


# -- the certificate ------------------------------------------------------------


@dataclass(frozen=True)
class NonPlanarCertificate:
    diagram_text: str
    orientation: VertexOrientation
    witness: ConditionOneWitness
    per_assignment: tuple[AssignmentRecord, ...]
    minimalizability: str = "asserted by caller"

    def to_json(self):
        return {
            "format": CERTIFICATE_FORMAT,
            "diagram": self.diagram_text,
            "vertex": self.orientation.vertex,
            "a_slot": self.orientation.a_slot,
            "minimalizability": self.minimalizability,
            "condition_i": self.witness.to_json(),
            "assignments": [rec.to_json() for rec in self.per_assignment],
        }


def certificate_from_json(data: dict) -> NonPlanarCertificate:
    if data.get("format") != CERTIFICATE_FORMAT:
        raise FormatError("not a recognized certificate payload")
    try:
        wit = data["condition_i"]
        witness = ConditionOneWitness(
            vertex=int(data["vertex"]),
            graph_vertex=int(wit["graph_vertex"]),
            pair_edges=tuple((int(a), int(b)) for a, b in wit["pairs"]),
            cycles=tuple(tuple(int(e) for e in c) for c in wit["cycles"]),
        )
        records = tuple(
            AssignmentRecord(
                bits=tuple(int(b) for b in rec["bits"]),
                r=int(rec["r"]),
                certificate=Obstruction(
                    kind=rec["certificate"]["kind"],
                    bound=int(rec["certificate"]["bound"]),
                    cycles=tuple(
                        tuple(int(e) for e in c) for c in rec["certificate"]["cycles"]
                    ),
                    value=int(rec["certificate"]["value"]),
                ),
                linking=tuple(int(x) for x in rec["linking"]),
            )
            for rec in data["assignments"]
        )
        return NonPlanarCertificate(
            diagram_text=data["diagram"],
            orientation=VertexOrientation(int(data["vertex"]), int(data["a_slot"])),
            witness=witness,
            per_assignment=records,
            minimalizability=data.get("minimalizability", "asserted by caller"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from exc


def check_nonplanar(
    d: Diagram,
    where: VertexOrientation,
    budget: Budget | None = None,
    allow_cap_relative: bool = False,
    minimalizability: str = "asserted by caller",
) -> NonPlanarCertificate | None:
    """Run both conditions at ``where`` and assemble a certificate.

    The caller is responsible for the hypothesis that the underlying graph
    is minimalizable; whatever grounds they have are recorded verbatim.
    ``None`` is always inconclusive, never a planarity claim.
    """
    witness = condition_i(d, where.vertex)
    if witness is None:
        return None
    records = condition_ii(d, where, budget, allow_cap_relative)
    if records is None:
        return None
    return NonPlanarCertificate(
        diagram_text=diagram_to_text(d),
        orientation=where,
        witness=witness,
        per_assignment=records,
        minimalizability=minimalizability,
    )


# -- replaying a certificate -----------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    notes: tuple[str, ...]

    def to_json(self):
        return {"ok": self.ok, "notes": list(self.notes)}


def _is_simple_cycle(g: Multigraph, cycle: tuple[int, ...]) -> bool:
    if not cycle or len(set(cycle)) != len(cycle):
        return False
    degree: dict[int, int] = {}
    for e in cycle:
        u, v = g.endpoints(e)
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if any(c != 2 for c in degree.values()):
        return False
    # connectivity of the cycle edges as their own little graph
    verts = sorted(degree)
    index = {v: i for i, v in enumerate(verts)}
    sub = Multigraph(
        len(verts), tuple((index[u], index[v]) for u, v in map(g.endpoints, cycle))
    )
    return sub.is_connected()


def _replay_assignment(
    d: Diagram, where: VertexOrientation, rec: AssignmentRecord
) -> str | None:
    """Recheck one assignment record; a message on failure, None when good."""
    xs = d.crossings()
    if len(rec.bits) != len(xs):
        return "assignment bit count does not match the diagram"
    assigned = d
    for j, n in enumerate(xs):
        assigned = assigned.with_over(n, rec.bits[j])
    if rec.r not in (1, -1):
        return f"r must be +1 or -1, got {rec.r}"
    sub = substitute(assigned, where, TANGLE_PLUS if rec.r == 1 else TANGLE_MINUS)
    cert = rec.certificate
    if cert.bound < 2:
        return "certificate bound is below two"
    projection = sub.underlying_graph()
    g = projection.graph
    for c in cert.cycles:
        if not _is_simple_cycle(g, c):
            return f"certificate cycle {list(c)} is not a simple cycle"
    if cert.kind == "linked-cycles":
        if len(cert.cycles) != 2:
            return "linked-cycles certificate needs exactly two cycles"
        v1 = cycle_vertices(g, list(cert.cycles[0]))
        v2 = cycle_vertices(g, list(cert.cycles[1]))
        if v1 & v2:
            return "linked cycles are not vertex-disjoint"
        try:
            extracted = extract_sublink(projection, [list(c) for c in cert.cycles])
        except (FormatError, TopologyError) as exc:
            return f"cycles do not extract to a sublink: {exc}"
        lk = linking_numbers(extracted)
        signed = tuple(lk[key] for key in sorted(lk))
        if signed != rec.linking:
            return (
                f"stored linking numbers {list(rec.linking)} disagree with "
                f"recomputed {list(signed)}"
            )
        total = sum(abs(x) for x in signed)
        if total != cert.value or 2 * total != cert.bound:
            return "linking numbers do not support the stored bound"
        return None
    if cert.kind == "sublink-span":
        try:
            extracted = extract_sublink(projection, [list(c) for c in cert.cycles])
        except (FormatError, TopologyError) as exc:
            return f"cycles do not extract to a sublink: {exc}"
        bound = component_span_lower_bound(extracted)
        if bound != cert.bound:
            return f"recomputed span bound {bound} != stored {cert.bound}"
        return None
    return f"certificate kind {cert.kind!r} cannot be replayed without a search"


def verify_certificate(cert: NonPlanarCertificate | dict) -> VerifyReport:
    """Recheck a certificate arithmetically, with no search.

    Every cycle is revalidated against the embedded diagram, the opposite-
    pair disjointness is rechecked, the assignments are checked to cover
    all of ``{0,1}^c``, and each linking number or span is recomputed from
    scratch and compared with the stored value.
    """
    if isinstance(cert, dict):
        try:
            cert = certificate_from_json(cert)
        except FormatError as exc:
            return VerifyReport(False, (str(exc),))
    notes: list[str] = []
    try:
        d = parse_diagram(cert.diagram_text)
    except FormatError as exc:
        return VerifyReport(False, (f"embedded diagram does not parse: {exc}",))
    v = cert.orientation.vertex
    if v >= len(d.nodes) or d.is_crossing(v) or d.degree_of(v) != 4:
        return VerifyReport(False, ("vertex is not a degree-4 graph vertex",))
    if not (0 <= cert.orientation.a_slot < 4):
        return VerifyReport(False, ("slot for corner a must be 0..3",))

    projection = d.underlying_graph()
    g = projection.graph
    gv = projection.node_of_vertex.index(v)
    if cert.witness.graph_vertex != gv:
        return VerifyReport(False, ("witness names the wrong graph vertex",))
    slot_edges = tuple(projection.edge_at_slot((v, s)) for s in range(4))
    pairs = tuple((slot_edges[s], slot_edges[(s + 1) % 4]) for s in range(4))
    if cert.witness.pair_edges != pairs:
        return VerifyReport(False, ("witness pairs disagree with the rotation at v",))
    for s in range(4):
        cyc = cert.witness.cycles[s]
        if not _is_simple_cycle(g, cyc):
            return VerifyReport(False, (f"witness cycle {s} is not a simple cycle",))
        if not set(pairs[s]) <= set(cyc):
            return VerifyReport(False, (f"witness cycle {s} misses its edge pair",))
    for s in (0, 1):
        met = cycle_vertices(g, list(cert.witness.cycles[s])) & cycle_vertices(
            g, list(cert.witness.cycles[s + 2])
        )
        if met != {gv}:
            return VerifyReport(
                False, (f"opposite cycles {s} and {s + 2} meet outside v: {met}",)
            )
    notes.append("condition (i) witness rechecked")

    c = d.crossing_count
    expected = sorted(
        tuple((word >> j) & 1 for j in range(c)) for word in range(1 << c)
    )
    got = sorted(rec.bits for rec in cert.per_assignment)
    if got != expected:
        return VerifyReport(False, ("assignments do not cover every reassignment",))
    for rec in cert.per_assignment:
        problem = _replay_assignment(d, cert.orientation, rec)
        if problem is not None:
            return VerifyReport(
                False, (f"assignment {list(rec.bits)} (r={rec.r:+d}): {problem}",)
            )
    notes.append(
        f"all {len(cert.per_assignment)} assignments replayed with sound bounds"
    )
    return VerifyReport(True, tuple(notes))


# -- the enumeration driver for graph crossing numbers ---------------------------


@dataclass(frozen=True)
class Section3Subproblem:
    rewiring: tuple[int, ...]
    assignment: tuple[int, ...]
    report: CrossingNumberReport

    def to_json(self):
        return {
            "rewiring": list(self.rewiring),
            "assignment": list(self.assignment),
            "report": self.report.to_json(),
        }


@dataclass(frozen=True)
class Section3Report:
    value: int | None
    closed: bool
    base_texts: tuple[str, ...]
    subproblems: tuple[Section3Subproblem, ...]
    notes: tuple[str, ...]

    def to_json(self):
        return {
            "value": self.value,
            "closed": self.closed,
            "bases": list(self.base_texts),
            "subproblems": [s.to_json() for s in self.subproblems],
            "notes": list(self.notes),
        }


def section3_crossing_number(
    g: Multigraph,
    budget: Budget | None = None,
    edge_order: list[int] | None = None,
    max_assignment_crossings: int = 16,
) -> Section3Report:
    """Minimum crossing number over rewirings and crossing assignments.

    A base drawing is laid out greedily and layered descendingly; each graph
    automorphism rewires it by permuting the vertex labels before routing;
    every crossing assignment of each distinct rewired base is then driven
    through the bounded exact crossing-number search.  The reported value is
    the minimum, and it is withheld (``None``) if any subproblem's bounds
    fail to close.
    """
    auts = automorphisms(g)
    rewired: dict[Multigraph, Permutation] = {}
    for p in sorted(auts.elements, key=lambda p: p.image):
        rewired.setdefault(g.relabel(p), p)
    notes = [
        f"{auts.order} automorphisms gave {len(rewired)} distinct rewirings"
    ]
    base_texts: list[str] = []
    subproblems: list[Section3Subproblem] = []
    best: int | None = None
    closed = True
    for h, p in rewired.items():
        layered = descending_diagram(
            base_diagram(h, edge_order=edge_order).underlying_graph(),
            edge_order,
        )
        base_texts.append(diagram_to_text(layered))
        for assigned in crossing_assignments(layered, max_assignment_crossings):
            bits = tuple(assigned.nodes[n].over for n in assigned.crossings())
            sub_budget = budget or Budget(
                max_crossings=assigned.crossing_count + 1, max_states=200_000
            )
            report = crossing_number(assigned, sub_budget)
            subproblems.append(Section3Subproblem(p.image, bits, report))
            if not report.conclusive:
                closed = False
            else:
                if report.cap_relative:
                    notes.append(
                        f"assignment {list(bits)} closed only relative to the "
                        f"{report.crossing_cap}-crossing cap"
                    )
                if best is None or report.value < best:
                    best = report.value
    return Section3Report(
        value=best if closed else None,
        closed=closed,
        base_texts=tuple(base_texts),
        subproblems=tuple(subproblems),
        notes=tuple(notes),
    )


# -- additivity of crossing numbers under unions ---------------------------------


@dataclass(frozen=True)
class AdditivityReport:
    kind: str
    left: Section3Report
    right: Section3Report
    combined: Section3Report
    holds: bool | None

    def to_json(self):
        return {
            "kind": self.kind,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "combined": self.combined.to_json(),
            "holds": self.holds,
        }


def additivity_check(
    g1: Multigraph,
    g2: Multigraph,
    kind: str,
    budget: Budget | None = None,
) -> AdditivityReport:
    """Compare cr(g1) + cr(g2) against the union's crossing number.

    ``kind`` is ``"disjoint"`` or ``"one-point"`` (gluing vertex 0 to
    vertex 0).  The union's base drawing routes all of ``g1``'s edges
    before ``g2``'s, so the layered start has every left-graph arc passing
    over every right-graph arc.
    """
    if kind == "disjoint":
        combined = disjoint_union(g1, g2)
    elif kind == "one-point":
        combined = one_point_union(g1, 0, g2, 0)
    else:
        raise FormatError("union kind must be 'disjoint' or 'one-point'")
    n1 = g1.vertex_count
    left_edges = [
        i for i, (u, v) in enumerate(combined.edges) if u < n1 and v < n1
    ]
    right_edges = [
        i for i, (u, v) in enumerate(combined.edges) if not (u < n1 and v < n1)
    ]
    order = left_edges + right_edges
    left = section3_crossing_number(g1, budget)
    right = section3_crossing_number(g2, budget)
    both = section3_crossing_number(combined, budget, edge_order=order)
    if left.value is None or right.value is None or both.value is None:
        holds = None
    else:
        holds = both.value == left.value + right.value
    return AdditivityReport(kind, left, right, both, holds)
