"""Local moves on diagrams and breadth-first searches over them.

The move set: kink insertion/removal (R1), pokes (R2), triangle slides (R3),
twisting a pair of rotation-adjacent edges at a graph vertex into a crossing
and back (R5), and crossing changes.  Every move is a rewrite of the rotation
system; the ``Diagram`` constructor re-checks the sphere condition after each
one, so a bad site cannot silently corrupt a search.

``shadow=True`` runs the same machinery on shadows: over/under data is
ignored (normalized to 0), conditions that only exist to protect over/under
consistency are waived, and crossing changes are dropped.  Two diagrams are
equivalent modulo crossing changes exactly when their shadows are move
equivalent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import Crossing, Dart, Diagram, GraphProjection, splice_out
from .errors import MoveNotApplicable

MOVE_KINDS = (
    "R1_remove",
    "R2_remove",
    "R5_untwist",
    "R3",
    "CrossingChange",
    "R1_add",
    "R2_add",
    "R5_twist",
)

# Crossing changes alter the object, not just the picture, so searches that
# decide equivalence or count minimal crossings must not take them by
# default.  Equivalence *up to* crossing changes is the shadow search.
ISOTOPY_KINDS = tuple(k for k in MOVE_KINDS if k != "CrossingChange")

_THROUGH = ((0, 2), (1, 3))


@dataclass(frozen=True)
class MoveSite:
    kind: str
    params: tuple

    def to_json(self):
        return {"kind": self.kind, "params": _jsonify(self.params)}


def _jsonify(x):
    if isinstance(x, tuple):
        return [_jsonify(y) for y in x]
    return x


@dataclass(frozen=True)
class Budget:
    max_crossings: int = 10
    max_states: int = 2_000_000


def normalize_shadow(d: Diagram) -> Diagram:
    nodes = [Crossing(0) if isinstance(n, Crossing) else n for n in d.nodes]
    return Diagram(nodes, d.arcs, d.free_loops)


# -- applicability and application, one move kind at a time -------------------


def _require(cond: bool, why: str) -> None:
    if not cond:
        raise MoveNotApplicable(why)


def _r1_remove(d: Diagram, params, shadow: bool) -> Diagram:
    (c, s) = params
    _require(0 <= c < len(d.nodes) and d.is_crossing(c), "not a crossing")
    _require(d.pair.get((c, s)) == (c, (s + 1) % 4), "no kink loop at that slot")
    return splice_out(d, {c: _THROUGH})


def _r1_add(d: Diagram, params, shadow: bool) -> Diagram:
    if params[0] == "loop":
        (_, over) = params
        _require(d.free_loops >= 1, "no free loop to curl")
        c = len(d.nodes)
        arcs = list(d.arcs) + [((c, 0), (c, 1)), ((c, 2), (c, 3))]
        return Diagram(
            list(d.nodes) + [Crossing(over)], arcs, d.free_loops - 1
        )
    (arc_index, over, flip) = params
    _require(0 <= arc_index < len(d.arcs), "no such arc")
    x, y = d.arcs[arc_index]
    if flip:
        x, y = y, x
    c = len(d.nodes)
    arcs = [a for i, a in enumerate(d.arcs) if i != arc_index]
    arcs += [(x, (c, 0)), (y, (c, 1)), ((c, 2), (c, 3))]
    return Diagram(list(d.nodes) + [Crossing(over)], arcs, d.free_loops)


def _bigon_end_nodes(d: Diagram, s, t):
    """For a 2-dart face {s, t}: the nodes carrying it, as (node(s), node(t))."""
    return s[0], t[0]


def _r2_remove(d: Diagram, params, shadow: bool) -> Diagram:
    (s, t) = params
    s, t = tuple(s), tuple(t)
    _require(s in d.pair and d.phi(s) == t and d.phi(t) == s, "not a bigon face")
    q, p = s[0], t[0]
    _require(q != p, "bigon closes on a single node")
    _require(d.is_crossing(q) and d.is_crossing(p), "bigon touches a vertex")
    if not shadow:
        # the strand along arc {s, pair(s)} must be over at both ends or
        # under at both ends
        a = d.nodes[q].is_over_slot(s[1])
        b = d.nodes[p].is_over_slot(d.pair[s][1])
        _require(a == b, "strands clasp instead of poking")
    return splice_out(d, {q: _THROUGH, p: _THROUGH})


def _r2_add(d: Diagram, params, shadow: bool) -> Diagram:
    (d1, d2, over) = params
    c1 = len(d.nodes)
    c2 = c1 + 1
    nodes = list(d.nodes) + [Crossing(over), Crossing(over)]
    if d1 == "loop" and d2 == "loop":
        _require(d.free_loops >= 2, "needs two free loops")
        arcs = list(d.arcs) + [
            ((c1, 1), (c2, 1)),
            ((c1, 3), (c2, 3)),
            ((c1, 0), (c2, 2)),
            ((c1, 2), (c2, 0)),
        ]
        return Diagram(nodes, arcs, d.free_loops - 2)
    if d1 == "loop":
        u2 = tuple(d2)
        _require(u2 in d.pair, "no such dart")
        w2 = d.pair[u2]
        arcs = [a for a in d.arcs if u2 not in a]
        arcs += [
            ((c1, 1), (c2, 1)),
            ((c1, 3), (c2, 3)),
            (u2, (c2, 2)),
            ((c2, 0), (c1, 2)),
            ((c1, 0), w2),
        ]
        _require(d.free_loops >= 1, "no free loop to poke")
        return Diagram(nodes, arcs, d.free_loops - 1)
    if d2 == "loop":
        u1 = tuple(d1)
        _require(u1 in d.pair, "no such dart")
        _require(d.free_loops >= 1, "no free loop to poke across")
        w1 = d.pair[u1]
        arcs = [a for a in d.arcs if u1 not in a]
        arcs += [
            (u1, (c1, 3)),
            ((c1, 1), (c2, 1)),
            ((c2, 3), w1),
            ((c2, 0), (c1, 2)),
            ((c1, 0), (c2, 2)),
        ]
        return Diagram(nodes, arcs, d.free_loops - 1)
    u1, u2 = tuple(d1), tuple(d2)
    _require(u1 in d.pair and u2 in d.pair, "no such dart")
    w1, w2 = d.pair[u1], d.pair[u2]
    _require(len({u1, w1, u2, w2}) == 4, "darts must sit on two distinct arcs")
    # within one component both darts must border a common face; separate
    # components can always be arranged to present any two faces to each
    # other, since the map does not record their relative nesting
    same_component = any(u1[0] in comp and u2[0] in comp for comp in d.components())
    if same_component:
        face = [u1]
        cur = d.phi(u1)
        while cur != u1:
            face.append(cur)
            cur = d.phi(cur)
        _require(u2 in face, "darts do not border a common face")
    arcs = [a for a in d.arcs if u1 not in a and u2 not in a]
    arcs += [
        (u1, (c1, 3)),
        ((c1, 1), (c2, 1)),
        ((c2, 3), w1),
        (u2, (c2, 2)),
        ((c2, 0), (c1, 2)),
        ((c1, 0), w2),
    ]
    return Diagram(nodes, arcs, d.free_loops)


def _r3(d: Diagram, params, shadow: bool) -> Diagram:
    (anchor,) = params
    s1 = tuple(anchor)
    _require(s1 in d.pair, "no such dart")
    s2 = d.phi(s1)
    s3 = d.phi(s2)
    _require(d.phi(s3) == s1 and len({s1, s2, s3}) == 3, "not a triangular face")
    q, p, r = s1[0], s2[0], s3[0]
    _require(len({q, p, r}) == 3, "triangle revisits a node")
    _require(
        d.is_crossing(q) and d.is_crossing(p) and d.is_crossing(r),
        "triangle touches a vertex",
    )
    if not shadow:
        bits = {d.nodes[n].is_over_slot(s) for n, s in (s1, s2, s3)}
        _require(len(bits) == 2, "no strand passes across the triangle")

    def qs(k):
        return (q, (s1[1] + k) % 4)

    def ps(k):
        return (p, (s2[1] + k) % 4)

    def rs(k):
        return (r, (s3[1] + k) % 4)

    sigma = {
        qs(2): ps(3),
        rs(1): ps(0),
        rs(2): qs(3),
        ps(1): qs(0),
        ps(2): rs(3),
        qs(1): rs(0),
    }
    sides = {frozenset((s1, d.pair[s1])), frozenset((s2, d.pair[s2])),
             frozenset((s3, d.pair[s3]))}
    arcs = []
    for a, b in d.arcs:
        if frozenset((a, b)) in sides:
            continue
        arcs.append((sigma.get(a, a), sigma.get(b, b)))
    arcs += [(ps(1), qs(2)), (ps(2), rs(1)), (qs(1), rs(2))]
    return Diagram(d.nodes, arcs, d.free_loops)


def _crossing_change(d: Diagram, params, shadow: bool) -> Diagram:
    (c,) = params
    _require(not shadow, "crossing changes are invisible on shadows")
    _require(0 <= c < len(d.nodes) and d.is_crossing(c), "not a crossing")
    return d.with_over(c, 1 - d.nodes[c].over)


def _r5_twist(d: Diagram, params, shadow: bool) -> Diagram:
    (v, i, over) = params
    _require(0 <= v < len(d.nodes) and not d.is_crossing(v), "not a vertex")
    deg = d.degree_of(v)
    _require(deg >= 2, "twisting needs two adjacent slots")
    j = (i + 1) % deg
    _require(0 <= i < deg, "no such slot")
    a, b = (v, i), (v, j)
    pa, pb = d.pair[a], d.pair[b]
    c = len(d.nodes)
    arcs = [arc for arc in d.arcs if a not in arc and b not in arc]
    if pa == b:
        # the two slots are joined by a little loop arc; it rides along
        arcs.append(((c, 3), (c, 0)))
    else:
        arcs.append((pa, (c, 3)))
        arcs.append((pb, (c, 0)))
    arcs.append((a, (c, 2)))
    arcs.append((b, (c, 1)))
    return Diagram(list(d.nodes) + [Crossing(over)], arcs, d.free_loops)


def _r5_untwist(d: Diagram, params, shadow: bool) -> Diagram:
    (v, i) = params
    _require(0 <= v < len(d.nodes) and not d.is_crossing(v), "not a vertex")
    deg = d.degree_of(v)
    _require(deg >= 2, "untwisting needs two adjacent slots")
    j = (i + 1) % deg
    a, b = (v, i), (v, j)
    ca = d.pair[a]
    cb = d.pair[b]
    _require(
        ca[0] == cb[0] and d.is_crossing(ca[0]) and cb[1] == (ca[1] - 1) % 4,
        "adjacent slots do not feed a twist crossing",
    )
    k = ca[1]
    matching = (((k, (k + 1) % 4)), (((k + 2) % 4, (k + 3) % 4)))
    return splice_out(d, {ca[0]: matching})


_APPLY = {
    "R1_remove": _r1_remove,
    "R1_add": _r1_add,
    "R2_remove": _r2_remove,
    "R2_add": _r2_add,
    "R3": _r3,
    "CrossingChange": _crossing_change,
    "R5_twist": _r5_twist,
    "R5_untwist": _r5_untwist,
}


def apply_move(d: Diagram, site: MoveSite, shadow: bool = False) -> Diagram:
    if site.kind not in _APPLY:
        raise MoveNotApplicable(f"unknown move kind {site.kind!r}")
    try:
        return _APPLY[site.kind](d, site.params, shadow)
    except (TypeError, KeyError, IndexError):
        raise MoveNotApplicable(
            f"malformed parameters {site.params!r} for {site.kind}"
        ) from None


def enumerate_moves(
    d: Diagram, kinds=MOVE_KINDS, shadow: bool = False
) -> list[MoveSite]:
    """All applicable sites, in a fixed deterministic order."""
    overs = (0,) if shadow else (0, 1)
    sites: list[MoveSite] = []
    for kind in kinds:
        found: list[tuple] = []
        if kind == "R1_remove":
            for c in d.crossings():
                for s in range(4):
                    if d.pair[(c, s)] == (c, (s + 1) % 4):
                        found.append((c, s))
        elif kind == "R2_remove":
            for face in d.faces():
                if len(face) != 2:
                    continue
                s, t = sorted(face)
                if s[0] == t[0]:
                    continue
                if not (d.is_crossing(s[0]) and d.is_crossing(t[0])):
                    continue
                if not shadow:
                    a = d.nodes[s[0]].is_over_slot(s[1])
                    b = d.nodes[t[0]].is_over_slot(d.pair[s][1])
                    if a != b:
                        continue
                found.append((s, t))
        elif kind == "R5_untwist":
            for v in d.vertices():
                deg = d.degree_of(v)
                if deg < 2:
                    continue
                for i in range(deg):
                    ca = d.pair[(v, i)]
                    cb = d.pair[(v, (i + 1) % deg)]
                    if (
                        ca[0] == cb[0]
                        and d.is_crossing(ca[0])
                        and cb[1] == (ca[1] - 1) % 4
                    ):
                        found.append((v, i))
        elif kind == "R3":
            for face in d.faces():
                if len(face) != 3:
                    continue
                ns = [x[0] for x in face]
                if len(set(ns)) != 3 or not all(d.is_crossing(n) for n in ns):
                    continue
                if not shadow:
                    bits = {d.nodes[n].is_over_slot(s) for n, s in face}
                    if len(bits) != 2:
                        continue
                for anchor in face:
                    found.append((anchor,))
        elif kind == "CrossingChange":
            if not shadow:
                for c in d.crossings():
                    found.append((c,))
        elif kind == "R1_add":
            for i in range(len(d.arcs)):
                for over in overs:
                    for flip in (0, 1):
                        found.append((i, over, flip))
            if d.free_loops >= 1:
                for over in overs:
                    found.append(("loop", over))
        elif kind == "R2_add":
            for face in d.faces():
                for u1 in face:
                    for u2 in face:
                        if u1 == u2 or d.pair[u1] == u2:
                            continue
                        for over in overs:
                            found.append((u1, u2, over))
            comps = d.components()
            if len(comps) > 1:
                comp_of = {n: i for i, comp in enumerate(comps) for n in comp}
                for u1 in d.darts():
                    for u2 in d.darts():
                        if comp_of[u1[0]] < comp_of[u2[0]]:
                            for over in overs:
                                found.append((u1, u2, over))
            if d.free_loops >= 1:
                for dart in d.darts():
                    for over in overs:
                        found.append(("loop", dart, over))
                        found.append((dart, "loop", over))
            if d.free_loops >= 2:
                for over in overs:
                    found.append(("loop", "loop", over))
        elif kind == "R5_twist":
            for v in d.vertices():
                deg = d.degree_of(v)
                if deg < 2:
                    continue
                for i in range(deg):
                    for over in overs:
                        found.append((v, i, over))
        found.sort(key=lambda p: str(p))
        sites.extend(MoveSite(kind, p) for p in found)
    return sites


# -- searches -----------------------------------------------------------------


@dataclass
class SearchResult:
    best: Diagram
    exhausted: bool
    states: int


_KIND_DELTA = {
    "R1_remove": -1,
    "R2_remove": -2,
    "R5_untwist": -1,
    "R3": 0,
    "CrossingChange": 0,
    "R1_add": 1,
    "R2_add": 2,
    "R5_twist": 1,
}


def _neighbors(d: Diagram, budget: Budget, shadow: bool, kinds):
    room = budget.max_crossings - d.crossing_count
    use = tuple(k for k in kinds if _KIND_DELTA[k] <= room)
    for site in enumerate_moves(d, use, shadow=shadow):
        try:
            nd = apply_move(d, site, shadow=shadow)
        except MoveNotApplicable:
            continue
        if nd.crossing_count > budget.max_crossings:
            continue
        yield site, nd


def search_min_crossings(
    d: Diagram,
    budget: Budget | None = None,
    shadow: bool = False,
    kinds=ISOTOPY_KINDS,
    stop_at: int | None = None,
) -> SearchResult:
    """Breadth-first search of everything reachable without exceeding the
    crossing cap.  ``exhausted`` reports whether the cap-bounded reachable
    set was fully explored before the state budget ran out.  With
    ``stop_at`` the search returns as soon as a diagram with that few
    crossings turns up (then ``exhausted`` only reflects how far it got)."""
    budget = budget or Budget()
    if shadow:
        d = normalize_shadow(d)
    start = d
    seen = {start.canonical_code()}
    queue = deque([start])
    best = start
    if stop_at is not None and best.crossing_count <= stop_at:
        return SearchResult(best=best, exhausted=False, states=1)
    exhausted = True
    while queue:
        cur = queue.popleft()
        if (cur.crossing_count, cur.canonical_code()) < (
            best.crossing_count,
            best.canonical_code(),
        ):
            best = cur
        if len(seen) >= budget.max_states:
            exhausted = False
            break
        for _site, nd in _neighbors(cur, budget, shadow, kinds):
            code = nd.canonical_code()
            if code in seen:
                continue
            seen.add(code)
            if stop_at is not None and nd.crossing_count <= stop_at:
                return SearchResult(best=nd, exhausted=False, states=len(seen))
            queue.append(nd)
    if queue:
        exhausted = False
    return SearchResult(best=best, exhausted=exhausted, states=len(seen))


def simplify(d: Diagram, budget: Budget | None = None) -> Diagram:
    """Best reachable diagram (fewest crossings, canonical tie-break)."""
    return search_min_crossings(d, budget).best.canonical_form()


@dataclass
class EquivalenceResult:
    equivalent: bool | None  # None: undecided within the state budget
    path: tuple[MoveSite, ...] | None
    states: int
    exhausted: bool


def _recover_step(cur: Diagram, target_code, budget, shadow, kinds):
    for site, nd in _neighbors(cur, budget, shadow, kinds):
        if nd.canonical_code() == target_code:
            return site, nd
    return None


def equivalent_within(
    d1: Diagram,
    d2: Diagram,
    budget: Budget | None = None,
    shadow: bool = False,
    kinds=ISOTOPY_KINDS,
) -> EquivalenceResult:
    """Bidirectional search for a move path ``d1 -> d2``.

    ``equivalent=False`` means the full reachable sets within the crossing
    cap were separated, so the diagrams are genuinely inequivalent *through
    diagrams bounded by that cap*; ``None`` means the state budget ran out
    first.
    """
    budget = budget or Budget()
    if shadow:
        d1, d2 = normalize_shadow(d1), normalize_shadow(d2)
    c1, c2 = d1.canonical_code(), d2.canonical_code()
    # Diagrams are only kept while they still need expanding; the permanent
    # record per visited code is just (parent code, site), which is all the
    # path reconstruction needs.
    info = [{c1: (None, None)}, {c2: (None, None)}]
    pending = [{c1: d1}, {c2: d2}]
    frontiers = [deque([c1]), deque([c2])]
    if c1 == c2:
        return EquivalenceResult(True, (), 2, True)
    meet = None
    exhausted = True
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        frontier = frontiers[side]
        for _ in range(len(frontier)):
            code = frontier.popleft()
            cur = pending[side].pop(code)
            for site, nd in _neighbors(cur, budget, shadow, kinds):
                ncode = nd.canonical_code()
                if ncode in info[side]:
                    continue
                info[side][ncode] = (code, site)
                pending[side][ncode] = nd
                frontier.append(ncode)
                if ncode in info[1 - side]:
                    meet = ncode
                    break
            if meet:
                break
            if len(info[0]) + len(info[1]) >= budget.max_states:
                exhausted = False
                break
        if meet or not exhausted:
            break
    states = len(info[0]) + len(info[1])
    if meet is None:
        if exhausted and (not frontiers[0] or not frontiers[1]):
            return EquivalenceResult(False, None, states, True)
        return EquivalenceResult(None, None, states, False)
    # forward half: d1 .. meet
    fwd = []
    code = meet
    while info[0][code][0] is not None:
        parent, site = info[0][code]
        fwd.append(site)
        code = parent
    fwd.reverse()
    # backward half: walk meet .. d2 recovering the inverse of each stored move
    back = []
    cur = replay_path(d1, fwd, shadow=shadow)
    code = meet
    ok = True
    while info[1][code][0] is not None:
        parent = info[1][code][0]
        step = _recover_step(cur, parent, budget, shadow, kinds)
        if step is None:
            ok = False
            break
        site, cur = step
        back.append(site)
        code = parent
    path = tuple(fwd + back) if ok else None
    return EquivalenceResult(True, path, states, exhausted)


def cc_equivalent_within(
    d1: Diagram, d2: Diagram, budget: Budget | None = None
) -> EquivalenceResult:
    """Equivalence allowing crossing changes: compare shadows."""
    return equivalent_within(d1, d2, budget, shadow=True)


def replay_path(d: Diagram, path, shadow: bool = False) -> Diagram:
    cur = normalize_shadow(d) if shadow else d
    for site in path:
        cur = apply_move(cur, site, shadow=shadow)
    return cur


# -- descending reassignment ----------------------------------------------------


def descending_diagram(
    projection: GraphProjection, edge_order: list[int] | None = None
) -> Diagram:
    """Reassign over/under so earlier strands pass over later ones.

    Strands are ranked by ``edge_order`` (edge indices of the projection's
    graph; identity by default), with closed circles after all edges.  Each
    strand is walked from its lower end; where two strands meet, the one of
    smaller rank goes over, and where a strand crosses itself its first
    passage goes over.
    """
    d = projection.diagram
    order = list(range(len(projection.strands))) if edge_order is None else list(edge_order)
    if sorted(order) != list(range(len(projection.strands))):
        raise ValueError("edge_order must permute the edge indices")
    schedule: list[tuple[Dart, ...]] = [projection.strands[e].passages for e in order]
    schedule.extend(projection.circles)
    first_hit: dict[int, tuple[int, int, int]] = {}  # crossing -> (rank, pos, parity)
    nodes = list(d.nodes)
    for rank, passages in enumerate(schedule):
        for pos, (n, s) in enumerate(passages):
            if n not in first_hit:
                first_hit[n] = (rank, pos, s % 2)
    for n, (_rank, _pos, parity) in first_hit.items():
        nodes[n] = Crossing(parity)
    return Diagram(nodes, d.arcs, d.free_loops)
