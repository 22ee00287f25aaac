"""Diagrams of knotted graphs as combinatorial maps on spheres.

A diagram is a rotation system: nodes carry numbered attachment *slots*
(counter-clockwise), and *arcs* pair up slots two by two.  Nodes are either
4-valent crossings (slots ``0..3``, with one opposite slot pair passing over)
or graph vertices of arbitrary degree.  Crossing-free circles are tracked by
a plain counter (``free_loops``) since they carry no combinatorial data.

A *dart* is a pair ``(node_index, slot)``.  Faces are the orbits of
``phi(d) = next_slot(pair(d))`` and lie to the right of each dart; every
connected component must satisfy V - E + F = 2, i.e. embed in a sphere.
Distinct components live on separate spheres.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import (
    FormatError,
    InvalidVertexError,
    NotALinkError,
    SizeLimitExceeded,
    TopologyError,
)
from .multigraph import Multigraph

Dart = tuple[int, int]
Arc = tuple[Dart, Dart]


@dataclass(frozen=True)
class Crossing:
    """4-valent node; slots whose parity equals ``over`` pass on top."""

    over: int

    def __post_init__(self) -> None:
        if self.over not in (0, 1):
            raise FormatError("crossing 'over' parity must be 0 or 1")

    @property
    def degree(self) -> int:
        return 4

    def is_over_slot(self, slot: int) -> bool:
        return slot % 2 == self.over


@dataclass(frozen=True)
class Vertex:
    label: str
    degree: int

    def __post_init__(self) -> None:
        if not self.label or any(ch.isspace() for ch in self.label) or "." in self.label:
            raise FormatError(f"bad vertex label {self.label!r}")
        if self.degree < 0:
            raise FormatError("vertex degree must be non-negative")


Node = Crossing | Vertex


def _normalize_arc(arc) -> Arc:
    (a, b) = arc
    a = (int(a[0]), int(a[1]))
    b = (int(b[0]), int(b[1]))
    return (a, b) if a <= b else (b, a)


class Diagram:
    """Immutable sphere diagram.  Construction validates the embedding."""

    __slots__ = ("nodes", "arcs", "free_loops", "_pair", "_faces", "_components", "_code")

    def __init__(self, nodes, arcs, free_loops: int = 0):
        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.arcs: tuple[Arc, ...] = tuple(sorted(_normalize_arc(a) for a in arcs))
        self.free_loops = int(free_loops)
        self._pair = None
        self._faces = None
        self._components = None
        self._code = None
        self._validate()

    # -- construction checks ------------------------------------------------

    def _validate(self) -> None:
        if self.free_loops < 0:
            raise FormatError("free loop count must be non-negative")
        labels = [n.label for n in self.nodes if isinstance(n, Vertex)]
        if len(labels) != len(set(labels)):
            raise FormatError("vertex labels must be distinct")
        seen: set[Dart] = set()
        for arc in self.arcs:
            for n, s in arc:
                if not (0 <= n < len(self.nodes)):
                    raise InvalidVertexError(f"arc endpoint {(n, s)} names no node")
                if not (0 <= s < self.degree_of(n)):
                    raise FormatError(f"slot {s} out of range at node {n}")
                if (n, s) in seen:
                    raise TopologyError(f"slot {(n, s)} used by two arc ends")
                seen.add((n, s))
        expected = sum(self.degree_of(n) for n in range(len(self.nodes)))
        if len(seen) != expected:
            raise TopologyError("every slot must be matched by exactly one arc end")
        # sphere check, one component at a time
        face_count = [0] * max(len(self.components()), 1)
        comp_of = {}
        for ci, comp in enumerate(self.components()):
            for n in comp:
                comp_of[n] = ci
        for face in self.faces():
            face_count[comp_of[face[0][0]]] += 1
        for ci, comp in enumerate(self.components()):
            v = len(comp)
            e = sum(1 for (a, _b) in self.arcs if comp_of[a[0]] == ci)
            f = face_count[ci] if face_count[ci] else 1  # isolated degree-0 vertex
            if v - e + f != 2:
                raise TopologyError(
                    f"component {sorted(comp)} has Euler characteristic {v - e + f}, "
                    "not a sphere diagram"
                )

    # -- basic structure -----------------------------------------------------

    def degree_of(self, n: int) -> int:
        return self.nodes[n].degree

    def is_crossing(self, n: int) -> bool:
        return isinstance(self.nodes[n], Crossing)

    @property
    def crossing_count(self) -> int:
        return sum(1 for node in self.nodes if isinstance(node, Crossing))

    def crossings(self) -> list[int]:
        return [i for i, node in enumerate(self.nodes) if isinstance(node, Crossing)]

    def vertices(self) -> list[int]:
        return [i for i, node in enumerate(self.nodes) if isinstance(node, Vertex)]

    def vertex_index(self, label: str) -> int:
        for i, node in enumerate(self.nodes):
            if isinstance(node, Vertex) and node.label == label:
                return i
        raise InvalidVertexError(f"no vertex labelled {label!r}")

    def darts(self) -> list[Dart]:
        return [
            (n, s) for n in range(len(self.nodes)) for s in range(self.degree_of(n))
        ]

    @property
    def pair(self) -> dict[Dart, Dart]:
        if self._pair is None:
            p = {}
            for a, b in self.arcs:
                p[a] = b
                p[b] = a
            self._pair = p
        return self._pair

    def next_dart(self, d: Dart) -> Dart:
        n, s = d
        return (n, (s + 1) % self.degree_of(n))

    def prev_dart(self, d: Dart) -> Dart:
        n, s = d
        return (n, (s - 1) % self.degree_of(n))

    def phi(self, d: Dart) -> Dart:
        """Next dart along the face to the right of ``d``."""
        return self.next_dart(self.pair[d])

    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        if self._faces is None:
            remaining = set(self.darts())
            out = []
            while remaining:
                start = min(remaining)
                orbit = [start]
                remaining.discard(start)
                d = self.phi(start)
                while d != start:
                    orbit.append(d)
                    remaining.discard(d)
                    d = self.phi(d)
                out.append(tuple(orbit))
            self._faces = tuple(sorted(out))
        return self._faces

    def components(self) -> tuple[frozenset[int], ...]:
        """Connected components of the node set under arcs."""
        if self._components is None:
            parent = list(range(len(self.nodes)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for (a, b) in self.arcs:
                ra, rb = find(a[0]), find(b[0])
                if ra != rb:
                    parent[ra] = rb
            groups: dict[int, set[int]] = {}
            for n in range(len(self.nodes)):
                groups.setdefault(find(n), set()).add(n)
            self._components = tuple(
                sorted((frozenset(g) for g in groups.values()), key=min)
            )
        return self._components

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Diagram)
            and self.nodes == other.nodes
            and self.arcs == other.arcs
            and self.free_loops == other.free_loops
        )

    def __hash__(self) -> int:
        return hash((self.nodes, self.arcs, self.free_loops))

    def __repr__(self) -> str:
        return (
            f"Diagram({len(self.nodes)} nodes, {len(self.arcs)} arcs, "
            f"{self.free_loops} free loops)"
        )

    # -- canonical form -------------------------------------------------------

    def _trace(self, root: Dart):
        """Breadth-first code of the component of ``root``, rooted at it.

        Node numbers and slot origins are both traversal-derived, so two
        diagrams get equal codes exactly when they are the same map up to
        renumbering nodes and rotating slot labels.
        """
        number: dict[int, int] = {root[0]: 0}
        origin: dict[int, int] = {root[0]: root[1]}
        order = [root[0]]
        code = []
        i = 0
        while i < len(order):
            n = order[i]
            i += 1
            node = self.nodes[n]
            if isinstance(node, Crossing):
                head = ("x", (node.over - origin[n]) % 2)
            else:
                head = ("v", node.label, node.degree)
            row = []
            deg = self.degree_of(n)
            for k in range(deg):
                s = (origin[n] + k) % deg
                m, t = self.pair[(n, s)]
                if m not in number:
                    number[m] = len(order)
                    origin[m] = t
                    order.append(m)
                row.append((number[m], (t - origin[m]) % self.degree_of(m)))
            code.append((head, tuple(row)))
        return tuple(code), order, origin

    def _root_candidates(self, comp_darts):
        """Darts that can start a minimal trace of this component.

        The first entry of a trace is the head of the root node, so only
        darts realising the smallest head tuple are in the running.
        """
        best_head = None
        cands: list[Dart] = []
        for n, s in comp_darts:
            node = self.nodes[n]
            if isinstance(node, Crossing):
                head = ("x", (node.over - s) % 2)
            else:
                head = ("v", node.label, node.degree)
            if best_head is None or head < best_head:
                best_head = head
                cands = [(n, s)]
            elif head == best_head:
                cands.append((n, s))
        return cands

    def canonical_code(self):
        """Hashable key equal for diagrams that are the same abstract map."""
        if self._code is None:
            comp_codes = []
            for comp in self.components():
                comp_darts = [
                    (n, s) for n in sorted(comp) for s in range(self.degree_of(n))
                ]
                if not comp_darts:
                    node = self.nodes[min(comp)]
                    comp_codes.append(((("isolated", node.label, node.degree), ()),))
                    continue
                best = None
                for d in self._root_candidates(comp_darts):
                    code, _, _ = self._trace(d)
                    if best is None or code < best:
                        best = code
                comp_codes.append(best)
            self._code = (tuple(sorted(comp_codes)), self.free_loops)
        return self._code

    def same_map(self, other: "Diagram") -> bool:
        """True when the diagrams differ only by renumbering/slot rotation."""
        return self.canonical_code() == other.canonical_code()

    def canonical_form(self) -> "Diagram":
        """A representative with nodes renumbered into canonical order."""
        pieces = []  # (code, node order, slot origins)
        for comp in self.components():
            comp_darts = [
                (n, s) for n in sorted(comp) for s in range(self.degree_of(n))
            ]
            if not comp_darts:
                n = min(comp)
                node = self.nodes[n]
                pieces.append(
                    (((("isolated", node.label, node.degree), ()),), [n], {n: 0})
                )
                continue
            best = None
            for d in self._root_candidates(comp_darts):
                code, order, origin = self._trace(d)
                if best is None or code < best[0]:
                    best = (code, order, origin)
            pieces.append(best)
        pieces.sort(key=lambda p: p[0])
        new_index: dict[int, int] = {}
        origins: dict[int, int] = {}
        new_nodes: list[Node] = []
        for _code, order, origin in pieces:
            for n in order:
                new_index[n] = len(new_nodes)
                origins[n] = origin.get(n, 0)
                node = self.nodes[n]
                if isinstance(node, Crossing):
                    node = Crossing((node.over - origin[n]) % 2)
                new_nodes.append(node)

        def remap(d: Dart) -> Dart:
            n, s = d
            return (new_index[n], (s - origins[n]) % self.degree_of(n))

        new_arcs = [(remap(a), remap(b)) for a, b in self.arcs]
        return Diagram(new_nodes, new_arcs, self.free_loops)

    # -- strands ---------------------------------------------------------------

    def strand_exit(self, entry: Dart) -> Dart:
        """Where a strand entering a crossing at ``entry`` leaves it."""
        n, s = entry
        if not self.is_crossing(n):
            raise NotALinkError("strands only pass through crossings")
        return (n, (s + 2) % 4)

    def strands(self) -> tuple[list["StrandPath"], list[tuple[Dart, ...]]]:
        """All maximal strands: (open vertex-to-vertex paths, closed circles).

        Each closed circle is reported as its tuple of crossing entry darts,
        starting from the smallest.
        """
        used: set[Dart] = set()
        open_paths = []
        for n in self.vertices():
            for s in range(self.degree_of(n)):
                start = (n, s)
                if start in used:
                    continue
                passages = []
                used.add(start)
                cur = self.pair[start]
                while self.is_crossing(cur[0]):
                    used.add(cur)
                    passages.append(cur)
                    out = self.strand_exit(cur)
                    used.add(out)
                    cur = self.pair[out]
                used.add(cur)
                open_paths.append(StrandPath((start, cur), tuple(passages)))
        circles = []
        for d in self.darts():
            if d in used or not self.is_crossing(d[0]):
                continue
            entries = []
            cur = d
            while cur not in used:
                used.add(cur)
                entries.append(cur)
                out = self.strand_exit(cur)
                used.add(out)
                cur = self.pair[out]
            start = entries.index(min(entries))
            circles.append(tuple(entries[start:] + entries[:start]))
        open_paths.sort(key=lambda p: p.ends)
        circles.sort()
        return open_paths, circles

    def link_components(self) -> int:
        """Number of circles in a vertex-free diagram."""
        if self.vertices():
            raise NotALinkError("diagram has graph vertices")
        _, circles = self.strands()
        return len(circles) + self.free_loops

    def is_alternating(self) -> bool:
        """Along every circle, passages alternate over/under (cyclically)."""
        if self.vertices():
            raise NotALinkError("alternation is defined for link diagrams")
        _, circles = self.strands()
        for entries in circles:
            bits = [self.nodes[n].is_over_slot(s) for n, s in entries]
            if len(bits) % 2 == 1:
                return False
            for i, b in enumerate(bits):
                if b == bits[(i + 1) % len(bits)]:
                    return False
        return True

    def is_reduced(self) -> bool:
        """No crossing has a face touching it at two opposite corners."""
        for face in self.faces():
            at_node: dict[int, list[int]] = {}
            for n, s in face:
                if self.is_crossing(n):
                    at_node.setdefault(n, []).append(s)
            for slots in at_node.values():
                for a, b in itertools.combinations(slots, 2):
                    if (a - b) % 4 == 2:
                        return False
        return True

    # -- relation to the underlying graph ---------------------------------------

    def underlying_graph(self) -> "GraphProjection":
        verts = self.vertices()
        vertex_of_node = {n: i for i, n in enumerate(verts)}
        open_paths, circles = self.strands()
        records = []
        for path in open_paths:
            (n1, _s1), (n2, _s2) = path.ends
            u, v = vertex_of_node[n1], vertex_of_node[n2]
            if u > v:
                u, v = v, u
                path = path.reversed()
            records.append(((u, v), path))
        records.sort(key=lambda r: (r[0], r[1].ends))
        graph = Multigraph(len(verts), tuple(r[0] for r in records))
        return GraphProjection(
            diagram=self,
            graph=graph,
            labels=tuple(self.nodes[n].label for n in verts),
            node_of_vertex=tuple(verts),
            strands=tuple(r[1] for r in records),
            circles=tuple(circles),
        )

    def split_components(self) -> list["Diagram"]:
        """One diagram per connected component (free loops come last,
        one circle each)."""
        out = []
        for comp in self.components():
            order = sorted(comp)
            new_index = {n: i for i, n in enumerate(order)}
            arcs = [
                ((new_index[a[0]], a[1]), (new_index[b[0]], b[1]))
                for a, b in self.arcs
                if a[0] in comp
            ]
            out.append(Diagram([self.nodes[n] for n in order], arcs, 0))
        out.extend(Diagram([], [], 1) for _ in range(self.free_loops))
        return out

    # -- simple rewrites ----------------------------------------------------------

    def with_over(self, n: int, over: int) -> "Diagram":
        if not self.is_crossing(n):
            raise InvalidVertexError(f"node {n} is not a crossing")
        nodes = list(self.nodes)
        nodes[n] = Crossing(over)
        return Diagram(nodes, self.arcs, self.free_loops)


@dataclass(frozen=True)
class StrandPath:
    """An open strand: its two vertex-slot ends and crossing entry darts."""

    ends: tuple[Dart, Dart]
    passages: tuple[Dart, ...]

    def reversed(self) -> "StrandPath":
        # entry dart of a reversed passage is the old exit slot
        back = tuple((n, (s + 2) % 4) for n, s in reversed(self.passages))
        return StrandPath((self.ends[1], self.ends[0]), back)


@dataclass(frozen=True)
class GraphProjection:
    """How a diagram projects onto its underlying multigraph.

    ``graph.edges[i]`` is realized by ``strands[i]``; vertex ``i`` of the
    graph is diagram node ``node_of_vertex[i]`` with label ``labels[i]``.
    Closed crossing-only circles (not graph edges) are listed separately.
    """

    diagram: Diagram
    graph: Multigraph
    labels: tuple[str, ...]
    node_of_vertex: tuple[int, ...]
    strands: tuple[StrandPath, ...]
    circles: tuple[tuple[Dart, ...], ...]

    def edge_at_slot(self, dart: Dart) -> int:
        """Graph edge whose strand ends at the given vertex slot."""
        for i, strand in enumerate(self.strands):
            if dart in strand.ends:
                return i
        raise InvalidVertexError(f"{dart} is not a vertex slot on any strand")


def mirror_diagram(d: Diagram) -> Diagram:
    """Switch every crossing (the mirror image through the sphere)."""
    nodes = [
        Crossing(1 - node.over) if isinstance(node, Crossing) else node
        for node in d.nodes
    ]
    return Diagram(nodes, d.arcs, d.free_loops)


def splice_identify(d: Diagram, thru: dict[Dart, Dart]) -> Diagram:
    """Delete the nodes named in ``thru``, rejoining strands through it.

    ``thru`` is a fixed-point-free involution covering every slot of every
    node it mentions (connections may run between different removed nodes).
    Strands are re-routed through those identifications, and any circle that
    closes up entirely inside the removed nodes becomes a free loop.
    """
    removed = {n for n, _ in thru}
    slots_needed = {(n, s) for n in removed for s in range(d.degree_of(n))}
    if set(thru) != slots_needed:
        raise FormatError("identifications must cover each removed slot once")
    for a, b in thru.items():
        if a == b or thru.get(b) != a:
            raise FormatError("identifications must form an involution")

    keep = [n for n in range(len(d.nodes)) if n not in removed]
    new_index = {n: i for i, n in enumerate(keep)}

    def follow(dart: Dart) -> Dart:
        cur = d.pair[dart]
        while cur[0] in removed:
            cur = d.pair[thru[cur]]
        return cur

    new_arcs = []
    seen: set[Dart] = set()
    for n in keep:
        for s in range(d.degree_of(n)):
            start = (n, s)
            if start in seen:
                continue
            end = follow(start)
            seen.add(start)
            seen.add(end)
            new_arcs.append(
                ((new_index[start[0]], start[1]), (new_index[end[0]], end[1]))
            )
    # circles trapped inside the removed nodes
    loops = 0
    consumed: set[Dart] = set()
    for n in sorted(removed):
        for s in range(d.degree_of(n)):
            dart = (n, s)
            if dart in consumed:
                continue
            trail = d.pair[dart]
            if trail[0] not in removed:
                continue  # part of a rerouted strand, already handled
            # check the whole cycle stays inside removed nodes
            cycle = [dart]
            cur = dart
            internal = True
            while True:
                cur = thru[cur]
                cycle.append(cur)
                cur = d.pair[cur]
                if cur[0] not in removed:
                    internal = False
                    break
                cycle.append(cur)
                if cur == dart:
                    break
            if internal:
                consumed.update(cycle)
                loops += 1
            else:
                consumed.update(cycle)
    # the "not internal" walks above are re-routed strands; they were consumed
    # only to avoid re-scanning, never counted.
    return Diagram(
        [d.nodes[n] for n in keep], new_arcs, d.free_loops + loops
    )


def splice_out(d: Diagram, matchings: dict[int, tuple[tuple[int, int], ...]]) -> Diagram:
    """Delete nodes, rejoining each node's slots internally as prescribed."""
    thru: dict[Dart, Dart] = {}
    for n, pairs in matchings.items():
        for s, t in pairs:
            thru[(n, s)] = (n, t)
            thru[(n, t)] = (n, s)
    return splice_identify(d, thru)


def disjoint_union_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    shift = len(d1.nodes)
    arcs = list(d1.arcs) + [
        (((a[0] + shift), a[1]), ((b[0] + shift), b[1])) for a, b in d2.arcs
    ]
    return Diagram(d1.nodes + d2.nodes, arcs, d1.free_loops + d2.free_loops)


def connected_sum_diagrams(
    d1: Diagram, arc1: int, d2: Diagram, arc2: int, swap: bool = False
) -> Diagram:
    """Cut one arc in each diagram and join the stubs pairwise."""
    (x1, y1) = d1.arcs[arc1]
    (x2, y2) = d2.arcs[arc2]
    shift = len(d1.nodes)

    def sh(dart: Dart) -> Dart:
        return (dart[0] + shift, dart[1])

    if swap:
        x2, y2 = y2, x2
    arcs = [a for i, a in enumerate(d1.arcs) if i != arc1]
    arcs.extend((sh(a), sh(b)) for i, (a, b) in enumerate(d2.arcs) if i != arc2)
    arcs.append((x1, sh(x2)))
    arcs.append((y1, sh(y2)))
    return Diagram(d1.nodes + d2.nodes, arcs, d1.free_loops + d2.free_loops)


def crossing_assignments(d: Diagram, max_crossings: int = 16):
    """Yield every reassignment of over/under at the crossings, in binary
    counter order over crossings listed by node index."""
    xs = d.crossings()
    if len(xs) > max_crossings:
        raise SizeLimitExceeded(
            f"{len(xs)} crossings would give 2^{len(xs)} assignments"
        )
    for word in range(1 << len(xs)):
        nodes = list(d.nodes)
        for j, n in enumerate(xs):
            nodes[n] = Crossing((word >> j) & 1)
        yield Diagram(nodes, d.arcs, d.free_loops)


def extract_sublink(
    projection: GraphProjection, cycles: list[list[int]]
) -> Diagram:
    """Restrict a diagram to edge-disjoint graph cycles, as a link diagram.

    Each cycle is a list of edge indices of ``projection.graph`` forming a
    closed walk without repeated vertices (a single loop edge or a pair of
    parallel edges are the short cases).  Vertices are smoothed the way each
    cycle runs through them, crossings met by one surviving strand are passed
    straight through, and crossings where two surviving strands meet are kept
    with their over/under intact.
    """
    d = projection.diagram
    g = projection.graph
    used_edges: set[int] = set()
    for cycle in cycles:
        for e in cycle:
            if e in used_edges:
                raise FormatError(f"edge {e} appears in two cycles")
            used_edges.add(e)

    # matchings at vertices induced by how cycles run through them, and the
    # set of kept passage parities at each crossing
    vertex_join: dict[Dart, Dart] = {}
    kept_parity: dict[int, set[int]] = {}

    def strand_oriented(e: int, from_vertex: int) -> StrandPath:
        s = projection.strands[e]
        u, v = g.endpoints(e)
        if u == v:
            # loop: orientation choice is irrelevant to the caller
            return s
        start_node = projection.node_of_vertex[from_vertex]
        return s if s.ends[0][0] == start_node else s.reversed()

    for cycle in cycles:
        if not cycle:
            raise FormatError("empty cycle")
        # walk the cycle, picking the vertex sequence
        if len(cycle) == 1:
            e = cycle[0]
            u, v = g.endpoints(e)
            if u != v:
                raise FormatError(f"cycle [{e}] is not a loop edge")
            path = projection.strands[e]
            vertex_join[path.ends[0]] = path.ends[1]
            vertex_join[path.ends[1]] = path.ends[0]
            for n, s in path.passages:
                kept_parity.setdefault(n, set()).add(s % 2)
            continue
        u0, v0 = g.endpoints(cycle[0])
        second = g.endpoints(cycle[1])
        if u0 in second and v0 in second and u0 != v0:
            # ambiguous start of a 2-cycle; orient edge 0 from its low end
            at = v0
            start = u0
        elif v0 in second:
            at = v0
            start = u0
        elif u0 in second:
            at = u0
            start = v0
        else:
            raise FormatError("consecutive cycle edges share no vertex")
        visited = [start]
        prev_end: Dart | None = None
        for e in cycle:
            path = strand_oriented(e, visited[-1])
            if prev_end is not None:
                vertex_join[prev_end] = path.ends[0]
                vertex_join[path.ends[0]] = prev_end
            for n, s in path.passages:
                kept_parity.setdefault(n, set()).add(s % 2)
            nxt = g.other_end(e, visited[-1])
            visited.append(nxt)
            prev_end = path.ends[1]
        if visited[-1] != visited[0]:
            raise FormatError("cycle does not close up")
        if len(set(visited[:-1])) != len(visited) - 1:
            raise FormatError("cycle repeats a vertex")
        first = strand_oriented(cycle[0], visited[0])
        vertex_join[prev_end] = first.ends[0]
        vertex_join[first.ends[0]] = prev_end

    kept_crossings = sorted(n for n, ps in kept_parity.items() if len(ps) == 2)
    new_index = {n: i for i, n in enumerate(kept_crossings)}
    new_nodes = [d.nodes[n] for n in kept_crossings]

    def advance(dart: Dart) -> Dart | None:
        """From an outgoing dart, next kept-crossing attachment (or None if
        the walk closes without meeting one)."""
        cur = d.pair[dart]
        while True:
            n, s = cur
            if n in new_index:
                return cur
            if d.is_crossing(n):
                cur = d.pair[(n, (s + 2) % 4)]
            else:
                if cur not in vertex_join:
                    raise TopologyError("strand leaves the selected cycles")
                cur = d.pair[vertex_join[cur]]
            if cur == d.pair[dart]:
                return None

    new_arcs = []
    seen: set[Dart] = set()
    for n in kept_crossings:
        for s in range(4):
            start = (n, s)
            if start in seen:
                continue
            end = advance(start)
            if end is None:
                raise TopologyError("walk failed to terminate at a crossing")
            seen.add(start)
            seen.add(end)
            new_arcs.append(((new_index[n], s), (new_index[end[0]], end[1])))

    loops = 0
    if not kept_crossings:
        # each cycle that survives with no kept crossing is one free circle;
        # walk cycles of vertex_join/pair starting at each strand end
        done: set[Dart] = set()
        for dart in list(vertex_join):
            if dart in done:
                continue
            cur = dart
            while True:
                done.add(cur)
                nxt = vertex_join[cur]
                done.add(nxt)
                # run along the strand to its other end
                path_cur = d.pair[nxt]
                while True:
                    n, s = path_cur
                    if d.is_crossing(n):
                        path_cur = d.pair[(n, (s + 2) % 4)]
                    else:
                        break
                cur = path_cur
                if cur == dart:
                    break
            loops += 1
        return Diagram([], [], loops)
    return Diagram(new_nodes, new_arcs, 0)


# -- serialization -------------------------------------------------------------


def parse_diagram(text: str) -> Diagram:
    """Parse the line-based diagram format.

    ::

        diagram
        crossing 02        # over slots 0 and 2
        vertex a 3
        loop               # one crossing-free circle
        arc 0.1 1.0

    Nodes are referenced by position (0-based) in listing order.
    """
    nodes: list[Node] = []
    arcs = []
    free_loops = 0
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw = fields[0]
        if kw == "diagram":
            if saw_header:
                raise FormatError(f"line {lineno}: repeated diagram header")
            saw_header = True
        elif not saw_header:
            raise FormatError(f"line {lineno}: content before diagram header")
        elif kw == "crossing":
            if len(fields) != 2 or fields[1] not in ("02", "13"):
                raise FormatError(f"line {lineno}: expected 'crossing 02' or 'crossing 13'")
            nodes.append(Crossing(0 if fields[1] == "02" else 1))
        elif kw == "vertex":
            if len(fields) != 3:
                raise FormatError(f"line {lineno}: expected 'vertex <label> <degree>'")
            try:
                degree = int(fields[2])
            except ValueError:
                raise FormatError(f"line {lineno}: bad degree") from None
            nodes.append(Vertex(fields[1], degree))
        elif kw == "loop":
            if len(fields) != 1:
                raise FormatError(f"line {lineno}: 'loop' takes no arguments")
            free_loops += 1
        elif kw == "arc":
            if len(fields) != 3:
                raise FormatError(f"line {lineno}: expected 'arc <n>.<s> <n>.<s>'")
            ends = []
            for token in fields[1:]:
                part = token.split(".")
                if len(part) != 2:
                    raise FormatError(f"line {lineno}: bad arc end {token!r}")
                try:
                    ends.append((int(part[0]), int(part[1])))
                except ValueError:
                    raise FormatError(f"line {lineno}: bad arc end {token!r}") from None
            arcs.append(tuple(ends))
        else:
            raise FormatError(f"line {lineno}: unknown keyword {kw!r}")
    if not saw_header:
        raise FormatError("missing diagram header")
    return Diagram(nodes, arcs, free_loops)


def diagram_to_text(d: Diagram) -> str:
    lines = ["diagram"]
    for node in d.nodes:
        if isinstance(node, Crossing):
            lines.append(f"crossing {'02' if node.over == 0 else '13'}")
        else:
            lines.append(f"vertex {node.label} {node.degree}")
    lines.extend(["loop"] * d.free_loops)
    for (a, b) in d.arcs:
        lines.append(f"arc {a[0]}.{a[1]} {b[0]}.{b[1]}")
    return "\n".join(lines) + "\n"


def diagram_to_json(d: Diagram) -> str:
    nodes = []
    for node in d.nodes:
        if isinstance(node, Crossing):
            nodes.append({"type": "crossing", "over": node.over})
        else:
            nodes.append({"type": "vertex", "label": node.label, "degree": node.degree})
    return json.dumps(
        {
            "nodes": nodes,
            "arcs": [[list(a), list(b)] for a, b in d.arcs],
            "free_loops": d.free_loops,
        },
        indent=2,
        sort_keys=True,
    )


def diagram_from_json(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    try:
        nodes: list[Node] = []
        for entry in data["nodes"]:
            if entry["type"] == "crossing":
                nodes.append(Crossing(entry["over"]))
            elif entry["type"] == "vertex":
                nodes.append(Vertex(entry["label"], entry["degree"]))
            else:
                raise FormatError(f"unknown node type {entry['type']!r}")
        arcs = [
            ((a[0], a[1]), (b[0], b[1])) for a, b in data["arcs"]
        ]
        return Diagram(nodes, arcs, data.get("free_loops", 0))
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed diagram JSON: {exc!r}") from None
