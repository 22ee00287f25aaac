"""Link invariants and crossing-number bounds.

The bracket polynomial is computed as an exact state sum over smoothings,
collected by (state exponent, circle count) before expanding powers of the
circle polynomial.  Orientations for writhe and linking numbers are chosen
canonically: every circle is traversed starting from its smallest entry dart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .diagram import Diagram, GraphProjection, extract_sublink
from .errors import DisconnectedError, NotALinkError, SizeLimitExceeded, TopologyError
from .moves import Budget, search_min_crossings
from .multigraph import Multigraph


class LaurentPoly:
    """Integer Laurent polynomial in one variable ``A``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs: dict[int, int] = {
            int(e): int(c) for e, c in (coeffs or {}).items() if c
        }

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, exp: int) -> "LaurentPoly":
        return LaurentPoly({e + exp: c for e, c in self.coeffs.items()})

    @property
    def span(self) -> int:
        """Difference between extreme exponents (0 for 0 or 1 terms)."""
        if not self.coeffs:
            return 0
        return max(self.coeffs) - min(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                power = "A" if e == 1 else f"A^{e}"
                body = mag + power
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coeffs!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}


CIRCLE_POLY = LaurentPoly({2: -1, -2: -1})

_circle_powers: dict[int, LaurentPoly] = {0: LaurentPoly.one()}


def _circle_power(k: int) -> LaurentPoly:
    while len(_circle_powers) <= k:
        _circle_powers[len(_circle_powers)] = (
            _circle_powers[len(_circle_powers) - 1] * CIRCLE_POLY
        )
    return _circle_powers[k]


def kauffman_bracket(d: Diagram, max_crossings: int = 20) -> LaurentPoly:
    """Bracket polynomial of a link diagram.

    The A-smoothing at a crossing whose over slots are ``(o, o+2)`` joins
    slot pairs ``(o+1, o+2)`` and ``(o+3, o)``; the B-smoothing joins
    ``(o, o+1)`` and ``(o+2, o+3)``.
    """
    if d.vertices():
        raise NotALinkError("bracket is defined for link diagrams")
    xs = d.crossings()
    n = len(xs)
    if n > max_crossings:
        raise SizeLimitExceeded(f"{n} crossings exceeds the bracket guard")
    if n == 0 and d.free_loops == 0:
        raise NotALinkError("empty diagram has no bracket")
    smooth_a = {}
    smooth_b = {}
    for c in xs:
        o = d.nodes[c].over
        smooth_a[c] = (((o + 1) % 4, (o + 2) % 4), ((o + 3) % 4, o))
        smooth_b[c] = ((o, (o + 1) % 4), ((o + 2) % 4, (o + 3) % 4))
    pair = d.pair
    counts: dict[tuple[int, int], int] = {}
    for word in range(1 << n):
        match: dict[tuple[int, int], tuple[int, int]] = {}
        a_count = 0
        for j, c in enumerate(xs):
            if (word >> j) & 1:
                chosen = smooth_b[c]
            else:
                chosen = smooth_a[c]
                a_count += 1
            for s, t in chosen:
                match[(c, s)] = (c, t)
                match[(c, t)] = (c, s)
        circles = d.free_loops
        visited: set[tuple[int, int]] = set()
        for dart in match:
            if dart in visited:
                continue
            circles += 1
            cur = dart
            while cur not in visited:
                visited.add(cur)
                step = match[cur]
                visited.add(step)
                cur = pair[step]
        key = (2 * a_count - n, circles)
        counts[key] = counts.get(key, 0) + 1
    total = LaurentPoly.zero()
    for (exp, circles), mult in counts.items():
        total = total + (_circle_power(circles - 1) * mult).shifted(exp)
    return total


# -- orientations, writhe, linking ----------------------------------------------


def _passages(d: Diagram):
    """Canonically oriented circles and, per crossing, its two entry slots
    tagged with the circle that uses them."""
    if d.vertices():
        raise NotALinkError("orientations here are for link diagrams only")
    _, circles = d.strands()
    info: dict[int, list[tuple[int, int]]] = {}
    for ci, entries in enumerate(circles):
        for n, s in entries:
            info.setdefault(n, []).append((ci, s))
    return circles, info


def _sign(d: Diagram, n: int, entries: list[tuple[int, int]]) -> int:
    (_, s1), (_, s2) = entries
    o = d.nodes[n].over
    if s1 % 2 == o:
        over_in, under_in = s1, s2
    else:
        over_in, under_in = s2, s1
    over_exit = (over_in + 2) % 4
    under_exit = (under_in + 2) % 4
    return 1 if under_exit == (over_exit + 1) % 4 else -1


def writhe(d: Diagram) -> int:
    _, info = _passages(d)
    return sum(_sign(d, n, ent) for n, ent in info.items())


def linking_numbers(d: Diagram) -> dict[tuple[int, int], int]:
    """Pairwise linking numbers of the circles, canonically oriented.

    Circles are indexed in the order of ``strands()``; free loops (which
    link nothing) take the last indices.  Pairs that never share a
    crossing are omitted: an absent key means linking number zero.
    """
    circles, info = _passages(d)
    sums: dict[tuple[int, int], int] = {}
    for n, ent in info.items():
        (c1, _), (c2, _) = ent
        if c1 == c2:
            continue
        key = (min(c1, c2), max(c1, c2))
        sums[key] = sums.get(key, 0) + _sign(d, n, ent)
    for key, v in sums.items():
        if v % 2:
            raise TopologyError("odd crossing count between two circles")
        sums[key] = v // 2
    return sums


def linking_number(d: Diagram) -> int:
    """Linking number of a two-component link diagram."""
    circles, _ = _passages(d)
    if len(circles) + d.free_loops != 2:
        raise NotALinkError("linking number needs exactly two components")
    if d.free_loops:
        return 0
    return linking_numbers(d).get((0, 1), 0)


# -- diagram shape predicates ------------------------------------------------------


def is_alternating(d: Diagram) -> bool:
    """Along every strand, over- and under-passages alternate.

    Arcs incident to graph vertices impose no constraint; only
    crossing-to-crossing arcs must join an over-end to an under-end.
    """
    for (n1, s1), (n2, s2) in d.arcs:
        if d.is_crossing(n1) and d.is_crossing(n2):
            if (s1 % 2 == d.nodes[n1].over) == (s2 % 2 == d.nodes[n2].over):
                return False
    return True


def is_reduced(d: Diagram) -> bool:
    """No nugatory crossing.

    A crossing is nugatory when a simple closed curve meets the diagram in
    that crossing alone — equivalently, when it carries a self-arc or cuts
    its projection component in two.
    """
    g = nx.Graph()
    g.add_nodes_from(range(len(d.nodes)))
    for (n1, _), (n2, _) in d.arcs:
        if n1 == n2:
            if d.is_crossing(n1):
                return False
        else:
            g.add_edge(n1, n2)
    cuts = set(nx.articulation_points(g))
    return not any(n in cuts for n in d.crossings())


# -- span bounds -----------------------------------------------------------------


def span_lower_bound(d: Diagram, max_crossings: int = 20) -> int:
    """Crossing-number lower bound from the bracket span, for diagrams with
    a single connected component.  (The bound is unsound for split diagrams:
    each extra split part inflates the span by 4.)"""
    if len(d.components()) + d.free_loops != 1:
        raise DisconnectedError("span bound requires a connected diagram")
    return (kauffman_bracket(d, max_crossings).span + 3) // 4


def component_span_lower_bound(d: Diagram, max_crossings: int = 20) -> int:
    """Sum of per-component span bounds (sound for split diagrams)."""
    return sum(
        span_lower_bound(part, max_crossings) for part in d.split_components()
    )


# -- cycle-based obstructions ----------------------------------------------------


def simple_cycles(g: Multigraph, max_cycles: int = 100_000) -> list[list[int]]:
    """Every simple cycle, as an ordered list of edge indices.

    Loop edges are 1-cycles and parallel pairs are 2-cycles.  Each cycle
    appears once (direction and starting point are quotiented out).
    """
    cycles: list[list[int]] = []
    seen: set[frozenset[int]] = set()

    def record(path: list[int]) -> None:
        key = frozenset(path)
        if key not in seen:
            seen.add(key)
            cycles.append(list(path))
            if len(cycles) > max_cycles:
                raise SizeLimitExceeded("too many cycles to enumerate")

    for i in range(g.edge_count):
        if g.is_loop(i):
            record([i])

    def extend(root: int, current: int, blocked: set[int], path: list[int]) -> None:
        for e in g.incident_edges(current):
            if e in path or g.is_loop(e):
                continue
            w = g.other_end(e, current)
            if w == root and path:
                record(path + [e])
            elif w > root and w not in blocked:
                extend(root, w, blocked | {w}, path + [e])

    for root in range(g.vertex_count):
        extend(root, root, {root}, [])
    return sorted(cycles, key=lambda c: (len(c), c))


def cycle_vertices(g: Multigraph, cycle: list[int]) -> set[int]:
    out: set[int] = set()
    for e in cycle:
        u, v = g.endpoints(e)
        out.add(u)
        out.add(v)
    return out


def disjoint_cycle_pairs(g: Multigraph, cycles=None):
    cycles = simple_cycles(g) if cycles is None else cycles
    for c1, c2 in itertools.combinations(cycles, 2):
        if cycle_vertices(g, c1) & cycle_vertices(g, c2):
            continue
        yield c1, c2


# -- crossing-number estimation ---------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    """Why the crossing number is at least ``bound``."""

    kind: str  # "nonplanar-graph" | "linked-cycles" | "sublink-span" | "exhausted-search"
    bound: int
    cycles: tuple[tuple[int, ...], ...] = ()
    value: int = 0  # linking number or span, depending on kind

    def to_json(self):
        return {
            "kind": self.kind,
            "bound": self.bound,
            "cycles": [list(c) for c in self.cycles],
            "value": self.value,
        }


def _sublink_obstructions(
    projection: GraphProjection, max_crossings: int = 20, stop_when: int | None = None
):
    """Obstructions from links carried by cycles of the underlying graph.

    Cheap evidence comes first: linking numbers of disjoint cycle pairs,
    then bracket spans of single cycles, then spans of the unlinked pairs.
    With ``stop_when`` the scan returns as soon as some obstruction reaches
    that bound.
    """
    g = projection.graph
    cycles = simple_cycles(g)
    out: list[Obstruction] = []

    def satisfied() -> bool:
        return stop_when is not None and any(o.bound >= stop_when for o in out)

    unlinked: list[tuple[list[int], list[int], Diagram]] = []
    for c1, c2 in disjoint_cycle_pairs(g, cycles):
        try:
            sub = extract_sublink(projection, [c1, c2])
        except TopologyError:
            continue
        lk = linking_numbers(sub)
        total = sum(abs(v) for v in lk.values())
        if total >= 1:
            out.append(
                Obstruction("linked-cycles", 2 * total, (tuple(c1), tuple(c2)), total)
            )
            if satisfied():
                return out
        else:
            unlinked.append((c1, c2, sub))
    for cycle in cycles:
        try:
            sub = extract_sublink(projection, [cycle])
        except TopologyError:
            continue
        bound = component_span_lower_bound(sub, max_crossings)
        if bound > 0:
            out.append(
                Obstruction("sublink-span", bound, (tuple(cycle),),
                            kauffman_bracket(sub, max_crossings).span)
            )
            if satisfied():
                return out
    for c1, c2, sub in unlinked:
        bound = component_span_lower_bound(sub, max_crossings)
        if bound >= 2:
            out.append(
                Obstruction("sublink-span", bound, (tuple(c1), tuple(c2)), -1)
            )
            if satisfied():
                return out
    return out


@dataclass(frozen=True)
class CrossingNumberReport:
    value: int | None
    lower_bound: int
    upper_bound: int
    conclusive: bool
    cap_relative: bool  # conclusive only among diagrams within the crossing cap
    crossing_cap: int
    states: int
    obstructions: tuple[Obstruction, ...]
    notes: tuple[str, ...]

    def to_json(self):
        return {
            "value": self.value,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "conclusive": self.conclusive,
            "cap_relative": self.cap_relative,
            "crossing_cap": self.crossing_cap,
            "states": self.states,
            "obstructions": [o.to_json() for o in self.obstructions],
            "notes": list(self.notes),
        }


def lower_bound_obstructions(
    d: Diagram, max_crossings: int = 20, stop_when: int | None = None
) -> tuple[int, tuple[Obstruction, ...]]:
    projection = d.underlying_graph()
    obstructions: list[Obstruction] = []

    def best() -> int:
        return max((o.bound for o in obstructions), default=0)

    if not projection.graph.is_planar():
        obstructions.append(Obstruction("nonplanar-graph", 1))
    if not d.vertices() and (d.components() or d.free_loops):
        # a pure link diagram bounds itself through its own span
        bound = component_span_lower_bound(d, max_crossings)
        if bound > 0:
            obstructions.append(Obstruction("sublink-span", bound, (), -1))
    if stop_when is None or best() < stop_when:
        obstructions.extend(
            _sublink_obstructions(projection, max_crossings, stop_when)
        )
    return best(), tuple(obstructions)


def crossing_number(d: Diagram, budget: Budget | None = None) -> CrossingNumberReport:
    """Minimal crossings over diagrams move-equivalent to ``d``.

    The answer is conclusive when the search's upper bound meets a lower
    bound, or (flagged ``cap_relative``) when the whole reachable set under
    the crossing cap was exhausted without meeting it.
    """
    budget = budget or Budget()
    notes: list[str] = []
    ub = d.crossing_count
    lb, obstructions = lower_bound_obstructions(d, stop_when=ub)
    if ub <= lb:
        notes.append("diagram already meets its lower bound; no search needed")
        return CrossingNumberReport(
            value=ub,
            lower_bound=lb,
            upper_bound=ub,
            conclusive=True,
            cap_relative=False,
            crossing_cap=budget.max_crossings,
            states=0,
            obstructions=obstructions,
            notes=tuple(notes),
        )
    result = search_min_crossings(d, budget, stop_at=lb)
    found = result.best.crossing_count
    if found <= lb:
        notes.append("search met the lower bound")
        return CrossingNumberReport(
            value=found,
            lower_bound=lb,
            upper_bound=found,
            conclusive=True,
            cap_relative=False,
            crossing_cap=budget.max_crossings,
            states=result.states,
            obstructions=obstructions,
            notes=tuple(notes),
        )
    if result.exhausted:
        notes.append(
            f"exhausted every diagram reachable with at most "
            f"{budget.max_crossings} crossings"
        )
        return CrossingNumberReport(
            value=found,
            lower_bound=lb,
            upper_bound=found,
            conclusive=True,
            cap_relative=True,
            crossing_cap=budget.max_crossings,
            states=result.states,
            obstructions=obstructions,
            notes=tuple(notes),
        )
    notes.append("state budget exhausted before the search finished")
    return CrossingNumberReport(
        value=None,
        lower_bound=lb,
        upper_bound=found,
        conclusive=False,
        cap_relative=False,
        crossing_cap=budget.max_crossings,
        states=result.states,
        obstructions=obstructions,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class CrTwoResult:
    holds: bool | None  # None: inconclusive within budget
    certificate: Obstruction | None
    states: int = 0
    notes: tuple[str, ...] = ()

    def to_json(self):
        return {
            "holds": self.holds,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "states": self.states,
            "notes": list(self.notes),
        }


def cr_at_least_two(
    d: Diagram, budget: Budget | None = None, search: bool = True
) -> CrTwoResult:
    """Certify that every diagram equivalent to ``d`` has at least two
    crossings (or refute it, or give up within budget).

    Obstructions (linked cycles, sublink spans) are tried first and hold
    unconditionally.  The move search behind ``search=True`` can addition-
    ally refute the claim or certify it relative to the crossing cap; with
    ``search=False`` the answer is ``None`` whenever no obstruction bites.
    """
    budget = budget or Budget()
    if d.crossing_count <= 1:
        return CrTwoResult(False, None, notes=("diagram itself has few crossings",))
    lb, obstructions = lower_bound_obstructions(d, stop_when=2)
    for o in obstructions:
        if o.bound >= 2:
            return CrTwoResult(True, o)
    if not search:
        return CrTwoResult(None, None, notes=("no obstruction; search not attempted",))
    result = search_min_crossings(d, budget, stop_at=1)
    found = result.best.crossing_count
    if found <= 1:
        return CrTwoResult(
            False, None, result.states, ("search found a small diagram",)
        )
    if result.exhausted:
        cert = Obstruction("exhausted-search", 2, (), found)
        return CrTwoResult(
            True,
            cert,
            result.states,
            (
                f"no diagram with under two crossings is reachable within "
                f"the {budget.max_crossings}-crossing cap",
            ),
        )
    return CrTwoResult(None, None, result.states, ("state budget exhausted",))
