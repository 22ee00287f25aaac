"""Knotted graph diagrams: rotation systems, moves, tangles, and crossing
number machinery for deciding when a graph has no flat embedding."""

from .criterion import (
    AdditivityReport,
    NonPlanarCertificate,
    Section3Report,
    additivity_check,
    certificate_from_json,
    check_nonplanar,
    condition_i,
    condition_ii,
    section3_crossing_number,
    verify_certificate,
)
from .diagram import (
    Crossing,
    Diagram,
    Vertex,
    connected_sum_diagrams,
    crossing_assignments,
    diagram_from_json,
    diagram_to_json,
    diagram_to_text,
    disjoint_union_diagrams,
    extract_sublink,
    mirror_diagram,
    parse_diagram,
)
from .errors import (
    BudgetExceeded,
    CyclesShareVertexError,
    DisconnectedError,
    FormatError,
    GraphKnotError,
    InvalidVertexError,
    LoopEdgeError,
    MoveNotApplicable,
    NotALinkError,
    SizeLimitExceeded,
    TopologyError,
    WrongDegreeError,
)
from .invariants import (
    LaurentPoly,
    crossing_number,
    cr_at_least_two,
    kauffman_bracket,
    linking_number,
    span_lower_bound,
    writhe,
)
from .invariants import (
    Obstruction,
    component_span_lower_bound,
    is_alternating,
    is_reduced,
    linking_numbers,
    lower_bound_obstructions,
    simple_cycles,
)
from .layout import base_diagram
from .moves import (
    Budget,
    ISOTOPY_KINDS,
    MOVE_KINDS,
    MoveSite,
    apply_move,
    cc_equivalent_within,
    descending_diagram,
    enumerate_moves,
    equivalent_within,
    replay_path,
    search_min_crossings,
    simplify,
)
from .multigraph import (
    AutGroup,
    Multigraph,
    Minimalizability,
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
from .tangle import RationalTangle, VertexOrientation, parse_conway, substitute
from . import gallery

__all__ = [name for name in dir() if not name.startswith("_")]
