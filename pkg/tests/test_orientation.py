"""AOF / Holt-Klee tests and canonicalization.

The d=4 and d=6 reference orders below are frozen test data; they double
as the published representatives the acceptance suite matches against.
"""

import random
from itertools import product

import pytest

from monopath.orientation import (
    HamiltonOrder,
    Orientation,
    _max_vertex_disjoint_paths,
    canonical_form,
    format_order,
    is_aof,
    is_hk,
    orient_by_order,
    orientation_from_ranks,
    parse_order,
)
from monopath.polytope import (
    Parameters,
    dual_graph,
    face_table,
    faces_of_dimension,
    symmetry_group,
)

P2 = Parameters(2, 5)
P4 = Parameters(4, 7)
P6 = Parameters(6, 9)

REFERENCE_D4_ORDER = (
    "145 < 147 < 127 < 125 < 123 < 236 < 234 < 345 < 347 < 367 < 167 < 567 < 256 < 456"
)

# 0-based label sequences for the six d=6 classes
REFERENCE_D6_ORDERS = [
    "458 < 258 < 238 < 278 < 478 < 078 < 058 < 038 < 018 < 014 < 012 < 016 < 036 < 034 < 345 <"
    " 234 < 347 < 147 < 127 < 167 < 678 < 367 < 567 < 056 < 456 < 256 < 236 < 123 < 125 < 145",
    "038 < 238 < 123 < 236 < 234 < 034 < 345 < 347 < 478 < 147 < 014 < 018 < 012 < 016 < 036 <"
    " 367 < 167 < 678 < 567 < 056 < 256 < 456 < 145 < 458 < 058 < 258 < 125 < 127 < 278 < 078",
    "038 < 238 < 236 < 036 < 016 < 056 < 256 < 567 < 367 < 167 < 678 < 078 < 278 < 478 < 147 <"
    " 127 < 123 < 012 < 125 < 258 < 058 < 458 < 456 < 145 < 345 < 347 < 234 < 034 < 014 < 018",
    "038 < 238 < 236 < 036 < 016 < 056 < 256 < 567 < 367 < 167 < 678 < 278 < 078 < 478 < 147 <"
    " 127 < 123 < 012 < 125 < 258 < 058 < 458 < 456 < 145 < 345 < 347 < 234 < 034 < 014 < 018",
    "038 < 058 < 258 < 125 < 256 < 056 < 456 < 458 < 145 < 345 < 034 < 234 < 347 < 147 < 014 <"
    " 018 < 012 < 016 < 036 < 236 < 367 < 567 < 167 < 678 < 478 < 078 < 278 < 127 < 123 < 238",
    "018 < 058 < 458 < 258 < 125 < 012 < 127 < 278 < 078 < 038 < 238 < 123 < 234 < 034 < 345 <"
    " 347 < 478 < 147 < 014 < 145 < 456 < 256 < 236 < 036 < 367 < 678 < 567 < 167 < 016 < 056",
]


def reference_d6_orders():
    return [parse_order(t, zero_based=True) for t in REFERENCE_D6_ORDERS]


def test_parse_format_round_trip():
    h = parse_order(REFERENCE_D4_ORDER)
    assert format_order(h) == REFERENCE_D4_ORDER
    assert h.sequence[0] == (1, 4, 5)
    for t in REFERENCE_D6_ORDERS:
        h6 = parse_order(t, zero_based=True)
        assert h6.sequence[0][0] >= 1  # shifted to 1-based internally
        assert format_order(h6, zero_based=True).split(" < ") == t.replace(" <  ", " < ").split(" < ")


def test_parse_rejects_malformed():
    with pytest.raises(ValueError):
        parse_order("145 < < 147")
    with pytest.raises(ValueError):
        parse_order("145 < 1x7")
    with pytest.raises(ValueError):
        parse_order("115")


def test_reference_d4_order_is_hamilton_aof_hk():
    g = dual_graph(P4)
    ft = face_table(P4)
    o = orient_by_order(g, parse_order(REFERENCE_D4_ORDER))
    assert is_aof(o, ft)
    assert is_hk(o, ft)


def test_reference_d6_orders_are_hamilton_aof_hk():
    # Sequence 6 of the frozen data is recorded exactly as found; it fails
    # the disjoint-paths condition (prism 3-face admits only 2 paths, checked
    # by brute force below), so only the first five are full positives here.
    # The enumeration suite derives the correct sixth class independently.
    g = dual_graph(P6)
    ft = face_table(P6)
    orders = reference_d6_orders()
    for h in orders[:5]:
        o = orient_by_order(g, h)
        assert is_aof(o, ft)
        assert is_hk(o, ft)
    o6 = orient_by_order(g, orders[5])
    assert is_aof(o6, ft)
    assert not is_hk(o6, ft)


def test_defective_sixth_order_fails_brute_force_disjoint_paths():
    """Independent confirmation that the sixth frozen sequence is not HK."""
    g = dual_graph(P6)
    ft = face_table(P6)
    o = orient_by_order(g, reference_d6_orders()[5])
    face = next(f for f in ft.faces(3) if f.defined_by == (2, 5, 7))
    members, mset = face.vertices, set(face.vertices)
    sinks = [p for p in members if not any(q in mset for q in o.out_neighbors(p))]
    sources = [p for p in members if not any(q in mset for q in o.in_neighbors(p))]
    arcs = [
        (p, q) for p in members for q in g.adjacency[p] if q in mset and o.rank[p] < o.rank[q]
    ]
    assert len(sinks) == 1 and len(sources) == 1
    assert not _brute_force_k_disjoint(members, arcs, sources[0], sinks[0], 3)


def test_reference_d6_canonical_forms_distinct():
    group = symmetry_group(P6)
    forms = {canonical_form(h, group).sequence for h in reference_d6_orders()}
    assert len(forms) == 6


def test_canonical_form_idempotent_and_orbit_invariant():
    group = symmetry_group(P4)
    h = parse_order(REFERENCE_D4_ORDER)
    base = canonical_form(h, group)
    assert canonical_form(base, group).sequence == base.sequence
    for g in group:
        assert canonical_form(h.relabeled(g), group).sequence == base.sequence
    assert canonical_form(h.reversed_(), group).sequence == base.sequence


def test_canonical_form_trivial_group_takes_lex_min_of_both_directions():
    h = parse_order(REFERENCE_D4_ORDER)
    identity = tuple(range(1, 8))
    c = canonical_form(h, [identity])
    assert c.sequence == min(h.sequence, tuple(reversed(h.sequence)))


def test_order_validation_rejects_non_hamilton():
    g = dual_graph(P4)
    seq = list(parse_order(REFERENCE_D4_ORDER).sequence)
    with pytest.raises(ValueError):
        orient_by_order(g, HamiltonOrder(tuple(seq[:-1])))  # missing a vertex
    seq2 = seq[:]
    seq2[0], seq2[5] = seq2[5], seq2[0]  # breaks adjacency
    with pytest.raises(ValueError):
        orient_by_order(g, HamiltonOrder(tuple(seq2)))


def pentagon_orientations():
    g = dual_graph(P2)
    edges = list(g.edges)
    for bits in product([0, 1], repeat=len(edges)):
        arcs = [(p, q) if b else (q, p) for (p, q), b in zip(edges, bits)]
        yield g, arcs


def topological_rank(vertices, arcs):
    out = {v: [] for v in vertices}
    indeg = {v: 0 for v in vertices}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    queue = sorted(v for v in vertices if indeg[v] == 0)
    order = []
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
        queue.sort()
    return None if len(order) != len(vertices) else {v: i for i, v in enumerate(order)}


def test_pentagon_exhaustive_classification():
    """All 32 edge orientations of the pentagon, classified directly against
    the unique-sink definition; the cycle has 30 acyclic ones, 20 AOFs."""
    ft = face_table(P2)
    n_acyclic = 0
    n_aof = 0
    for g, arcs in pentagon_orientations():
        rank = topological_rank(g.vertices, arcs)
        if rank is None:
            continue
        n_acyclic += 1
        o = orientation_from_ranks(g, rank)
        sinks = [v for v in g.vertices if not o.out_neighbors(v)]
        expected = len(sinks) == 1  # faces are the polygon, edges, vertices
        assert is_aof(o, ft) == expected
        n_aof += expected
    assert n_acyclic == 30
    assert n_aof == 20


def test_two_sinks_on_a_two_face_fails_aof():
    g = dual_graph(P4)
    ft = face_table(P4)
    quad = next(f for f in faces_of_dimension(P4, 2) if len(f.vertices) == 4)
    a, b, c, d_ = quad.vertices
    # order the 4-cycle around: a adjacent to two of b,c,d_
    nbrs = [v for v in (b, c, d_) if g.are_adjacent(a, v)]
    opposite = next(v for v in (b, c, d_) if v not in nbrs)
    rank = {}
    rank[a], rank[opposite] = 0, 1
    rank[nbrs[0]], rank[nbrs[1]] = 12, 13
    nxt = 2
    for v in g.vertices:
        if v not in rank:
            rank[v] = nxt
            nxt += 1
    assert not is_aof(orientation_from_ranks(g, rank), ft)


def _brute_force_k_disjoint(members, arcs, s, t, k):
    arcs_from = {v: [] for v in members}
    for u, v in arcs:
        arcs_from[u].append(v)
    paths = []

    def dfs(v, path):
        if v == t:
            paths.append(frozenset(path[1:-1]))
            return
        for w in arcs_from[v]:
            if w not in path:
                dfs(w, path + [w])

    dfs(s, [s])

    def pick(start, chosen):
        if len(chosen) == k:
            return True
        for i in range(start, len(paths)):
            if all(not (paths[i] & c) for c in chosen):
                if pick(i + 1, chosen + [paths[i]]):
                    return True
        return False

    return pick(0, [])


def test_max_flow_matches_brute_force_disjoint_paths_on_3_faces():
    g = dual_graph(P4)
    ft = face_table(P4)
    rng = random.Random(20240814)
    tested = 0
    disagreements = []
    for _ in range(120):
        perm = list(g.vertices)
        rng.shuffle(perm)
        o = orientation_from_ranks(g, {v: i for i, v in enumerate(perm)})
        for face in ft.faces(3):
            members = face.vertices
            mset = set(members)
            sinks = [p for p in members if not any(q in mset for q in o.out_neighbors(p))]
            sources = [p for p in members if not any(q in mset for q in o.in_neighbors(p))]
            if len(sinks) != 1 or len(sources) != 1:
                continue
            arcs = [
                (p, q)
                for p in members
                for q in g.adjacency[p]
                if q in mset and o.rank[p] < o.rank[q]
            ]
            flow = _max_vertex_disjoint_paths(members, arcs, sources[0], sinks[0], 3)
            brute = _brute_force_k_disjoint(members, arcs, sources[0], sinks[0], 3)
            tested += 1
            if (flow >= 3) != brute:
                disagreements.append((face, perm))
    assert tested >= 20
    assert not disagreements


def test_single_directed_path_has_no_three_disjoint_paths():
    members = [(1,), (2,), (3,), (4,)]
    arcs = [((1,), (2,)), ((2,), (3,)), ((3,), (4,))]
    assert _max_vertex_disjoint_paths(members, arcs, (1,), (4,), 3) == 1


def test_hk_returns_false_on_aof_with_weak_face():
    """The defective sixth d=6 sequence is a genuine AOF whose prism face
    admits only 2 disjoint paths; is_hk must reject it."""
    g = dual_graph(P6)
    ft = face_table(P6)
    o = orient_by_order(g, reference_d6_orders()[5])
    assert is_aof(o, ft)
    assert not is_hk(o, ft)
