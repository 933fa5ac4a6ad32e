"""Equivalence classes of Hamilton HK AOF orientations by pruned DFS.

Two engines produce the same class lists:

* a reference engine shaped exactly like the documented search node and
  prune predicate (readable, used to cross-validate),
* a fast engine over integer vertex indices with incremental per-face
  sink/source counters and per-3-face surviving-orientation lists.

Pruning is conservative: a partial path is cut only when no completion can
satisfy the unique-sink/source conditions (some face already has two definite
sinks or two definite sources) or when some 3-face has no surviving valid
orientation left.  Complete paths are still re-verified with the public
is_aof / is_hk predicates before they count: the prunes imply AOF and the
3-face part of HK at depth |V|, but not the disjoint-path condition on faces
of dimension 4 and up.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .orientation import (
    HamiltonOrder,
    canonical_form,
    derived_two_faces,
    is_aof,
    is_hk,
    orient_by_order,
    _max_vertex_disjoint_paths,
)
from .polytope import (
    DualGraph,
    FaceTable,
    Label,
    Parameters,
    Perm,
    apply_perm,
    dual_graph,
    face_table,
    symmetry_group,
    vertex_orbits,
)


class BudgetExceeded(RuntimeError):
    """Search hit its node budget; carries partial progress, never silent."""

    def __init__(self, nodes: int, classes_so_far: int):
        super().__init__(
            f"enumeration stopped after {nodes} search nodes with "
            f"{classes_so_far} classes found so far; raise the budget to finish"
        )
        self.nodes = nodes
        self.classes_so_far = classes_so_far


@dataclass
class EnumerationResult:
    params: Parameters
    classes: list[HamiltonOrder]  # sorted canonical representatives
    raw_leaves: Optional[list[HamiltonOrder]]  # all valid paths when requested
    raw_leaf_count: Optional[int]
    nodes: int
    seconds: float
    quotient: str = "auto"


def resolve_quotient(params: Parameters, quotient: Optional[str]) -> str:
    """Pick the equivalence used to collapse orientations into classes.

    "symmetry" quotients by the full combinatorial symmetry group together
    with global orientation reversal; "reversal" quotients by reversal alone.
    The default (None / "auto") reproduces the classification counts
    7 / 1298 / 6 for d = 4 / 5 / 6: full symmetry for even d, but reversal
    only for odd d.  The odd-d symmetry group is nontrivial (order 4 at
    d = 5, where it would collapse the 1298 classes further to 330), so the
    choice genuinely matters and is therefore explicit and recorded on the
    result.
    """
    if quotient in (None, "auto"):
        return "symmetry" if params.d % 2 == 0 else "reversal"
    if quotient in ("symmetry", "reversal"):
        return quotient
    raise ValueError(f"unknown quotient: {quotient!r}")


# ---------------------------------------------------------------------------
# Precomputed search context
# ---------------------------------------------------------------------------


def _valid_three_face_masks(
    members: tuple[int, ...],
    face_edges: list[tuple[int, int]],
    sub_two_faces: list[tuple[int, ...]],
) -> list[int]:
    """All orientations of one 3-face that a valid full orientation could
    induce on it: acyclic, unique sink and source on the face and on each of
    its polygon subfaces, and 3 vertex-disjoint source-to-sink paths.

    Bit b of a mask is set iff face edge b points from its lower-indexed
    endpoint to its higher-indexed one.
    """
    nbits = len(face_edges)
    member_list = list(members)
    out: list[int] = []
    for mask in range(1 << nbits):
        arcs = []
        for b, (u, v) in enumerate(face_edges):
            arcs.append((u, v) if (mask >> b) & 1 else (v, u))
        outs: dict[int, list[int]] = {v: [] for v in member_list}
        indeg = {v: 0 for v in member_list}
        for u, v in arcs:
            outs[u].append(v)
            indeg[v] += 1
        src_candidates = [v for v in member_list if indeg[v] == 0]
        snk_candidates = [v for v in member_list if not outs[v]]
        if len(src_candidates) != 1 or len(snk_candidates) != 1:
            continue
        # acyclicity by Kahn's algorithm
        remaining = dict(indeg)
        queue = list(src_candidates)
        seen = 0
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            seen += 1
            for v in outs[u]:
                remaining[v] -= 1
                if remaining[v] == 0:
                    queue.append(v)
        if seen != len(member_list):
            continue
        ok = True
        for fverts in sub_two_faces:
            fset = set(fverts)
            sinks = sources = 0
            for v in fverts:
                if not any(b in fset for b in outs[v]):
                    sinks += 1
                if not any(v in outs[b] for b in fverts if b != v):
                    sources += 1
            if sinks != 1 or sources != 1:
                ok = False
                break
        if not ok:
            continue
        if _max_vertex_disjoint_paths(
            member_list, arcs, src_candidates[0], snk_candidates[0], 3
        ) < 3:
            continue
        out.append(mask)
    return out


@dataclass
class _Context:
    params: Parameters
    graph: DualGraph
    faces: FaceTable
    group: list[Perm]
    verts: list[Label]
    vindex: dict[Label, int]
    adj: list[list[int]]
    # flat per-(face, member) counter layout over faces of dimension 2..d
    face_members: list[tuple[int, ...]]
    two_face_count: int
    deg_flat: list[int]
    # per directed pair (u, w): [(face id, flat slot of u, flat slot of w)]
    edge_faces: dict[tuple[int, int], list[tuple[int, int, int]]]
    # three-face surviving-orientation machinery
    lf_masks: list[list[int]]
    lf_edge_lists: list[list[tuple[int, int]]]
    lf_edges: dict[tuple[int, int], list[tuple[int, int]]]  # (u,w)->[(f3,bit)]
    lf_face_verts: list[tuple[int, ...]]
    perm_index_maps: list[list[int]]
    start_indices: list[int]


_CONTEXT_CACHE: dict[tuple[int, int], _Context] = {}


def _build_context(params: Parameters) -> _Context:
    key = (params.d, params.n)
    if key in _CONTEXT_CACHE:
        return _CONTEXT_CACHE[key]
    graph = dual_graph(params)
    faces = face_table(params)
    group = symmetry_group(params)
    verts = list(graph.vertices)
    vindex = {v: i for i, v in enumerate(verts)}
    adj = [sorted(vindex[q] for q in graph.adjacency[v]) for v in verts]

    all_faces: list[tuple[int, ...]] = []
    two_faces_idx: list[tuple[int, ...]] = []
    for f in derived_two_faces(params):
        members = tuple(sorted(vindex[p] for p in f.vertices))
        all_faces.append(members)
        two_faces_idx.append(members)
    two_face_count = len(two_faces_idx)
    three_faces_idx: list[tuple[int, ...]] = []
    for k in range(3, params.d + 1):
        for f in faces.faces(k):
            members = tuple(sorted(vindex[p] for p in f.vertices))
            all_faces.append(members)
            if k == 3:
                three_faces_idx.append(members)

    member_sets = [set(m) for m in all_faces]
    slot_of: list[dict[int, int]] = []
    deg_flat: list[int] = []
    base = 0
    for members, mset in zip(all_faces, member_sets):
        smap = {}
        for j, v in enumerate(members):
            smap[v] = base + j
            deg_flat.append(sum(1 for q in adj[v] if q in mset))
        slot_of.append(smap)
        base += len(members)

    edge_faces: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for p, q in graph.edges:
        u, w = vindex[p], vindex[q]
        lst = []
        for fid, mset in enumerate(member_sets):
            if u in mset and w in mset:
                lst.append((fid, slot_of[fid][u], slot_of[fid][w]))
        edge_faces[(u, w)] = lst
        edge_faces[(w, u)] = [(fid, sw, su) for fid, su, sw in lst]

    lf_masks: list[list[int]] = []
    lf_edge_lists: list[list[tuple[int, int]]] = []
    lf_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for f3, members in enumerate(three_faces_idx):
        mset = set(members)
        fedges = sorted(
            (u, w) for u in members for w in adj[u] if w in mset and u < w
        )
        subtwo = [t for t in two_faces_idx if set(t) <= mset]
        lf_masks.append(_valid_three_face_masks(members, fedges, subtwo))
        lf_edge_lists.append(fedges)
        for b, (u, w) in enumerate(fedges):
            lf_edges.setdefault((u, w), []).append((f3, b))
            lf_edges.setdefault((w, u), []).append((f3, b))

    ctx = _Context(
        params=params,
        graph=graph,
        faces=faces,
        group=group,
        verts=verts,
        vindex=vindex,
        adj=adj,
        face_members=all_faces,
        two_face_count=two_face_count,
        deg_flat=deg_flat,
        edge_faces=edge_faces,
        lf_masks=lf_masks,
        lf_edge_lists=lf_edge_lists,
        lf_edges=lf_edges,
        lf_face_verts=[tuple(m) for m in three_faces_idx],
        perm_index_maps=[
            [vindex[apply_perm(g, v)] for v in verts] for g in group
        ],
        start_indices=sorted(
            vindex[orbit[0]] for orbit in vertex_orbits(params, group)
        ),
    )
    _CONTEXT_CACHE[key] = ctx
    return ctx


def _canonical_indices(
    seq: Sequence[int], perm_maps: list[list[int]]
) -> tuple[int, ...]:
    # vertex indices follow the lexicographic order of the labels, so
    # comparing index sequences matches the label-level canonical form
    best = None
    for pm in perm_maps:
        mapped = tuple(pm[v] for v in seq)
        rev = mapped[::-1]
        if best is None or mapped < best:
            best = mapped
        if rev < best:
            best = rev
    return best


# ---------------------------------------------------------------------------
# Fast engine
# ---------------------------------------------------------------------------


def _search_fast(
    ctx: _Context,
    starts: Iterable[int],
    budget: Optional[int],
    collect_raw: bool,
) -> tuple[set[tuple[int, ...]], list[tuple[int, ...]], int]:
    nverts = len(ctx.verts)
    adj = ctx.adj
    edge_faces = ctx.edge_faces
    lf_edges = ctx.lf_edges
    deg_flat = ctx.deg_flat

    in_cnt = [0] * len(deg_flat)
    out_cnt = [0] * len(deg_flat)
    sink_cnt = [0] * len(ctx.face_members)
    source_cnt = [0] * len(ctx.face_members)
    lf_lists = [list(masks) for masks in ctx.lf_masks]
    lf_alive = [len(masks) for masks in ctx.lf_masks]

    classes: set[tuple[int, ...]] = set()
    raw: list[tuple[int, ...]] = []
    nodes = 0
    graph = ctx.graph
    faces = ctx.faces
    verts = ctx.verts
    perm_maps = ctx.perm_index_maps

    visited = [False] * nverts
    path: list[int] = []
    no_lf = ()

    def leaf() -> None:
        order = HamiltonOrder(tuple(verts[i] for i in path))
        o = orient_by_order(graph, order)
        assert is_aof(o, faces), "face counters should guarantee AOF at depth |V|"
        if not is_hk(o, faces):
            return  # disjoint paths can still fail on faces of dimension >= 4
        classes.add(_canonical_indices(path, perm_maps))
        if collect_raw:
            raw.append(tuple(path))

    def extend(w: int) -> None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(nodes, len(classes))

        # orient every edge from a visited vertex toward w, updating the
        # definite sink/source counters of each face containing that edge
        # and filtering the surviving-orientation lists of 3-faces
        journal_out: list[int] = []
        journal_in: list[int] = []
        journal_face_sink: list[int] = []
        journal_face_source: list[int] = []
        journal_lf: list[tuple[int, int]] = []
        dead = False
        for u in adj[w]:
            if not visited[u]:
                continue
            for fid, su, sw in edge_faces[(u, w)]:
                out_cnt[su] += 1
                journal_out.append(su)
                if out_cnt[su] == deg_flat[su]:
                    source_cnt[fid] += 1
                    journal_face_source.append(fid)
                    if source_cnt[fid] >= 2:
                        dead = True
                in_cnt[sw] += 1
                journal_in.append(sw)
                if in_cnt[sw] == deg_flat[sw]:
                    sink_cnt[fid] += 1
                    journal_face_sink.append(fid)
                    if sink_cnt[fid] >= 2:
                        dead = True
            if dead:
                break
            req = 1 if u < w else 0
            for f3, bit in lf_edges.get((u, w), no_lf):
                alive = lf_alive[f3]
                lst = lf_lists[f3]
                i = 0
                while i < alive:
                    if (lst[i] >> bit) & 1 == req:
                        i += 1
                    else:
                        alive -= 1
                        lst[i], lst[alive] = lst[alive], lst[i]
                if alive != lf_alive[f3]:
                    journal_lf.append((f3, lf_alive[f3]))
                    lf_alive[f3] = alive
                    if alive == 0:
                        dead = True
                        break
            if dead:
                break

        if not dead:
            visited[w] = True
            path.append(w)
            if len(path) == nverts:
                leaf()
            else:
                for nxt in adj[w]:
                    if not visited[nxt]:
                        extend(nxt)
            path.pop()
            visited[w] = False

        # the same 3-face may appear twice in one append; restore in reverse
        for f3, old in reversed(journal_lf):
            lf_alive[f3] = old
        for fid in journal_face_sink:
            sink_cnt[fid] -= 1
        for fid in journal_face_source:
            source_cnt[fid] -= 1
        for s in journal_out:
            out_cnt[s] -= 1
        for s in journal_in:
            in_cnt[s] -= 1

    for s in starts:
        extend(s)
    return classes, raw, nodes


# ---------------------------------------------------------------------------
# Reference engine: the documented SearchNode / prune_check shape
# ---------------------------------------------------------------------------


@dataclass
class SearchNode:
    """Partial Hamilton path plus per-3-face surviving orientations.

    surviving maps each 3-face id to the orientation masks (over that face's
    sorted edge list) still consistent with the edges the path has oriented.
    """

    path: tuple[Label, ...]
    surviving: dict[int, tuple[int, ...]]


def root_node(params: Parameters, start: Label) -> SearchNode:
    ctx = _build_context(params)
    return SearchNode(
        path=(start,),
        surviving={f3: tuple(m) for f3, m in enumerate(ctx.lf_masks)},
    )


def _oriented_arcs(ctx: _Context, path: Sequence[Label]) -> set[tuple[int, int]]:
    pos = {ctx.vindex[p]: i for i, p in enumerate(path)}
    arcs = set()
    for u in pos:
        for w in ctx.adj[u]:
            if w in pos and pos[u] < pos[w]:
                arcs.add((u, w))
    return arcs


def _filter_masks(
    ctx: _Context, f3: int, masks: Sequence[int], path: Sequence[Label]
) -> tuple[int, ...]:
    pos = {ctx.vindex[p]: i for i, p in enumerate(path)}
    constraints = []
    for b, (u, w) in enumerate(ctx.lf_edge_lists[f3]):
        if u in pos and w in pos:
            constraints.append((b, 1 if pos[u] < pos[w] else 0))
    return tuple(
        m for m in masks if all((m >> b) & 1 == req for b, req in constraints)
    )


def prune_check(
    node: SearchNode, new_edge: tuple[Label, Label], params: Parameters
) -> bool:
    """True iff appending new_edge survives all three conservative criteria:

    (i)   no 2-face acquires two definite sinks or two definite sources,
    (ii)  no interior vertex has all its graph edges oriented with in- or
          out-degree zero while not being the corresponding end of the path,
    (iii) every 3-face keeps at least one surviving valid orientation.
    """
    tail, head = new_edge
    if node.path[-1] != tail:
        raise ValueError("new_edge must extend the end of the path")
    if head in node.path:
        raise ValueError("new_edge head already on the path")
    ctx = _build_context(params)
    path = node.path + (head,)
    arcs = _oriented_arcs(ctx, path)
    visited = {ctx.vindex[p] for p in path}

    # (i) definite double sinks / double sources on a 2-face
    for members in ctx.face_members[: ctx.two_face_count]:
        sinks = sources = 0
        for v in members:
            if v not in visited:
                continue
            incident = [q for q in ctx.adj[v] if q in members]
            if all(q in visited for q in incident):
                if all((q, v) in arcs for q in incident):
                    sinks += 1
                if all((v, q) in arcs for q in incident):
                    sources += 1
        if sinks >= 2 or sources >= 2:
            return False

    # (ii) stranded interior vertex
    first, last = ctx.vindex[path[0]], ctx.vindex[path[-1]]
    for v in visited:
        if all(q in visited for q in ctx.adj[v]):
            outdeg = sum(1 for q in ctx.adj[v] if (v, q) in arcs)
            if outdeg == 0 and v != last:
                return False
            if outdeg == len(ctx.adj[v]) and v != first:
                return False

    # (iii) some 3-face loses its last surviving orientation
    for f3, masks in node.surviving.items():
        if not _filter_masks(ctx, f3, masks, path):
            return False
    return True


def extend_node(
    node: SearchNode, new_edge: tuple[Label, Label], params: Parameters
) -> SearchNode:
    ctx = _build_context(params)
    path = node.path + (new_edge[1],)
    return SearchNode(
        path=path,
        surviving={
            f3: _filter_masks(ctx, f3, masks, path)
            for f3, masks in node.surviving.items()
        },
    )


def _search_reference(
    params: Parameters, starts: Iterable[Label]
) -> set[tuple[Label, ...]]:
    """Readable engine used to cross-validate the fast one (small d only)."""
    ctx = _build_context(params)
    graph = ctx.graph
    faces = ctx.faces
    found: set[tuple[Label, ...]] = set()

    def rec(node: SearchNode) -> None:
        if len(node.path) == len(graph.vertices):
            order = HamiltonOrder(node.path)
            o = orient_by_order(graph, order)
            if is_aof(o, faces) and is_hk(o, faces):
                found.add(canonical_form(order, ctx.group).sequence)
            return
        tail = node.path[-1]
        for q in graph.adjacency[tail]:
            if q in node.path:
                continue
            edge = (tail, q)
            if prune_check(node, edge, params):
                rec(extend_node(node, edge, params))

    for s in starts:
        rec(root_node(params, s))
    return found


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------


_PACKED_CACHE: dict = {}


def _search_compiled(
    ctx: _Context,
    starts: Sequence[int],
    budget: Optional[int],
    collect_raw: bool,
) -> tuple[set[tuple[int, ...]], list[tuple[int, ...]], int]:
    """Run the JIT kernel and re-verify its leaves with the public predicates."""
    from ._jit import PackedSearch

    key = (ctx.params.d, ctx.params.n)
    packed = _PACKED_CACHE.get(key)
    if packed is None:
        packed = PackedSearch(ctx)
        _PACKED_CACHE[key] = packed
    paths, nodes, exceeded = packed.run(starts, budget)

    classes: set[tuple[int, ...]] = set()
    raw: list[tuple[int, ...]] = []
    graph, faces, verts = ctx.graph, ctx.faces, ctx.verts
    for row in paths:
        path = tuple(int(i) for i in row)
        order = HamiltonOrder(tuple(verts[i] for i in path))
        o = orient_by_order(graph, order)
        assert is_aof(o, faces), "face counters should guarantee AOF at depth |V|"
        if not is_hk(o, faces):
            continue
        classes.add(_canonical_indices(path, ctx.perm_index_maps))
        if collect_raw:
            raw.append(path)
    if exceeded:
        raise BudgetExceeded(nodes, len(classes))
    return classes, raw, nodes


def _expand_to_reversal_classes(
    class_set: set[tuple[int, ...]], perm_maps: list[list[int]]
) -> set[tuple[int, ...]]:
    """Refine full-symmetry classes into reversal-only classes.

    The search guarantees one representative per symmetry-and-reversal class;
    the finer classes are recovered by expanding each representative's orbit
    under the symmetry group and keeping min(sequence, reversed sequence) of
    each image.  This is exact, not heuristic: every orientation in a class
    is a group image of the representative or of its reversal.
    """
    fine: set[tuple[int, ...]] = set()
    for seq in class_set:
        for pm in perm_maps:
            mapped = tuple(pm[v] for v in seq)
            rev = mapped[::-1]
            fine.add(min(mapped, rev))
    return fine


def enumerate_classes(
    params: Parameters,
    budget: Optional[int] = None,
    jobs: int = 1,
    raw: bool = False,
    engine: str = "compiled",
    quotient: Optional[str] = None,
) -> EnumerationResult:
    """All equivalence classes of Hamilton HK AOF orientations.

    With raw=True the search runs from every start vertex (no orbit
    restriction) and additionally returns every surviving full path before
    symmetry reduction.

    Engines: "compiled" (array-packed JIT kernel, default), "fast" (the same
    search in pure Python), "reference" (documented search-node shape; small
    d only).  All three produce identical results; the slower ones exist to
    cross-validate the faster ones.

    quotient: see resolve_quotient.  The search itself always reduces under
    full symmetry (orbit-restricted starts are complete for that), and the
    reversal-only classes are expanded from the result afterwards.
    """
    params.require_dual_cyclic()
    quotient = resolve_quotient(params, quotient)
    ctx = _build_context(params)
    t0 = time.perf_counter()
    starts = list(range(len(ctx.verts))) if raw else ctx.start_indices

    if engine == "compiled":
        from ._jit import HAVE_NUMBA

        if not HAVE_NUMBA:  # pragma: no cover - environment-dependent
            engine = "fast"

    if engine == "reference":
        found = _search_reference(params, [ctx.verts[i] for i in starts])
        class_idx = {tuple(ctx.vindex[lab] for lab in seq) for seq in found}
        if quotient == "reversal":
            class_idx = _expand_to_reversal_classes(class_idx, ctx.perm_index_maps)
        return EnumerationResult(
            params=params,
            classes=[
                HamiltonOrder(tuple(ctx.verts[i] for i in c))
                for c in sorted(class_idx)
            ],
            raw_leaves=None,
            raw_leaf_count=None,
            nodes=0,
            seconds=time.perf_counter() - t0,
            quotient=quotient,
        )
    if engine not in ("fast", "compiled"):
        raise ValueError(f"unknown engine: {engine!r}")

    if jobs > 1:
        class_set, raws, nodes = _run_parallel(params, starts, budget, raw, jobs)
    elif engine == "compiled":
        class_set, raws, nodes = _search_compiled(ctx, starts, budget, raw)
    else:
        class_set, raws, nodes = _search_fast(ctx, starts, budget, raw)

    if quotient == "reversal":
        class_set = _expand_to_reversal_classes(class_set, ctx.perm_index_maps)

    return EnumerationResult(
        params=params,
        classes=[
            HamiltonOrder(tuple(ctx.verts[i] for i in c))
            for c in sorted(class_set)
        ],
        raw_leaves=(
            [
                HamiltonOrder(tuple(ctx.verts[i] for i in leaf_path))
                for leaf_path in sorted(raws)
            ]
            if raw
            else None
        ),
        raw_leaf_count=len(raws) if raw else None,
        nodes=nodes,
        seconds=time.perf_counter() - t0,
        quotient=quotient,
    )


def _subtree_task(args: tuple[int, int, int, int, Optional[int], bool]):
    d, n, s, w, budget, raw = args
    ctx = _build_context(Parameters(d, n))
    saved = ctx.adj
    narrowed = [list(a) for a in saved]
    narrowed[s] = [w]
    ctx.adj = narrowed
    try:
        classes, raws, nodes = _search_fast(ctx, [s], budget, raw)
    finally:
        ctx.adj = saved
    return (sorted(classes), raws, nodes)


def _run_parallel(params, starts, budget, raw, jobs):
    from concurrent.futures import ProcessPoolExecutor

    ctx = _build_context(params)
    tasks = [
        (params.d, params.n, s, w, budget, raw)
        for s in starts
        for w in ctx.adj[s]
    ]
    class_set: set[tuple[int, ...]] = set()
    raws: list[tuple[int, ...]] = []
    nodes = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for cset, rws, nd in pool.map(_subtree_task, tasks):
            class_set.update(tuple(c) for c in cset)
            raws.extend(tuple(r) for r in rws)
            nodes += nd
    return class_set, sorted(set(raws)), nodes


def format_class_list(result: EnumerationResult, zero_based: bool = False) -> str:
    from .orientation import format_order

    lines = [str(len(result.classes))]
    lines += [format_order(h, zero_based) for h in result.classes]
    return "\n".join(lines) + "\n"
