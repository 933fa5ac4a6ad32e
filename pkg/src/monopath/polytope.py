"""Combinatorics of cyclic polytopes and their simple duals.

Ground set indices are 1-based everywhere inside the library; a rendering
option in the CLI shifts labels to 0-based output. For n = d+3 every vertex
of the dual polytope is named by the 3 indices its facet complement misses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

Label = tuple[int, ...]
Perm = tuple[int, ...]  # perm[i-1] is the image of i


@dataclass(frozen=True)
class Parameters:
    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if self.n < self.d + 1:
            raise ValueError(f"need more ground indices than the dimension, got n={self.n}, d={self.d}")

    @property
    def corank(self) -> int:
        return self.n - self.d

    def require_dual_cyclic(self) -> None:
        if self.n != self.d + 3:
            raise ValueError(f"pipeline requires n = d+3, got d={self.d}, n={self.n}")


def _gale_even(subset: frozenset[int], n: int) -> bool:
    outside = [i for i in range(1, n + 1) if i not in subset]
    for a, b in combinations(outside, 2):
        if sum(1 for s in subset if a < s < b) % 2:
            return False
    return True


def cyclic_facets(params: Parameters) -> list[Label]:
    """All facets of C_d(n): the d-subsets passing Gale's evenness criterion."""
    d, n = params.d, params.n
    return [s for s in combinations(range(1, n + 1), d) if _gale_even(frozenset(s), n)]


def vertex_labels(params: Parameters) -> list[Label]:
    """Vertices of the dual polytope, named by their facet complements."""
    params.require_dual_cyclic()
    full = range(1, params.n + 1)
    out = [tuple(i for i in full if i not in set(f)) for f in cyclic_facets(params)]
    return sorted(out)


@dataclass
class DualGraph:
    params: Parameters
    vertices: tuple[Label, ...]
    edges: tuple[tuple[Label, Label], ...]
    adjacency: dict[Label, tuple[Label, ...]] = field(repr=False)

    def are_adjacent(self, p: Label, q: Label) -> bool:
        return q in self.adjacency[p]


def dual_graph(params: Parameters) -> DualGraph:
    """Graph on vertex labels; two labels are adjacent iff they share 2 indices."""
    params.require_dual_cyclic()
    verts = vertex_labels(params)
    vert_set = set(verts)
    edges = []
    adjacency: dict[Label, list[Label]] = {v: [] for v in verts}
    for p, q in combinations(verts, 2):
        if len(set(p) & set(q)) == 2:
            edges.append((p, q))
            adjacency[p].append(q)
            adjacency[q].append(p)
    assert all(len(nb) == params.d for nb in adjacency.values()), "dual graph must be d-regular"
    g = DualGraph(
        params=params,
        vertices=tuple(verts),
        edges=tuple(edges),
        adjacency={v: tuple(sorted(nb)) for v, nb in adjacency.items()},
    )
    assert len(_component(g, verts[0])) == len(verts), "dual graph must be connected"
    assert vert_set == set(adjacency)
    return g


def _component(g: DualGraph, start: Label) -> set[Label]:
    seen = {start}
    stack = [start]
    while stack:
        for nb in g.adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


@dataclass(frozen=True)
class Face:
    defined_by: Label  # facet indices S whose intersection carves the face
    vertices: tuple[Label, ...]  # labels p with S disjoint from N_p


@dataclass
class FaceTable:
    params: Parameters
    by_dim: dict[int, tuple[Face, ...]]

    def faces(self, k: int) -> tuple[Face, ...]:
        return self.by_dim[k]

    def all_faces(self) -> Iterator[tuple[int, Face]]:
        for k in sorted(self.by_dim):
            for f in self.by_dim[k]:
                yield k, f


def faces_of_dimension(params: Parameters, k: int, labels: Iterable[Label] | None = None) -> tuple[Face, ...]:
    """Nonempty k-faces as vertex sets {p : S disjoint from N_p}, |S| = d-k,
    deduplicated by vertex set (distinct S can carve the same face)."""
    params.require_dual_cyclic()
    labels = list(labels) if labels is not None else vertex_labels(params)
    seen: dict[tuple[Label, ...], Label] = {}
    for s in combinations(range(1, params.n + 1), params.d - k):
        sset = set(s)
        members = tuple(p for p in labels if not sset & set(p))
        if not members:
            continue
        if members not in seen or s < seen[members]:
            seen[members] = s
    return tuple(Face(defined_by=seen[m], vertices=m) for m in sorted(seen))


def face_table(params: Parameters) -> FaceTable:
    """Faces of dimension 3..d. The 2-faces needed by orientation tests are
    derived on demand with the same construction at |S| = d-2."""
    params.require_dual_cyclic()
    labels = vertex_labels(params)
    by_dim = {k: faces_of_dimension(params, k, labels) for k in range(3, params.d + 1)}
    for f in by_dim.get(3, ()):
        assert len(f.vertices) >= 4, "a 3-face needs at least 4 vertices"
    return FaceTable(params=params, by_dim=by_dim)


def apply_perm(perm: Perm, label: Label) -> Label:
    return tuple(sorted(perm[i - 1] for i in label))


def symmetry_group(params: Parameters) -> list[Perm]:
    """All ground-set permutations preserving the facet family, by backtracking.

    Images are assigned index by index; a branch dies as soon as some fully
    mapped vertex label leaves the label family.
    """
    params.require_dual_cyclic()
    n = params.n
    labels = set(vertex_labels(params))
    by_index: dict[int, list[Label]] = {i: [] for i in range(1, n + 1)}
    for lab in labels:
        for i in lab:
            by_index[i].append(lab)

    group: list[Perm] = []
    img = [0] * (n + 1)  # img[i] = image of i, 0 = unset
    used = [False] * (n + 1)

    def extend(i: int) -> None:
        if i > n:
            group.append(tuple(img[1:]))
            return
        for target in range(1, n + 1):
            if used[target]:
                continue
            img[i] = target
            used[target] = True
            ok = True
            for lab in by_index[i]:
                if all(img[j] for j in lab):
                    if tuple(sorted(img[j] for j in lab)) not in labels:
                        ok = False
                        break
            if ok:
                extend(i + 1)
            img[i] = 0
            used[target] = False

    extend(1)
    group.sort()
    identity = tuple(range(1, n + 1))
    assert identity in group
    return group


def vertex_orbits(params: Parameters, group: list[Perm] | None = None) -> list[tuple[Label, ...]]:
    """Orbits of vertex labels under the symmetry group, sorted by representative."""
    group = group if group is not None else symmetry_group(params)
    labels = vertex_labels(params)
    remaining = set(labels)
    orbits = []
    for lab in labels:
        if lab not in remaining:
            continue
        orbit = {apply_perm(g, lab) for g in group}
        remaining -= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def facets_to_text(facets: Iterable[Label]) -> str:
    return "\n".join(",".join(str(i) for i in f) for f in facets) + "\n"


def graph_to_text(g: DualGraph) -> str:
    lines = ["vertices"]
    lines += [",".join(map(str, v)) for v in g.vertices]
    lines.append("edges")
    lines += ["%s|%s" % (",".join(map(str, p)), ",".join(map(str, q))) for p, q in g.edges]
    return "\n".join(lines) + "\n"
