"""Sign-level non-realizability certificates for Hamilton HK AOF classes.

Every directed dual-graph edge (p -> q) of a candidate orientation forces
the strict inequality z_p < z_q between intersection heights of any
extended Gale diagram inducing that orientation.  After zeroing the three
heights of one vertex-label triple (an admissible affine normalization,
valid because label triangles are non-degenerate), each difference
z_p - z_q becomes a linear form in the remaining free heights whose
coefficient signs are determined by the pair signs s and triple signs t
of the diagram alone.  When those signs alone guarantee a positive
combination of edge rows summing to the zero form, the system A h < 0 is
infeasible for every diagram consistent with the sign state at once --
a realization-space-wide Farkas certificate of non-realizability.

Signs that the forced state leaves open are handled by branching on a
triple-orientation literal with cases +, 0 and -; each case is closed
either by a sign contradiction under the deduction rules or by its own
zeroed triple and cancellation.  The result is a finite proof tree that
an independent checker (see ``checkcert``) can replay step by step.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .galediagram import (
    Deduction,
    Sign,
    SignState,
    _perm_parity,
    deduce_signs,
    forced_signs,
    shared_pair,
    sign_mul,
    sign_neg,
)
from .orientation import HamiltonOrder, check_hamilton_order, format_order
from .polytope import Label, Parameters, dual_graph, vertex_labels

Triple = tuple[int, int, int]

PROOF_FORMAT = "hk-aof-nonrealizability-proof/1"


# ---------------------------------------------------------------------------
# Sign matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignEntry:
    """Sign of one height coefficient: a constant sign times at most one
    unresolved triple-orientation literal.

    The literal is stored ascending with its permutation parity folded
    into the constant, so equal literals always share a key.  An entry is
    determined when ``literal`` is None.
    """

    constant: Sign
    literal: Optional[Triple] = None

    @property
    def determined(self) -> bool:
        return self.literal is None

    def __str__(self) -> str:
        if self.literal is None:
            return self.constant
        lit = "[" + "".join(str(x) for x in self.literal) + "]"
        return lit if self.constant == "+" else "-" + lit


def _make_entry(constant: Sign, triple: Triple, state: SignState) -> SignEntry:
    """Entry for constant * t(triple), resolving the literal if known."""
    if constant == "0":
        return SignEntry("0")
    value = state.get_t(*triple)
    if value is not None:
        return SignEntry(sign_mul(constant, value))
    if _perm_parity(triple) == -1:
        constant = sign_neg(constant)
    return SignEntry(constant, tuple(sorted(triple)))


@dataclass(frozen=True)
class MatrixRow:
    """One directed edge's height-difference row z_tail - z_head < 0,
    restricted to the free columns."""

    tail: Label
    head: Label
    indices: tuple[int, int, int, int]  # shared pair, tail apex, head apex
    entries: tuple[tuple[int, SignEntry], ...]  # (column, entry), ascending

    @property
    def determined(self) -> bool:
        return all(e.determined for _, e in self.entries)

    def nonzero(self) -> dict[int, Sign]:
        """Column -> sign for determined nonzero entries; meaningful only
        for determined rows."""
        return {
            c: e.constant
            for c, e in self.entries
            if e.determined and e.constant != "0"
        }

    def edge_key(self) -> tuple[Label, Label]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class SignMatrix:
    """The sign system A h < 0 of an orientation under one normalization:
    one row per directed dual-graph edge, columns the free heights."""

    params: Parameters
    zeroed: Label
    free_columns: tuple[int, ...]
    rows: tuple[MatrixRow, ...]

    def unknown_literals(self) -> Counter:
        count: Counter = Counter()
        for row in self.rows:
            for _, entry in row.entries:
                if entry.literal is not None:
                    count[entry.literal] += 1
        return count


def parameters_of_order(order: HamiltonOrder) -> Parameters:
    """Recover (d, n) from the labels of an order; n is the largest index."""
    n = max(max(lab) for lab in order.sequence)
    return Parameters(n - 3, n)


@lru_cache(maxsize=32)
def _edge_skeleton(
    sequence: tuple[Label, ...]
) -> tuple[Parameters, tuple[Label, ...], tuple[tuple[Label, Label, tuple[int, int, int, int]], ...]]:
    """Directed edges of an order with their shared-pair index splits.

    The state-independent part of a sign matrix; cached because the
    certificate search rebuilds matrices for many states of one order.
    """
    order = HamiltonOrder(sequence)
    params = parameters_of_order(order)
    labels = vertex_labels(params)
    if sorted(sequence) != sorted(labels):
        raise ValueError("order does not list the vertex labels exactly once")
    rank = {lab: r for r, lab in enumerate(sequence)}
    edges = []
    for p, q in dual_graph(params).edges:
        tail, head = (p, q) if rank[p] < rank[q] else (q, p)
        edges.append((tail, head, shared_pair(tail, head)))
    edges.sort(key=lambda e: (e[0], e[1]))
    return params, tuple(labels), tuple(edges)


def _state_rows(
    edges: Sequence[tuple[Label, Label, tuple[int, int, int, int]]],
    state: SignState,
) -> list[tuple[Label, Label, tuple[int, int, int, int], dict[int, SignEntry]]]:
    """Evaluate every edge's four coefficient entries under a state once;
    restricting to the free columns of a particular zeroed triple is then
    a cheap filter."""
    rows = []
    for tail, head, (i, j, k, l) in edges:
        sij = state.get_s(i, j)
        tijk = state.get_t(i, j, k)
        tijl = state.get_t(i, j, l)
        if None in (sij, tijk, tijl):
            raise ValueError(
                "state lacks the forced label signs needed for edge rows"
            )
        common = sign_mul(sij, sign_mul(tijk, tijl))
        by_col = {
            k: SignEntry(sign_mul(sij, tijk)),
            l: SignEntry(sign_neg(sign_mul(sij, tijl))),
            i: _make_entry(common, (j, k, l), state),
            j: _make_entry(common, (k, i, l), state),
        }
        rows.append((tail, head, (i, j, k, l), by_col))
    return rows


def _restrict(
    params: Parameters,
    zeroed: Label,
    state_rows: Sequence[
        tuple[Label, Label, tuple[int, int, int, int], dict[int, SignEntry]]
    ],
) -> SignMatrix:
    free = tuple(c for c in range(1, params.n + 1) if c not in zeroed)
    rows = tuple(
        MatrixRow(
            tail,
            head,
            ijkl,
            tuple((c, by_col[c]) for c in sorted(by_col) if c not in zeroed),
        )
        for tail, head, ijkl, by_col in state_rows
    )
    return SignMatrix(params, zeroed, free, rows)


def build_sign_matrix(
    order: HamiltonOrder, zeroed: Label, state: SignState
) -> SignMatrix:
    """Sign rows of all directed edges, partially evaluated under state.

    With (i, j) the shared pair of an edge (p -> q), k the apex of p and
    l the apex of q, the height coefficients of z_p - z_q have signs

        h_k:  s(i,j) t(i,j,k)                      (labels: determined)
        h_l: -s(i,j) t(i,j,l)                      (labels: determined)
        h_i:  s(i,j) t(i,j,k) t(i,j,l) t(j,k,l)
        h_j:  s(i,j) t(i,j,k) t(i,j,l) t(k,i,l)

    so each entry is a constant times at most one possibly-unknown
    literal.  Entries in zeroed columns are omitted.  Raises ValueError
    if the zeroed triple is not a vertex label (only label triangles are
    guaranteed non-degenerate, which the normalization requires).
    """
    params, labels, edges = _edge_skeleton(tuple(order.sequence))
    if zeroed not in labels:
        raise ValueError(f"zeroed triple {zeroed} is not a vertex label")
    return _restrict(params, zeroed, _state_rows(edges, state))


# ---------------------------------------------------------------------------
# Cancellations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cancellation:
    """A magnitude-independent positive combination of rows summing to zero.

    ``pivot`` is the one selected row allowed several nonzero entries;
    each of its nonzero columns is cancelled by an opposite-sign
    singleton row (a row with exactly one nonzero entry).  With the pivot
    weighted 1 and every singleton weighted by the exact positive ratio
    that clears its column, the combination vanishes identically while
    all rows are constrained negative -- which is impossible.  A pivot
    with no nonzero entries (an identically zero difference) needs no
    singletons and is already absurd against a strict inequality.
    """

    pivot: tuple[Label, Label]
    singletons: tuple[tuple[int, tuple[Label, Label]], ...]  # (column, edge)

    def edges(self) -> list[tuple[Label, Label]]:
        return [self.pivot] + [e for _, e in self.singletons]


def find_cancellation(matrix: SignMatrix) -> Optional[Cancellation]:
    """Smallest cancellation among the determined rows, if any.

    Every determined row is tried as the pivot; each of its nonzero
    columns must be matched by an opposite-sign singleton row.  Two
    opposite singletons sharing a column are the pivot-free special case
    (either acts as the pivot).  Returns the cancellation with fewest
    rows, ties broken by the lexicographically least edge list.
    """
    determined: list[tuple[tuple[Label, Label], dict[int, Sign]]] = [
        (row.edge_key(), row.nonzero())
        for row in matrix.rows
        if row.determined
    ]
    singles: dict[int, dict[Sign, list[tuple[Label, Label]]]] = {}
    for edge, nz in determined:
        if len(nz) == 1:
            ((col, sgn),) = nz.items()
            singles.setdefault(col, {}).setdefault(sgn, []).append(edge)
    for per_col in singles.values():
        for edges in per_col.values():
            edges.sort()

    best: Optional[tuple[int, list[tuple[Label, Label]], Cancellation]] = None
    for edge, nz in determined:
        chosen: list[tuple[int, tuple[Label, Label]]] = []
        ok = True
        for col in sorted(nz):
            partners = [
                e
                for e in singles.get(col, {}).get(sign_neg(nz[col]), [])
                if e != edge
            ]
            if not partners:
                ok = False
                break
            chosen.append((col, partners[0]))
        if not ok:
            continue
        cand = Cancellation(edge, tuple(chosen))
        key = (1 + len(chosen), sorted(cand.edges()))
        if best is None or key < (best[0], best[1]):
            best = (key[0], key[1], cand)
    return best[2] if best else None


# ---------------------------------------------------------------------------
# Proof trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeafRow:
    """A selected row recorded with its full determined sign vector over
    the free columns (zeros included, so tables read off directly)."""

    tail: Label
    head: Label
    signs: tuple[tuple[int, Sign], ...]  # (free column, sign), ascending


@dataclass(frozen=True)
class Leaf:
    """A zeroed triple whose sign matrix admits a cancellation."""

    zeroed: Label
    pivot: tuple[Label, Label]
    rows: tuple[LeafRow, ...]  # pivot first, then singletons by column


@dataclass(frozen=True)
class Closed:
    """A branch value refuted outright: its assumption forces, via the
    deduction rules, a sign conflicting with one already known.  The
    conflicting step is the last recorded deduction of the child."""

    reason: str


@dataclass(frozen=True)
class Child:
    value: Sign
    deductions: tuple[Deduction, ...]
    node: "Node"


@dataclass(frozen=True)
class Branch:
    variable: Triple  # ascending
    children: tuple[Child, Child, Child]  # values '+', '0', '-' in order


Node = Union[Leaf, Branch, Closed]


@dataclass(frozen=True)
class ProofTree:
    """A complete case analysis proving an orientation non-realizable.

    ``assumptions`` is normally empty; when sign assumptions are forced
    from the outside (to reproduce a particular table, say) the tree only
    certifies non-realizability relative to them, and carries them so the
    checker can report the restriction.
    """

    params: Parameters
    order: HamiltonOrder
    assumptions: tuple[tuple[Triple, Sign], ...]
    root_deductions: tuple[Deduction, ...]
    root: Node

    def branch_count(self) -> int:
        return _count_branches(self.root)

    def leaf_row_count(self) -> int:
        return _count_leaf_rows(self.root)


def _count_branches(node: Node) -> int:
    if isinstance(node, Branch):
        return 1 + sum(_count_branches(c.node) for c in node.children)
    return 0


def _count_leaf_rows(node: Node) -> int:
    if isinstance(node, Branch):
        return sum(_count_leaf_rows(c.node) for c in node.children)
    if isinstance(node, Leaf):
        return len(node.rows)
    return 0


def _leaf_from(matrix: SignMatrix, cancel: Cancellation) -> Leaf:
    by_edge = {row.edge_key(): row for row in matrix.rows}
    rows = []
    for edge in [cancel.pivot] + [e for _, e in cancel.singletons]:
        row = by_edge[edge]
        signs = tuple(
            (c, dict(row.entries).get(c, SignEntry("0")).constant)
            for c in matrix.free_columns
        )
        rows.append(LeafRow(row.tail, row.head, signs))
    return Leaf(matrix.zeroed, cancel.pivot, tuple(rows))


def _node_sort_key(node: Node):
    """Deterministic tiebreaker across equally sized trees."""
    if isinstance(node, Leaf):
        return (0, node.zeroed, tuple((r.tail, r.head) for r in node.rows))
    if isinstance(node, Closed):
        return (1, node.reason)
    return (
        2,
        node.variable,
        tuple(_node_sort_key(c.node) for c in node.children),
    )


def forced_closure(
    params: Parameters,
    assumptions: Iterable[tuple[Triple, Sign]] = (),
) -> tuple[SignState, tuple[Deduction, ...], Optional[str]]:
    """The deductive closure of the label-forced signs, the common root
    context of every certificate."""
    base = forced_signs(params, vertex_labels(params))
    state, deds, contra = deduce_signs(base, params, assumptions)
    return state, tuple(deds), contra


def _search(
    order: HamiltonOrder,
    params: Parameters,
    state: SignState,
    zeroed_choices: Sequence[Label],
    depth_left: int,
    assumption_budget: Optional[int],
) -> Optional[tuple[int, int, Node]]:
    """Minimal (branch count, leaf rows) proof node for a sign state.

    One matrix per candidate zeroed triple serves both purposes at a
    node: the direct-cancellation scan and the collection of unknown
    branching literals.
    """
    params_, _, edges = _edge_skeleton(tuple(order.sequence))
    state_rows = _state_rows(edges, state)
    matrices = [
        _restrict(params_, zeroed, state_rows) for zeroed in zeroed_choices
    ]
    best_leaf: Optional[tuple[tuple, Leaf]] = None
    for matrix in matrices:
        cancel = find_cancellation(matrix)
        if cancel is None:
            continue
        leaf = _leaf_from(matrix, cancel)
        key = (len(leaf.rows), _node_sort_key(leaf))
        if best_leaf is None or key < best_leaf[0]:
            best_leaf = (key, leaf)
    if best_leaf is not None:
        leaf = best_leaf[1]
        return (0, len(leaf.rows), leaf)
    if depth_left <= 0:
        return None

    count: Counter = Counter()
    for matrix in matrices:
        count.update(matrix.unknown_literals())
    variables = sorted(count, key=lambda lit: (-count[lit], lit))
    if assumption_budget is not None:
        variables = variables[:assumption_budget]

    best: Optional[tuple[tuple, Node]] = None
    for variable in variables:
        children: list[Child] = []
        cost_branches, cost_rows = 1, 0
        complete = True
        for value in SIGNS_ORDER:
            child_state, deds, contra = deduce_signs(
                state, params, [(variable, value)]
            )
            if contra is not None:
                children.append(Child(value, tuple(deds), Closed(contra)))
                continue
            sub = _search(
                order,
                params,
                child_state,
                zeroed_choices,
                depth_left - 1,
                assumption_budget,
            )
            if sub is None:
                complete = False
                break
            branches, rows, node = sub
            cost_branches += branches
            cost_rows += rows
            children.append(Child(value, tuple(deds), node))
        if not complete:
            continue
        node = Branch(variable, tuple(children))
        key = (cost_branches, cost_rows, _node_sort_key(node))
        if best is None or key < best[0]:
            best = (key, node)
    if best is None:
        return None
    return (best[0][0], best[0][1], best[1])


SIGNS_ORDER: tuple[Sign, ...] = ("+", "0", "-")


def prove_nonrealizable(
    order: HamiltonOrder,
    depth_budget: int = 2,
    assumption_budget: Optional[int] = None,
    zeroed: Optional[Sequence[Label]] = None,
    assume: Iterable[tuple[Triple, Sign]] = (),
) -> Optional[ProofTree]:
    """Search for a non-realizability certificate of an orientation class.

    The search deepens iteratively: depth 0 looks for a direct
    cancellation under each candidate zeroed triple, depth 1 additionally
    branches once on an unknown literal (candidates ordered by frequency
    of occurrence in the current matrices; ``assumption_budget`` caps how
    many are tried per node, None tries them all), and so on up to
    ``depth_budget`` nested assumptions.  At the first depth that admits
    a proof it returns the minimal tree -- fewest branch nodes, then
    fewest total leaf rows, ties broken by a deterministic structural
    key.  Returns None if the budgets are exhausted, which proves
    nothing.

    ``zeroed`` restricts the candidate zeroed triples and ``assume``
    forces sign assumptions at the root; both exist so specific published
    tables can be reproduced, and any root assumptions are recorded in
    the resulting tree.
    """
    params = parameters_of_order(order)
    check_hamilton_order(dual_graph(params), order)
    assumptions = tuple((tuple(t), v) for t, v in assume)
    state, root_deds, contra = forced_closure(params, assumptions)
    if contra is not None:
        return ProofTree(params, order, assumptions, root_deds, Closed(contra))
    labels = vertex_labels(params)
    if zeroed is None:
        choices: Sequence[Label] = labels
    else:
        choices = [tuple(sorted(z)) for z in zeroed]
        for z in choices:
            if z not in labels:
                raise ValueError(f"zeroed triple {z} is not a vertex label")
    for depth in range(depth_budget + 1):
        found = _search(
            order, params, state, choices, depth, assumption_budget
        )
        if found is not None:
            return ProofTree(params, order, assumptions, root_deds, found[2])
    return None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _deduction_to_json(d: Deduction) -> dict:
    return {
        "kind": d.kind,
        "indices": list(d.indices),
        "value": d.value,
        "rule": d.rule,
        "premises": [[k, list(idx), v] for k, idx, v in d.premises],
    }


def _deduction_from_json(obj: dict) -> Deduction:
    return Deduction(
        obj["kind"],
        tuple(obj["indices"]),
        obj["value"],
        obj["rule"],
        tuple((k, tuple(idx), v) for k, idx, v in obj["premises"]),
    )


def _label_json(label: Label) -> list[int]:
    return sorted(label)


def _leaf_fields(leaf: Leaf) -> dict:
    return {
        "zeroed": _label_json(leaf.zeroed),
        "pivot": [_label_json(leaf.pivot[0]), _label_json(leaf.pivot[1])],
        "leaf_rows": [
            {
                "edge": [_label_json(r.tail), _label_json(r.head)],
                "signs": [[c, s] for c, s in r.signs],
            }
            for r in leaf.rows
        ],
    }


def _flatten(node: Node, path: list[dict], out: list[dict]) -> None:
    if isinstance(node, Branch):
        for child in node.children:
            step = {
                "variable": list(node.variable),
                "value": child.value,
                "deductions": [_deduction_to_json(d) for d in child.deductions],
            }
            _flatten(child.node, path + [step], out)
        return
    entry: dict = {
        "variable": path[-1]["variable"] if path else None,
        "value": path[-1]["value"] if path else None,
        "deductions": path[-1]["deductions"] if path else [],
    }
    if len(path) > 1:
        entry["path"] = path
    if isinstance(node, Leaf):
        entry.update(_leaf_fields(node))
    else:
        entry["closed"] = node.reason
    out.append(entry)


def proof_to_json(tree: ProofTree) -> str:
    """Serialize a proof tree; deterministic, so committed certificate
    files are byte-stable under regeneration."""
    branches: list[dict] = []
    _flatten(tree.root, [], branches)
    doc = {
        "format": PROOF_FORMAT,
        "dimension": tree.params.d,
        "ground_size": tree.params.n,
        "class": format_order(tree.order),
        "order": [_label_json(lab) for lab in tree.order.sequence],
        "assumptions": [
            [list(t), v] for t, v in tree.assumptions
        ],
        "root_deductions": [
            _deduction_to_json(d) for d in tree.root_deductions
        ],
        "branches": branches,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _leaf_from_json(entry: dict) -> Leaf:
    rows = tuple(
        LeafRow(
            tuple(r["edge"][0]),
            tuple(r["edge"][1]),
            tuple((c, s) for c, s in r["signs"]),
        )
        for r in entry["leaf_rows"]
    )
    return Leaf(
        tuple(entry["zeroed"]),
        (tuple(entry["pivot"][0]), tuple(entry["pivot"][1])),
        rows,
    )


def _entry_path(entry: dict) -> list[dict]:
    if "path" in entry:
        return entry["path"]
    if entry["variable"] is None:
        return []
    return [
        {
            "variable": entry["variable"],
            "value": entry["value"],
            "deductions": entry["deductions"],
        }
    ]


def _unflatten(entries: list[tuple[list[dict], dict]], depth: int) -> Node:
    if not entries:
        raise ValueError("malformed proof: empty branch set")
    if all(len(path) == depth for path, _ in entries):
        if len(entries) != 1:
            raise ValueError("malformed proof: duplicate terminal entries")
        entry = entries[0][1]
        if "closed" in entry:
            return Closed(entry["closed"])
        return _leaf_from_json(entry)
    heads = {tuple(path[depth]["variable"]) for path, _ in entries}
    if len(heads) != 1:
        raise ValueError("malformed proof: inconsistent branch variables")
    (variable,) = heads
    children = []
    for value in SIGNS_ORDER:
        sub = [
            (path, entry)
            for path, entry in entries
            if path[depth]["value"] == value
        ]
        if not sub:
            raise ValueError(
                f"malformed proof: branch on {variable} missing case {value!r}"
            )
        deds_jsons = {
            json.dumps(path[depth]["deductions"], sort_keys=True)
            for path, _ in sub
        }
        if len(deds_jsons) != 1:
            raise ValueError("malformed proof: inconsistent branch deductions")
        deductions = tuple(
            _deduction_from_json(d) for d in sub[0][0][depth]["deductions"]
        )
        children.append(Child(value, deductions, _unflatten(sub, depth + 1)))
    return Branch(variable, tuple(children))


def proof_from_json(text: str) -> ProofTree:
    doc = json.loads(text)
    if doc.get("format") != PROOF_FORMAT:
        raise ValueError(f"unrecognized proof format {doc.get('format')!r}")
    params = Parameters(doc["dimension"], doc["ground_size"])
    order = HamiltonOrder(tuple(tuple(lab) for lab in doc["order"]))
    assumptions = tuple(
        (tuple(t), v) for t, v in doc.get("assumptions", [])
    )
    root_deds = tuple(
        _deduction_from_json(d) for d in doc.get("root_deductions", [])
    )
    entries = [(_entry_path(e), e) for e in doc["branches"]]
    root = _unflatten(entries, 0)
    return ProofTree(params, order, assumptions, root_deds, root)
