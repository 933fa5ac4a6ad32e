"""Independent validator for non-realizability certificates.

This module re-validates serialized proof documents with deliberately
self-contained code: the vertex labels, dual-graph adjacency, forced
signs, permutation parities, deduction-rule premises and coefficient
sign formulas are all re-derived here rather than imported from the
prover, so prover/checker agreement is evidence rather than tautology.
The only thing shared with the prover is the documented file format.

What a valid document establishes: assume some plane configuration and
lifting heights induce the recorded vertex order.  The label-forced
signs then hold, every recorded deduction is sound (rules R1/R2 below),
and in every branch case the selected edge rows -- re-derived from the
coefficient sign formula, not trusted from the file -- admit a positive
combination summing to the zero linear form while each row is required
strictly negative.  That is impossible, so no such configuration exists:
the orientation is non-realizable (relative to any recorded root
assumptions, which are empty for unconditional certificates).

Rule soundness, for reference while reading the validators:

* R1 rests on the identity [ijk] = det(i,j) + det(j,k) + det(k,i)
  (twice the signed triangle area as a cyclic sum of pair
  determinants): if all three pair signs lie in {+,0} the triple sign
  is + unless all are 0, and dually for {-,0}.
* R2 is the wedge lemma: for i, j, k clockwise around the origin
  (all three pair signs -) with [ijk] = +, any l in the open wedge
  spanned by -i and -k (certified by s(i,l) = s(l,k) = +) satisfies
  [ilj] = [jlk] = +.

Structural malformation (bad shape, incomplete case analysis,
inconsistent duplicated trails) raises MalformedProof; semantic
failures (a step that does not validate) are collected and reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

EXPECTED_FORMAT = "hk-aof-nonrealizability-proof/1"

_SIGNS = ("+", "-", "0")


class MalformedProof(Exception):
    """The document is not a well-formed certificate (distinct from a
    well-formed certificate that fails to validate)."""


# ---------------------------------------------------------------------------
# Ground facts, re-derived
# ---------------------------------------------------------------------------


def _vertex_labels(n: int) -> list[tuple[int, int, int]]:
    """Triples {a<b<c} from [n] with both gaps b-a and c-b odd."""
    out = []
    for a, b, c in combinations(range(1, n + 1), 3):
        if (b - a) % 2 == 1 and (c - b) % 2 == 1:
            out.append((a, b, c))
    return out


def _adjacent(p: Sequence[int], q: Sequence[int]) -> bool:
    return len(set(p) & set(q)) == 2


def _neg(sign: str) -> str:
    return {"+": "-", "-": "+", "0": "0"}[sign]


def _mul(a: str, b: str) -> str:
    if a == "0" or b == "0":
        return "0"
    return "+" if a == b else "-"


def _sorted3(i: int, j: int, k: int) -> tuple[tuple[int, int, int], int]:
    """Ascending triple and permutation sign, by explicit inversion count."""
    inversions = (i > j) + (i > k) + (j > k)
    return tuple(sorted((i, j, k))), (1 if inversions % 2 == 0 else -1)


class _Signs:
    """Pair and triple signs, canonicalized; ``set`` reports conflicts
    instead of raising so the checker can classify them."""

    def __init__(self) -> None:
        self.s: dict[tuple[int, int], str] = {}
        self.t: dict[tuple[int, int, int], str] = {}

    def get_s(self, i: int, j: int) -> Optional[str]:
        val = self.s.get((min(i, j), max(i, j)))
        if val is None or i < j:
            return val
        return _neg(val)

    def get_t(self, i: int, j: int, k: int) -> Optional[str]:
        key, parity = _sorted3(i, j, k)
        val = self.t.get(key)
        if val is None or parity == 1:
            return val
        return _neg(val)

    def set_s(self, i: int, j: int, value: str) -> str:
        key = (min(i, j), max(i, j))
        canon = value if i < j else _neg(value)
        old = self.s.get(key)
        if old is None:
            self.s[key] = canon
            return "new"
        return "known" if old == canon else "conflict"

    def set_t(self, i: int, j: int, k: int, value: str) -> str:
        key, parity = _sorted3(i, j, k)
        canon = value if parity == 1 else _neg(value)
        old = self.t.get(key)
        if old is None:
            self.t[key] = canon
            return "new"
        return "known" if old == canon else "conflict"

    def copy(self) -> "_Signs":
        fresh = _Signs()
        fresh.s = dict(self.s)
        fresh.t = dict(self.t)
        return fresh


def _forced_signs(labels: Sequence[tuple[int, int, int]]) -> _Signs:
    signs = _Signs()
    for a, b, c in labels:
        signs.set_s(a, b, "+")
        signs.set_s(b, c, "+")
        signs.set_s(a, c, "-")
        signs.set_t(a, b, c, "+")
    return signs


def _row_signs(
    tail: Sequence[int],
    head: Sequence[int],
    signs: _Signs,
    free: Sequence[int],
) -> Optional[dict[int, str]]:
    """Signs of the coefficients of the free heights in z_tail - z_head.

    With (i, j) the ascending shared pair, k the apex of the tail label
    and l the apex of the head label, the height difference is a linear
    form whose coefficient signs are

        h_k:  s(i,j) t(i,j,k)        h_i: s(i,j) t(i,j,k) t(i,j,l) t(j,k,l)
        h_l: -s(i,j) t(i,j,l)        h_j: s(i,j) t(i,j,k) t(i,j,l) t(k,i,l)

    (the t(i,j,k), t(i,j,l) factors enter h_i and h_j once as part of the
    common denominator and once via the numerator determinants).  Only
    coefficients of free heights matter -- the others are zeroed by the
    normalization -- and the full vector over ``free`` is returned, or
    None if a needed sign is unknown.  The formula is validated against
    exact rational height arithmetic by the property suite.
    """
    shared = sorted(set(tail) & set(head))
    if len(shared) != 2:
        return None
    i, j = shared
    k = next(x for x in tail if x not in shared)
    l = next(x for x in head if x not in shared)
    sij = signs.get_s(i, j)
    tijk = signs.get_t(i, j, k)
    tijl = signs.get_t(i, j, l)
    if None in (sij, tijk, tijl):
        return None
    common = _mul(sij, _mul(tijk, tijl))
    vector: dict[int, str] = {}
    for c in free:
        if c == k:
            vector[c] = _mul(sij, tijk)
        elif c == l:
            vector[c] = _neg(_mul(sij, tijl))
        elif c == i:
            tjkl = signs.get_t(j, k, l)
            if tjkl is None:
                return None
            vector[c] = _mul(common, tjkl)
        elif c == j:
            tkil = signs.get_t(k, i, l)
            if tkil is None:
                return None
            vector[c] = _mul(common, tkil)
        else:
            vector[c] = "0"
    return vector


# ---------------------------------------------------------------------------
# Deduction replay
# ---------------------------------------------------------------------------


def _validate_rule(ded: dict, signs: _Signs) -> Optional[str]:
    """None if the recorded deduction follows from its premises under the
    current signs; otherwise a description of what failed.  Does not
    apply the conclusion."""
    rule = ded.get("rule")
    kind = ded.get("kind")
    indices = tuple(ded.get("indices", ()))
    value = ded.get("value")
    if kind != "t" or value not in _SIGNS:
        return f"unsupported deduction target {kind}{indices}={value}"
    premises = [
        (pk, tuple(pi), pv) for pk, pi, pv in ded.get("premises", [])
    ]
    for pk, pi, pv in premises:
        have = signs.get_s(*pi) if pk == "s" else signs.get_t(*pi)
        if have != pv:
            return (
                f"premise {pk}{pi}={pv} of {rule} not established "
                f"(state has {have})"
            )
    if rule == "R1":
        if len(premises) != 3 or len(indices) != 3:
            return "R1 needs three pair-sign premises"
        i, j, k = indices
        expect = [("s", (i, j)), ("s", (j, k)), ("s", (k, i))]
        if [(pk, pi) for pk, pi, _ in premises] != expect:
            return f"R1 premises do not match conclusion t{indices}"
        vals = {pv for _, _, pv in premises}
        if vals <= {"+", "0"}:
            implied = "0" if vals == {"0"} else "+"
        elif vals <= {"-", "0"}:
            implied = "0" if vals == {"0"} else "-"
        else:
            return "R1 premises have mixed strict signs"
        if value != implied:
            return f"R1 implies {implied}, record claims {value}"
        return None
    if rule == "R2":
        if len(premises) != 6:
            return "R2 needs six premises"
        kinds = [(pk, pv) for pk, _, pv in premises]
        if kinds != [
            ("s", "-"),
            ("s", "-"),
            ("s", "-"),
            ("t", "+"),
            ("s", "+"),
            ("s", "+"),
        ]:
            return "R2 premise pattern mismatch"
        i, j = premises[0][1]
        j2, k = premises[1][1]
        i2, k2 = premises[2][1]
        ti, tj, tk = premises[3][1]
        i3, l = premises[4][1]
        l2, k3 = premises[5][1]
        if (
            j2 != j
            or i2 != i
            or k2 != k
            or (ti, tj, tk) != (i, j, k)
            or i3 != i
            or l2 != l
            or k3 != k
        ):
            return "R2 premises are not one wedge instance"
        if len({i, j, k, l}) != 4:
            return "R2 indices must be distinct"
        if indices not in ((i, l, j), (j, l, k)) or value != "+":
            return f"R2 does not conclude t{indices}={value}"
        return None
    return f"unknown rule {rule!r}"


@dataclass
class _Replay:
    """Replays recorded steps into a sign state, classifying outcomes."""

    signs: _Signs
    failures: list[str] = field(default_factory=list)
    contradicted: bool = False

    def apply_assumption(self, indices: Sequence[int], value: str, where: str) -> None:
        if self.contradicted:
            self.failures.append(f"{where}: steps continue past a contradiction")
            return
        outcome = self.signs.set_t(indices[0], indices[1], indices[2], value)
        if outcome == "conflict":
            self.contradicted = True

    def apply_deduction(self, ded: dict, where: str) -> None:
        if self.contradicted:
            self.failures.append(f"{where}: steps continue past a contradiction")
            return
        problem = _validate_rule(ded, self.signs)
        if problem is not None:
            self.failures.append(f"{where}: {problem}")
            return
        idx = tuple(ded["indices"])
        outcome = self.signs.set_t(idx[0], idx[1], idx[2], ded["value"])
        if outcome == "conflict":
            self.contradicted = True


# ---------------------------------------------------------------------------
# Document checking
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    ok: bool
    failures: list[str]
    assumptions: list[tuple[tuple[int, int, int], str]]
    dimension: int
    case_count: int

    @property
    def unconditional(self) -> bool:
        return self.ok and not self.assumptions


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedProof(message)


def _entry_trail(entry: dict) -> list[dict]:
    if "path" in entry:
        trail = entry["path"]
        _require(isinstance(trail, list) and trail, "empty path in branch entry")
        if entry.get("variable") is not None:
            last = trail[-1]
            _require(
                last.get("variable") == entry["variable"]
                and last.get("value") == entry["value"],
                "path tail disagrees with entry variable/value",
            )
        return trail
    if entry.get("variable") is None:
        return []
    return [
        {
            "variable": entry["variable"],
            "value": entry["value"],
            "deductions": entry.get("deductions", []),
        }
    ]


def _check_tree_shape(trails: list[list[dict]], depth: int, where: str) -> int:
    """Validates the complete +/0/- case analysis; returns case count."""
    _require(bool(trails), f"{where}: no cases recorded")
    terminal = [t for t in trails if len(t) == depth]
    if terminal:
        _require(
            len(trails) == 1,
            f"{where}: terminal case mixed with deeper cases",
        )
        return 1
    heads = {json.dumps(t[depth]["variable"]) for t in trails}
    _require(
        len(heads) == 1,
        f"{where}: siblings branch on different variables",
    )
    count = 0
    seen_values = []
    for value in _SIGNS:
        sub = [t for t in trails if t[depth].get("value") == value]
        if not sub:
            continue
        seen_values.append(value)
        deds = {json.dumps(t[depth].get("deductions", []), sort_keys=True) for t in sub}
        _require(
            len(deds) == 1,
            f"{where}: duplicated trail segments disagree on deductions",
        )
        count += _check_tree_shape(sub, depth + 1, f"{where}.{value}")
    _require(
        sorted(seen_values) == sorted(_SIGNS),
        f"{where}: cases {seen_values} do not cover +, 0, -",
    )
    return count


def check_document(doc: dict) -> CheckResult:
    """Validate one serialized certificate document.

    Raises MalformedProof for structural defects; returns a CheckResult
    whose ``failures`` list the semantic defects (empty when valid).
    """
    _require(isinstance(doc, dict), "certificate must be a JSON object")
    _require(
        doc.get("format") == EXPECTED_FORMAT,
        f"unrecognized format {doc.get('format')!r}",
    )
    for key in ("dimension", "ground_size", "order", "branches"):
        _require(key in doc, f"missing field {key!r}")
    d, n = doc["dimension"], doc["ground_size"]
    _require(isinstance(d, int) and isinstance(n, int), "bad parameters")
    _require(n == d + 3, "certificates require n = d + 3")
    _require(d % 2 == 0, "forced signs hold for even dimension only")

    labels = _vertex_labels(n)
    label_set = set(labels)
    order = [tuple(lab) for lab in doc["order"]]
    _require(
        sorted(order) == labels,
        "order is not a permutation of the vertex labels",
    )
    for a, b in zip(order, order[1:]):
        _require(_adjacent(a, b), "order is not a Hamilton path of the dual graph")
    rank = {lab: r for r, lab in enumerate(order)}
    free_of = {
        zeroed: tuple(c for c in range(1, n + 1) if c not in zeroed)
        for zeroed in labels
    }

    failures: list[str] = []
    assumptions = [
        (tuple(t), v) for t, v in doc.get("assumptions", [])
    ]
    for t, v in assumptions:
        _require(
            len(t) == 3 and v in _SIGNS,
            f"malformed root assumption {t}={v}",
        )

    # Root context: forced signs, root assumptions, recorded closure.
    base = _replay_root(doc, labels, assumptions, failures)

    entries = doc["branches"]
    _require(isinstance(entries, list) and entries, "no branch entries")
    trails = [_entry_trail(e) for e in entries]
    case_count = _check_tree_shape(trails, 0, "root")
    _require(
        case_count == len(entries),
        "entries do not form one complete case tree",
    )

    root_contradicted = base.contradicted
    for index, (entry, trail) in enumerate(zip(entries, trails)):
        where = f"case[{index}]"
        replay = _Replay(base.signs.copy(), failures, root_contradicted)
        for segment in trail:
            variable = tuple(segment["variable"])
            value = segment["value"]
            _require(
                len(variable) == 3 and value in _SIGNS,
                f"{where}: malformed branch assumption",
            )
            replay.apply_assumption(variable, value, where)
            for ded in segment.get("deductions", []):
                if ded.get("rule") == "assumption":
                    if tuple(ded.get("indices", ())) != variable or ded.get("value") != value:
                        failures.append(
                            f"{where}: recorded assumption step disagrees with branch"
                        )
                    continue
                replay.apply_deduction(ded, where)
            if replay.contradicted:
                break
        if "closed" in entry:
            if not replay.contradicted:
                failures.append(
                    f"{where}: claimed contradiction does not materialize"
                )
            continue
        if replay.contradicted:
            failures.append(
                f"{where}: assumptions are contradictory yet a leaf is recorded"
            )
            continue
        _check_leaf(entry, replay.signs, rank, label_set, free_of, failures, where)

    return CheckResult(
        ok=not failures,
        failures=failures,
        assumptions=assumptions,
        dimension=d,
        case_count=case_count,
    )


def _replay_root(
    doc: dict,
    labels: list[tuple[int, int, int]],
    assumptions: list[tuple[tuple[int, int, int], str]],
    failures: list[str],
) -> _Replay:
    replay = _Replay(_forced_signs(labels), failures)
    # Assumptions are the axioms of a conditional certificate: apply them
    # all up front, whether or not the prover needed to record them.
    for t, v in assumptions:
        replay.apply_assumption(t, v, "root")
    declared = set(assumptions)
    for ded in doc.get("root_deductions", []):
        if ded.get("rule") == "assumption":
            pair = (tuple(ded.get("indices", ())), ded.get("value"))
            if pair not in declared:
                failures.append(f"root: recorded assumption {pair} not declared")
            continue
        replay.apply_deduction(ded, "root")
    return replay


def _check_leaf(
    entry: dict,
    signs: _Signs,
    rank: dict[tuple[int, ...], int],
    label_set: set,
    free_of: dict,
    failures: list[str],
    where: str,
) -> None:
    zeroed = tuple(entry.get("zeroed", ()))
    _require(zeroed in label_set, f"{where}: zeroed {zeroed} is not a vertex label")
    rows = entry.get("leaf_rows", [])
    _require(isinstance(rows, list) and rows, f"{where}: leaf without rows")
    pivot = entry.get("pivot")
    _require(
        isinstance(pivot, list) and len(pivot) == 2,
        f"{where}: leaf without pivot",
    )
    pivot_edge = (tuple(pivot[0]), tuple(pivot[1]))
    free = free_of[zeroed]

    edges = []
    vectors = []
    for r, row in enumerate(rows):
        tail, head = (tuple(row["edge"][0]), tuple(row["edge"][1]))
        spot = f"{where}.row[{r}]"
        _require(
            tail in label_set and head in label_set,
            f"{spot}: edge endpoints must be vertex labels",
        )
        if not _adjacent(tail, head):
            failures.append(f"{spot}: {tail} and {head} are not adjacent")
            continue
        if rank[tail] >= rank[head]:
            failures.append(
                f"{spot}: edge {tail}->{head} is not oriented by the order"
            )
            continue
        vector = _row_signs(tail, head, signs, free)
        if vector is None:
            failures.append(f"{spot}: row signs are not determined")
            continue
        recorded = {c: s for c, s in row.get("signs", [])}
        if recorded != vector:
            failures.append(
                f"{spot}: recorded signs {sorted(recorded.items())} differ "
                f"from derived {sorted(vector.items())}"
            )
            continue
        edges.append((tail, head))
        vectors.append(vector)
    if len(edges) != len(rows):
        return  # row-level failures already recorded
    if len(set(edges)) != len(edges):
        failures.append(f"{where}: a row is selected twice")
        return
    if pivot_edge not in edges:
        failures.append(f"{where}: pivot row is not among the leaf rows")
        return
    for edge, vector in zip(edges, vectors):
        if edge == pivot_edge:
            continue
        nonzero = [c for c, s in vector.items() if s != "0"]
        if len(nonzero) != 1:
            failures.append(
                f"{where}: non-pivot row {edge} has {len(nonzero)} nonzero entries"
            )
            return
    for c in free:
        column = [v[c] for v in vectors if v[c] != "0"]
        if column and sorted(column) != ["+", "-"]:
            failures.append(
                f"{where}: column {c} entries {column} do not cancel"
            )
            return


def check_proof(
    order: Optional[Sequence[Sequence[int]]],
    tree: Union[str, dict],
) -> bool:
    """True iff the certificate is well-formed, matches ``order`` (when
    given), validates semantically, and carries no root assumptions.

    ``tree`` may be the JSON text or the parsed document.  Structural
    malformation raises MalformedProof; everything else is a boolean.
    """
    doc = json.loads(tree) if isinstance(tree, str) else tree
    result = check_document(doc)
    if order is not None:
        sequence = getattr(order, "sequence", order)
        want = [tuple(lab) for lab in sequence]
        have = [tuple(lab) for lab in doc["order"]]
        if want != have:
            return False
    return result.unconditional
