"""Plane Gale diagrams with heights, their sign data, and sign deduction.

A configuration assigns each index 1..n a nonzero rational plane vector so
that exactly the label triples (the facet complements of the cyclic
polytope) strictly contain the origin, positively oriented.  Adding a
rational height per index lifts each triple's plane to 3-space; the
intersection height over the origin of a label's plane is the objective
value of the corresponding polytope vertex, so comparing two adjacent
labels' heights decides the orientation of that edge.

The sign layer reasons about such configurations abstractly: s(a,b) is the
sign of det(v_a, v_b), t(a,b,c) the sign of the doubled triangle area
det(v_a,v_b) + det(v_b,v_c) + det(v_c,v_a).  Non-realizability certificates
only ever use the forced signs, two sound deduction rules, and case splits
on unknown t-values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactlp import OPTIMAL, Vec, solve_lp
from .polytope import Label, Parameters, vertex_labels

Point = tuple[Fraction, Fraction]
Sign = str  # '+', '-', '0'

SIGNS = ("+", "-", "0")


def sign_of(x: Fraction) -> Sign:
    if x > 0:
        return "+"
    if x < 0:
        return "-"
    return "0"


def sign_mul(a: Sign, b: Sign) -> Sign:
    if a == "0" or b == "0":
        return "0"
    return "+" if a == b else "-"


def sign_neg(a: Sign) -> Sign:
    return {"+": "-", "-": "+", "0": "0"}[a]


def det2(p: Point, q: Point) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def triangle_det(p: Point, q: Point, r: Point) -> Fraction:
    """Twice the signed area of the triangle p q r (positive anticlockwise),
    which also equals det taken pairwise around the cycle."""
    return det2(p, q) + det2(q, r) + det2(r, p)


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaleConfig:
    """Plane vectors v_1..v_n indexed by 1-based point index."""

    params: Parameters
    points: tuple[Point, ...]  # points[i-1] is v_i

    def __post_init__(self):
        if len(self.points) != self.params.n:
            raise ValueError(
                f"expected {self.params.n} points, got {len(self.points)}"
            )

    def point(self, i: int) -> Point:
        return self.points[i - 1]

    def s(self, i: int, j: int) -> Sign:
        return sign_of(det2(self.point(i), self.point(j)))

    def t(self, i: int, j: int, k: int) -> Sign:
        return sign_of(
            triangle_det(self.point(i), self.point(j), self.point(k))
        )


class GaleValidationError(ValueError):
    """The configuration is not a valid plane Gale diagram for the labels."""


def origin_strictly_inside(p: Point, q: Point, r: Point) -> bool:
    """Origin strictly inside triangle pqr (either orientation)."""
    d1 = triangle_det(p, q, (Fraction(0), Fraction(0)))
    d2 = triangle_det(q, r, (Fraction(0), Fraction(0)))
    d3 = triangle_det(r, p, (Fraction(0), Fraction(0)))
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def validate_config(
    config: GaleConfig, labels: Sequence[Label], strict: bool = True
) -> None:
    """Raise ValueError unless the configuration is a valid plane Gale
    diagram for the label family, positively oriented: every label triple
    strictly contains the origin anticlockwise and every other triple does
    not contain it.

    With ``strict`` (the sampler-side default) full genericity is also
    required: no parallel pairs and no flat triples anywhere.  Diagrams of
    genuine realizations need not be generic outside the labels (a
    non-label triple may be collinear without disturbing the face
    lattice), so transforms of externally supplied polytopes validate with
    ``strict=False``.
    """
    from itertools import combinations

    n = config.params.n
    zero = (Fraction(0), Fraction(0))
    for i in range(1, n + 1):
        if config.point(i) == zero:
            raise GaleValidationError(f"point {i} is the origin")
    if strict:
        for i, j in combinations(range(1, n + 1), 2):
            if config.s(i, j) == "0":
                raise GaleValidationError(
                    f"points {i},{j} are parallel through the origin"
                )
    label_set = {tuple(sorted(t)) for t in labels}
    for trip in combinations(range(1, n + 1), 3):
        a, b, c = trip
        if strict and config.t(a, b, c) == "0" and trip not in label_set:
            raise GaleValidationError(f"points {trip} are collinear")
        inside = origin_strictly_inside(
            config.point(a), config.point(b), config.point(c)
        )
        if trip in label_set:
            if not inside:
                raise GaleValidationError(f"label {trip} does not contain the origin")
            if config.t(a, b, c) != "+":
                raise GaleValidationError(f"label {trip} is clockwise, not anticlockwise")
        else:
            if inside:
                raise GaleValidationError(f"non-label {trip} contains the origin")


@dataclass(frozen=True)
class ExtendedGaleConfig:
    """A validated plane configuration together with one height per index."""

    config: GaleConfig
    heights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.heights) != self.config.params.n:
            raise ValueError("one height per point required")

    def height(self, i: int) -> Fraction:
        return self.heights[i - 1]


def intersection_height(ext: ExtendedGaleConfig, label: Label) -> Fraction:
    """Height over the origin of the plane through the three lifted points
    of the label."""
    i, j, k = label
    vi, vj, vk = ext.config.point(i), ext.config.point(j), ext.config.point(k)
    hi, hj, hk = ext.height(i), ext.height(j), ext.height(k)
    t = triangle_det(vi, vj, vk)
    if t == 0:
        raise ValueError(f"degenerate label {label}")
    return (det2(vi, vj) * hk + det2(vk, vi) * hj + det2(vj, vk) * hi) / t


def shared_pair(p: Label, q: Label) -> tuple[int, int, int, int]:
    """For adjacent labels p, q return (i, j, k, l) with {i,j} shared,
    k the apex of p and l the apex of q."""
    common = sorted(set(p) & set(q))
    if len(common) != 2:
        raise ValueError(f"labels {p} and {q} do not share two indices")
    i, j = common
    k = next(x for x in p if x not in common)
    l = next(x for x in q if x not in common)
    return i, j, k, l


def edge_coefficients(
    config: GaleConfig, p: Label, q: Label
) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """Numeric coefficients of the height variables in z_p - z_q for the
    dual-graph edge between labels p and q.  Returns (indices, coeffs) with
    indices = (i, j, k, l): the shared pair, p's apex, q's apex.
    """
    i, j, k, l = shared_pair(p, q)
    vi, vj, vk, vl = (config.point(x) for x in (i, j, k, l))
    dij = det2(vi, vj)
    tijk = triangle_det(vi, vj, vk)
    tijl = triangle_det(vi, vj, vl)
    if tijk == 0 or tijl == 0:
        raise ValueError("degenerate labels")
    ci = dij * triangle_det(vj, vk, vl) / (tijk * tijl)
    cj = dij * triangle_det(vk, vi, vl) / (tijk * tijl)
    ck = dij / tijk
    cl = -dij / tijl
    return (i, j, k, l), (ci, cj, ck, cl)


# ---------------------------------------------------------------------------
# Sign state
# ---------------------------------------------------------------------------


class SignContradiction(Exception):
    """A sign assignment conflicted with an existing one."""


def _sort3(i: int, j: int, k: int) -> tuple[int, int, int, int]:
    """Ascending triple plus the parity (+1/-1) of the sorting permutation."""
    parity = 1
    if i > j:
        i, j, parity = j, i, -parity
    if j > k:
        j, k, parity = k, j, -parity
    if i > j:
        i, j, parity = j, i, -parity
    return i, j, k, parity


def _perm_parity(seq: Sequence[int]) -> int:
    """+1 for even permutations of sorted(seq), -1 for odd."""
    if len(seq) == 3:
        return _sort3(seq[0], seq[1], seq[2])[3]
    s = list(seq)
    parity = 1
    for i in range(len(s)):
        m = min(range(i, len(s)), key=lambda j: s[j])
        if m != i:
            s[i], s[m] = s[m], s[i]
            parity = -parity
    return parity


@dataclass
class SignState:
    """Partial knowledge of the pair signs s and triple signs t.

    Storage is canonical: s under ascending pairs (s(b,a) = -s(a,b)),
    t under ascending triples with the permutation parity applied on
    access.  Assigning a value that conflicts with a stored one raises
    SignContradiction; re-assigning the same value is a no-op.
    """

    s_known: dict[tuple[int, int], Sign] = field(default_factory=dict)
    t_known: dict[tuple[int, int, int], Sign] = field(default_factory=dict)

    def get_s(self, i: int, j: int) -> Optional[Sign]:
        if i == j:
            return "0"
        key = (min(i, j), max(i, j))
        val = self.s_known.get(key)
        if val is None:
            return None
        return val if i < j else sign_neg(val)

    def get_t(self, i: int, j: int, k: int) -> Optional[Sign]:
        if i == j or j == k or i == k:
            return "0"
        a, b, c, parity = _sort3(i, j, k)
        val = self.t_known.get((a, b, c))
        if val is None:
            return None
        return val if parity == 1 else sign_neg(val)

    def set_s(self, i: int, j: int, value: Sign) -> bool:
        """Record s(i,j) = value; returns True if this is new knowledge."""
        if value not in SIGNS:
            raise ValueError(f"bad sign {value!r}")
        if i == j:
            raise ValueError("s is only defined for distinct indices")
        key = (min(i, j), max(i, j))
        canon = value if i < j else sign_neg(value)
        old = self.s_known.get(key)
        if old is None:
            self.s_known[key] = canon
            return True
        if old != canon:
            raise SignContradiction(
                f"s{key} already {old}, cannot set {canon}"
            )
        return False

    def set_t(self, i: int, j: int, k: int, value: Sign) -> bool:
        if value not in SIGNS:
            raise ValueError(f"bad sign {value!r}")
        if len({i, j, k}) != 3:
            raise ValueError("t needs three distinct indices")
        a, b, c, parity = _sort3(i, j, k)
        key = (a, b, c)
        canon = value if parity == 1 else sign_neg(value)
        old = self.t_known.get(key)
        if old is None:
            self.t_known[key] = canon
            return True
        if old != canon:
            raise SignContradiction(
                f"t{key} already {old}, cannot set {canon}"
            )
        return False

    def copy(self) -> "SignState":
        return SignState(dict(self.s_known), dict(self.t_known))


def numeric_signs(config: GaleConfig) -> SignState:
    """The complete sign state of a concrete configuration."""
    from itertools import combinations

    st = SignState()
    n = config.params.n
    for i, j in combinations(range(1, n + 1), 2):
        st.set_s(i, j, config.s(i, j))
    for i, j, k in combinations(range(1, n + 1), 3):
        st.set_t(i, j, k, config.t(i, j, k))
    return st


def forced_signs(params: Parameters, labels: Sequence[Label]) -> SignState:
    """Signs every valid positively-oriented configuration must satisfy:
    each label {a<b<c} has s(a,b) = s(b,c) = '+', s(a,c) = '-' and
    t(a,b,c) = '+'.
    """
    if params.d % 2 != 0:
        raise ValueError(
            "forced sign patterns are established for even dimension only"
        )
    st = SignState()
    for lab in labels:
        a, b, c = sorted(lab)
        st.set_s(a, b, "+")
        st.set_s(b, c, "+")
        st.set_s(a, c, "-")
        st.set_t(a, b, c, "+")
    return st


# A premise is a recorded sign fact: ("s", (i, j), sign) or ("t", (i, j, k), sign).
Premise = tuple[str, tuple[int, ...], Sign]


@dataclass(frozen=True)
class Deduction:
    """One derived sign with the rule and premises that produced it.

    Premises are structured facts so a checker can re-validate the step
    without parsing text.  ``describe`` renders the step for humans.
    """

    kind: str  # 's' or 't'
    indices: tuple[int, ...]
    value: Sign
    rule: str  # 'assumption', 'R1' or 'R2'
    premises: tuple[Premise, ...]

    def describe(self) -> str:
        args = ",".join(str(x) for x in self.indices)
        prem = ", ".join(
            f"{k}({','.join(str(x) for x in idx)})={v}"
            for k, idx, v in self.premises
        )
        body = f"{self.kind}({args})={self.value} [{self.rule}]"
        return f"{body} from {prem}" if prem else body


def deduce_signs(
    state: SignState,
    params: Parameters,
    assumptions: Iterable[tuple[tuple[int, int, int], Sign]] = (),
) -> tuple[SignState, list[Deduction], Optional[str]]:
    """Close a sign state under the two sound deduction rules.

    Rule R1 (area as a sum of pair signs): if s(i,j), s(j,k), s(k,i) are all
    known and all lie in {+,0} then t(i,j,k) = '+' unless all three are '0';
    dually for {-,0}.

    Rule R2 (a point inside a wedge): if s(i,j) = s(j,k) = s(i,k) = '-',
    t(i,j,k) = '+', and point l lies in the wedge between rays i and k
    (witnessed by s(i,l) = s(l,k) = '+'), then t(i,l,j) = '+' and
    t(j,l,k) = '+'.

    assumptions are (triple, sign) pairs applied before closing.  Returns
    the closed state, the deductions in order, and an explanation string if
    a contradiction was reached (in which case the state is partial and the
    last recorded deduction is the step whose conclusion conflicted).
    """
    st = state.copy()
    deductions: list[Deduction] = []

    def apply(ded: Deduction) -> bool:
        """Record and apply one step; on conflict the step stays recorded so
        the contradiction itself is checkable."""
        try:
            if ded.kind == "t":
                fresh = st.set_t(ded.indices[0], ded.indices[1], ded.indices[2], ded.value)
            else:
                fresh = st.set_s(ded.indices[0], ded.indices[1], ded.value)
        except SignContradiction:
            deductions.append(ded)
            raise
        if fresh:
            deductions.append(ded)
        return fresh

    try:
        for (i, j, k), val in assumptions:
            apply(Deduction("t", (i, j, k), val, "assumption", ()))
    except SignContradiction as exc:
        return st, deductions, str(exc)

    n = params.n
    indices = range(1, n + 1)
    try:
        changed = True
        while changed:
            changed = False
            # R1
            from itertools import combinations, permutations

            for i, j, k in combinations(indices, 3):
                if st.get_t(i, j, k) is not None:
                    continue
                sij, sjk, ski = st.get_s(i, j), st.get_s(j, k), st.get_s(k, i)
                if None in (sij, sjk, ski):
                    continue
                signs = {sij, sjk, ski}
                if signs <= {"+", "0"}:
                    val = "0" if signs == {"0"} else "+"
                elif signs <= {"-", "0"}:
                    val = "0" if signs == {"0"} else "-"
                else:
                    continue
                prem = (
                    ("s", (i, j), sij),
                    ("s", (j, k), sjk),
                    ("s", (k, i), ski),
                )
                if apply(Deduction("t", (i, j, k), val, "R1", prem)):
                    changed = True
            # R2
            for i, j, k in permutations(indices, 3):
                if not (
                    st.get_s(i, j) == "-"
                    and st.get_s(j, k) == "-"
                    and st.get_s(i, k) == "-"
                    and st.get_t(i, j, k) == "+"
                ):
                    continue
                for l in indices:
                    if l in (i, j, k):
                        continue
                    if not (st.get_s(i, l) == "+" and st.get_s(l, k) == "+"):
                        continue
                    prem = (
                        ("s", (i, j), "-"),
                        ("s", (j, k), "-"),
                        ("s", (i, k), "-"),
                        ("t", (i, j, k), "+"),
                        ("s", (i, l), "+"),
                        ("s", (l, k), "+"),
                    )
                    for trip in ((i, l, j), (j, l, k)):
                        if st.get_t(*trip) != "+":
                            apply(Deduction("t", trip, "+", "R2", prem))
                            changed = True
    except SignContradiction as exc:
        return st, deductions, str(exc)
    return st, deductions, None


def edge_coefficient_signs(
    state: SignState, p: Label, q: Label
) -> Optional[tuple[tuple[int, ...], tuple[Sign, ...]]]:
    """Signs of the height coefficients in z_p - z_q, from sign data alone.

    With (i, j) the shared pair, k = apex of p, l = apex of q:
      coeff(h_k) has sign s(i,j) t(i,j,k), which is '+' for any label,
      coeff(h_l) has sign -s(i,j) t(i,j,l), which is '-' for any label,
      coeff(h_i) has sign s(i,j) t(j,k,l) t(i,j,k) t(i,j,l),
      coeff(h_j) has sign s(i,j) t(k,i,l) t(i,j,k) t(i,j,l).

    Returns None if some needed sign is unknown.
    """
    i, j, k, l = shared_pair(p, q)
    sij = state.get_s(i, j)
    tijk = state.get_t(i, j, k)
    tijl = state.get_t(i, j, l)
    tjkl = state.get_t(j, k, l)
    tkil = state.get_t(k, i, l)
    if None in (sij, tijk, tijl, tjkl, tkil):
        return None
    ck = sign_mul(sij, tijk)
    cl = sign_neg(sign_mul(sij, tijl))
    common = sign_mul(sij, sign_mul(tijk, tijl))
    ci = sign_mul(common, tjkl)
    cj = sign_mul(common, tkil)
    return (i, j, k, l), (ci, cj, ck, cl)


# ---------------------------------------------------------------------------
# Reconstruction: extended configuration -> simple polytope with objective
# ---------------------------------------------------------------------------


def rescale_to_zero_sum(config: GaleConfig) -> GaleConfig:
    """Positively rescale each vector so the configuration sums to zero.

    Scaling factors are strictly positive, so every sign and containment
    relation is preserved.  Raises ValueError if no positive dependence
    exists (impossible for a valid diagram).
    """
    n = config.params.n
    zero, one = Fraction(0), Fraction(1)
    # variables lam_i >= 1 with sum lam_i v_i = 0; minimize sum lam_i
    rows: list[Vec] = []
    rhs: list[Fraction] = []
    for coord in (0, 1):
        row = [config.point(i)[coord] for i in range(1, n + 1)]
        rows.append(list(row))
        rhs.append(zero)
        rows.append([-x for x in row])
        rhs.append(zero)
    for i in range(n):
        row = [zero] * n
        row[i] = -one
        rows.append(row)
        rhs.append(-one)
    res = solve_lp([one] * n, rows, rhs, maximize=False)
    if res.status != OPTIMAL:
        raise ValueError("no positive rescaling to zero sum exists")
    lams = res.x
    if any(l < 1 for l in lams):
        raise ValueError("rescaling produced a non-positive factor")
    pts = tuple(
        (config.point(i)[0] * lams[i - 1], config.point(i)[1] * lams[i - 1])
        for i in range(1, n + 1)
    )
    return GaleConfig(config.params, pts)


def normalize_heights(ext: ExtendedGaleConfig) -> ExtendedGaleConfig:
    """Shift all heights by one constant so they sum to 1.  Every height
    difference z_p - z_q is unchanged."""
    n = ext.config.params.n
    shift = (Fraction(1) - sum(ext.heights)) / n
    return ExtendedGaleConfig(
        ext.config, tuple(h + shift for h in ext.heights)
    )


@dataclass(frozen=True)
class ReconstructedPolytope:
    """A simple polytope {x : w_i . x <= 1} with a linear objective."""

    params: Parameters
    facet_normals: tuple[tuple[Fraction, ...], ...]  # w_1..w_n
    objective: tuple[Fraction, ...]


def reconstruct_polytope(ext: ExtendedGaleConfig) -> ReconstructedPolytope:
    """Invert the extended plane diagram into facet normals and objective.

    Requires the zero-sum normalizations (vector sum 0, height sum 1).  The
    kernel of the 3 x (n+1) matrix whose columns are (v_i, h_i) plus one
    final column (0, 0, -1) then contains the all-ones vector; completing it
    to a kernel basis whose last row is all ones yields the d facet-normal
    coordinate rows and, from the final column, the objective.
    """
    from .exactlp import nullspace

    cfg, heights = ext.config, ext.heights
    params = cfg.params
    n = params.n
    zero, one = Fraction(0), Fraction(1)
    if (
        sum(p[0] for p in cfg.points) != 0
        or sum(p[1] for p in cfg.points) != 0
    ):
        raise ValueError("vector sum must be zero; rescale first")
    if sum(heights) != 1:
        raise ValueError("height sum must be one; normalize first")

    b_rows = [
        [cfg.point(i)[0] for i in range(1, n + 1)] + [zero],
        [cfg.point(i)[1] for i in range(1, n + 1)] + [zero],
        [heights[i] for i in range(n)] + [-one],
    ]
    basis = nullspace(b_rows)
    if len(basis) != params.d + 1:
        raise ValueError("configuration is degenerate: wrong kernel rank")

    # express the all-ones vector (a kernel member by the normalizations) in
    # this basis, then swap it in for a basis member with nonzero coefficient
    from .exactlp import rref

    aug = [
        [basis[r][c] for r in range(len(basis))] + [one] for c in range(n + 1)
    ]
    red, piv = rref(aug)
    ncols = len(basis)
    coeffs = [zero] * ncols
    for r, p in enumerate(piv):
        if p == ncols:
            raise ValueError("all-ones vector not in the kernel")
        coeffs[p] = red[r][ncols]
    if any(
        sum(coeffs[r] * basis[r][c] for r in range(ncols)) != one
        for c in range(n + 1)
    ):
        raise ValueError("all-ones vector not in the kernel")
    pivot_idx = next(r for r in range(ncols) if coeffs[r] != 0)

    # the remaining d rows are the coordinate rows of the facet normals;
    # column j < n is (w_j, 1), the final column is (objective, 1)
    rows_w = [list(basis[r]) for r in range(ncols) if r != pivot_idx]

    # the kernel determines the normal points only up to an affine map; for
    # {x : w_j . x <= 1} to be bounded the origin must lie inside the hull of
    # the w_j, so translate their centroid (always interior) to the origin.
    # Subtracting a constant from a whole row adds a multiple of the all-ones
    # kernel vector, keeping the rows a valid kernel basis; the objective
    # point in the final column translates along with the configuration.
    for row in rows_w:
        mean = sum(row[:n]) / n
        for c in range(n + 1):
            row[c] -= mean

    normals = tuple(
        tuple(rows_w[r][c] for r in range(params.d)) for c in range(n)
    )
    # With the diagram's final vector fixed as (0, 0, -1) and intersection
    # heights read as plain axis heights, the recovered final column is the
    # antipode of the objective point: negating it makes increasing height
    # agree with increasing objective value, which verification enforces on
    # every reconstruction.
    objective = tuple(-rows_w[r][n] for r in range(params.d))
    return ReconstructedPolytope(params, normals, objective)


def affine_dependency_rows(
    points: Sequence[Sequence[Fraction]],
) -> list[Vec]:
    """Basis rows for the space of affine dependencies of a point sequence
    (coefficient vectors c with sum(c) = 0 and sum(c_i * p_i) = 0)."""
    from .exactlp import nullspace

    dim = len(points[0])
    rows: list[Vec] = [
        [Fraction(p[k]) for p in points] for k in range(dim)
    ]
    rows.append([Fraction(1)] * len(points))
    return nullspace(rows)


def extended_gale_transform(
    normals: Sequence[Sequence[Fraction]],
    objective: Sequence[Fraction],
) -> ExtendedGaleConfig:
    """Forward transform: facet normals plus an objective point into the
    plane-plus-height diagram whose implicit final vector is (0, 0, -1).

    The rows are a basis of the affine dependencies of the point sequence
    (w_1, ..., w_n, objective), rearranged so the final column reads
    (0, 0, -1): the first two rows then carry the plane configuration and
    the third the lifting heights.  Because the all-ones vector is a linear
    dependency of the diagram columns, the plane points automatically sum
    to zero and the heights to one, matching what reconstruction expects.
    The plane configuration is validated against the label family (with a
    reflection retry, since a dependency basis fixes orientation only up to
    sign); non-label degeneracies are allowed.
    """
    n = len(normals)
    d = len(objective)
    if any(len(w) != d for w in normals):
        raise ValueError("normals and objective must share one dimension")
    if n != d + 3:
        raise ValueError(f"expected {d + 3} normals for dimension {d}, got {n}")
    params = Parameters(d, n)

    pts = [tuple(Fraction(x) for x in w) for w in normals]
    # Mirror of the reconstruction convention: there the recovered final
    # column is the antipode of the objective point, so the forward
    # direction transforms the sequence (w_1, ..., w_n, -objective); with
    # the final vector then fixed at (0, 0, -1), increasing intersection
    # height agrees with increasing objective value (checked end-to-end by
    # realization verification on both directions of the transform).
    pts.append(tuple(-Fraction(x) for x in objective))
    deps = affine_dependency_rows(pts)
    if len(deps) != 3:
        raise ValueError(
            f"degenerate input: affine dependency space has rank {len(deps)}"
        )

    finals = [row[n] for row in deps]
    try:
        pivot = next(r for r in range(3) if finals[r] != 0)
    except StopIteration:
        raise ValueError(
            "degenerate input: objective participates in no affine dependency"
        )
    plane_rows = []
    for r in range(3):
        if r == pivot:
            continue
        f = finals[r] / finals[pivot]
        plane_rows.append(
            [deps[r][c] - f * deps[pivot][c] for c in range(n + 1)]
        )
    height_row = [-deps[pivot][c] / finals[pivot] for c in range(n + 1)]

    labels = vertex_labels(params)
    heights = tuple(height_row[:n])
    for reflect in (False, True):
        xs = [-x for x in plane_rows[0][:n]] if reflect else plane_rows[0][:n]
        config = GaleConfig(
            params, tuple((xs[c], plane_rows[1][c]) for c in range(n))
        )
        try:
            validate_config(config, labels, strict=False)
        except GaleValidationError:
            continue
        return ExtendedGaleConfig(config, heights)
    raise GaleValidationError(
        "transform does not match the label family in either orientation"
    )
