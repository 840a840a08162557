"""Reflexive polygons of odd index: recognition, duality, classification.

The classification pipeline mirrors the change-of-lattice argument: an
index-l polygon is always the image of one of the sixteen index-1
representatives under a shear (l i / 0 1) with gcd(l, i) = 1, so the
search space per index is sixteen polygons times the units mod l.  The
sixteen representatives themselves come from a self-contained breadth
first enumeration, cross-checked against the known count.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .lattice import (
    IntMatrix,
    SublatticeInfo,
    Vec,
    cross2,
    restrict_to_sublattice,
    sublattice_of,
    vdot,
    vsub,
)
from .polygon import (
    ORIGIN2,
    Polygon,
    apply_matrix,
    boundary_points,
    canonical_form,
    contains,
    convex_hull,
    edges,
    interior_points,
    is_isomorphic,
    lattice_points,
    normalized_volume,
    origin_interior,
)

# Enumeration of the index-1 representatives: seed triangles live in this
# box, and grown polygons never exceed this normalized volume.  Any polygon
# whose open interior meets the lattice in at most the origin has volume
# at most 9 (Scott's inequality); 12 leaves margin without costing time.
SEARCH_BOX = 4
VOLUME_CAP = 12


@dataclass(frozen=True)
class LReflexiveRecord:
    """A classified polygon of index l together with its cached invariants."""

    polygon: Polygon
    index: int
    dual: Polygon
    source_id: int
    hnf_i: int
    b: int
    b_dual: int
    self_dual: bool
    order: int


@dataclass(frozen=True)
class HStarVector:
    c0: int
    c1: int
    c2: int


@dataclass(frozen=True)
class EhrhartQuadratic:
    """Exact coefficients of the lattice-point counting polynomial."""

    a2: Fraction
    a1: Fraction
    a0: Fraction

    def evaluate(self, m: int) -> Fraction:
        return self.a2 * m * m + self.a1 * m + self.a0


def is_ldp(p: Polygon) -> bool:
    """Origin strictly interior and every vertex primitive."""
    from .lattice import is_primitive

    return origin_interior(p) and all(is_primitive(v) for v in p.vertices)


def is_l_reflexive(p: Polygon) -> int | None:
    """The common local index of all edges, or None if they differ or the
    polygon is not an LDP polygon."""
    if not is_ldp(p):
        return None
    es = edges(p)
    l = es[0].local_index
    if all(e.local_index == l for e in es):
        return l
    return None


def gorenstein_index(p: Polygon) -> int:
    """Least common multiple of the edge local indices of an LDP polygon."""
    if not is_ldp(p):
        raise ValueError("not an LDP polygon")
    return math.lcm(*(e.local_index for e in edges(p)))


def dual_scaled(p: Polygon, l: int) -> Polygon:
    """The dual polygon scaled by l, i.e. the hull of the edge normals.

    Defined exactly when p is reflexive of index l; the result is again
    reflexive of index l and the construction is an involution up to
    isomorphism.
    """
    if is_l_reflexive(p) != l:
        raise ValueError("not l-reflexive")
    return convex_hull([e.normal for e in edges(p)])


def twelve_check(r: LReflexiveRecord) -> bool:
    """Boundary points of the polygon and its scaled dual sum to twelve."""
    return r.b + r.b_dual == 12


def order_of(p: Polygon) -> int:
    """Smallest k such that the open polygon p/k contains no nonzero
    lattice point."""
    es = edges(p)
    deepest = 0
    for x in interior_points(p):
        if x == ORIGIN2:
            continue
        k_max = min(
            (e.local_index - 1) // d
            for e in es
            if (d := vdot(e.normal, x)) > 0
        )
        deepest = max(deepest, k_max)
    return deepest + 1


def hstar(r: LReflexiveRecord) -> HStarVector:
    """Numerator coefficients of the lattice-point generating function."""
    l, b = r.index, r.b
    return HStarVector(1, (l + 1) // 2 * b - 2, (l - 1) // 2 * b + 1)


def ehrhart_polynomial(p: Polygon) -> EhrhartQuadratic:
    b = len(boundary_points(p))
    return EhrhartQuadratic(Fraction(normalized_volume(p), 2), Fraction(b, 2), Fraction(1))


def ehrhart_roots_on_line(p: Polygon, l: int) -> bool:
    """Exact test that both roots of the counting polynomial have real
    part -1/(2l).

    Happens iff the volume equals l times the boundary length and the
    discriminant b^2 - 8lb is nonpositive (a conjugate pair, or a double
    real root when zero).
    """
    b = len(boundary_points(p))
    return normalized_volume(p) == l * b and b * b - 8 * l * b <= 0


def is_ldp_roots_imply_reflexive(p: Polygon) -> bool:
    """Roots on the critical line force reflexivity; False would be a
    counterexample (none is expected)."""
    l = gorenstein_index(p)
    if not ehrhart_roots_on_line(p, l):
        return True
    return is_l_reflexive(p) == l


def boundary_sublattice(p: Polygon) -> SublatticeInfo:
    """Sublattice generated by the boundary lattice points; its index
    equals the reflexive index of p."""
    if is_l_reflexive(p) is None:
        raise ValueError("not l-reflexive")
    return sublattice_of(boundary_points(p))


def associated_1_reflexive(p: Polygon) -> Polygon:
    """The polygon rewritten in coordinates of its boundary sublattice,
    where it becomes reflexive of index 1."""
    lat = boundary_sublattice(p)
    return convex_hull(restrict_to_sublattice(p.vertices, lat))


def centrally_symmetric_hexagon(l: int) -> Polygon:
    """conv{±(0,1), ±(l,2), ±(l,1)}: self-dual of index l for odd l."""
    return convex_hull([(0, 1), (l, 2), (l, 1), (0, -1), (-l, -2), (-l, -1)])


# The eight lattice symmetries of the coordinate box, used only to thin
# the raw search states; they map the box onto itself, so growth from a
# representative sees exactly the images of the growth of its mates.
_BOX_SYMS = (
    lambda v: (v[0], v[1]),
    lambda v: (-v[0], v[1]),
    lambda v: (v[0], -v[1]),
    lambda v: (-v[0], -v[1]),
    lambda v: (v[1], v[0]),
    lambda v: (-v[1], v[0]),
    lambda v: (v[1], -v[0]),
    lambda v: (-v[1], -v[0]),
)


def _sym_key(p: Polygon) -> tuple:
    return min(tuple(sorted(s(v) for v in p.vertices)) for s in _BOX_SYMS)


def _admissible(points: tuple[Vec, ...]) -> Polygon | None:
    """Hull if it is a search state: origin inside (boundary allowed),
    no nonzero interior lattice point, volume within the cap."""
    try:
        p = convex_hull(points)
    except ValueError:
        return None
    if normalized_volume(p) > VOLUME_CAP:
        return None
    if not contains(p, ORIGIN2):
        return None
    if any(x != ORIGIN2 for x in interior_points(p)):
        return None
    return p


@lru_cache(maxsize=1)
def enumerate_1_reflexive() -> tuple[Polygon, ...]:
    """One representative per isomorphism class of polygons whose unique
    interior lattice point is the origin.  There are sixteen.

    Breadth-first growth: seed with every triangle drawn from the search
    box whose closed hull contains the origin and whose open interior is
    lattice-free away from the origin, then repeatedly adjoin one more
    box point.  Any target polygon is an increasing chain of sub-hulls
    of itself starting from a triangle of its own vertices, so the walk
    is exhaustive; states stay in raw coordinates so the box never
    drifts out from under the search.  Each class representative is
    rebased so that (0, 1) is a vertex and (0, 1) is also an edge
    normal, the normalisation the index-l classification requires.
    """
    box = [
        (x, y)
        for x in range(-SEARCH_BOX, SEARCH_BOX + 1)
        for y in range(-SEARCH_BOX, SEARCH_BOX + 1)
        if (x, y) != ORIGIN2
    ]

    queue: deque[Polygon] = deque()
    seen: set[tuple] = set()

    def push(p: Polygon) -> None:
        k = _sym_key(p)
        if k not in seen:
            seen.add(k)
            queue.append(p)

    for a, b, c in combinations(box, 3):
        area2 = cross2(vsub(b, a), vsub(c, a))
        if not 0 < abs(area2) <= VOLUME_CAP:
            continue
        p = _admissible((a, b, c))
        if p is not None:
            push(p)

    classes: dict[IntMatrix, Polygon] = {}
    while queue:
        p = queue.popleft()
        if interior_points(p) == (ORIGIN2,):
            classes.setdefault(canonical_form(p), p)
        verts = p.vertices
        for x in box:
            if any(abs(cross2(x, v)) > VOLUME_CAP for v in verts):
                continue
            if contains(p, x):
                continue
            grown = _admissible(verts + (x,))
            if grown is not None:
                push(grown)

    if len(classes) != 16:
        raise RuntimeError(f"expected 16 index-1 classes, found {len(classes)}")
    reps = []
    for p in classes.values():
        if is_l_reflexive(p) != 1:
            raise RuntimeError("unique-interior-point polygon failed the index-1 test")
        reps.append(_rebase_rep(p))
    reps.sort(key=lambda q: canonical_form(q).rows)
    return tuple(reps)


def _rebase_rep(p: Polygon) -> Polygon:
    """Move p by a unimodular map so (0, 1) is a vertex and an edge normal.

    If v is a vertex and u an edge normal with <u, v> = 1, the matrix
    with columns (-v2, v1) and u does both at once.
    """
    candidates = []
    for e in edges(p):
        u = e.normal
        for v in p.vertices:
            if vdot(u, v) == 1:
                m = IntMatrix(((-v[1], u[0]), (v[0], u[1])))
                candidates.append(apply_matrix(p, m))
    if not candidates:
        raise RuntimeError("no admissible rebasing for an index-1 representative")
    return min(candidates, key=lambda q: q.vertices)


@lru_cache(maxsize=1)
def hexagon_source_id() -> int:
    """Position (1-based) of the centrally symmetric hexagon among the
    sixteen representatives."""
    target = convex_hull([(0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)])
    for sid, q in enumerate(enumerate_1_reflexive(), 1):
        if is_isomorphic(q, target):
            return sid
    raise RuntimeError("hexagon representative missing")


def _build_record(p: Polygon, l: int, source_id: int, hnf_i: int) -> LReflexiveRecord:
    dual = dual_scaled(p, l)
    return LReflexiveRecord(
        polygon=p,
        index=l,
        dual=dual,
        source_id=source_id,
        hnf_i=hnf_i,
        b=len(boundary_points(p)),
        b_dual=len(boundary_points(dual)),
        self_dual=is_isomorphic(p, dual),
        order=order_of(p),
    )


@lru_cache(maxsize=None)
def classify(l: int) -> tuple[LReflexiveRecord, ...]:
    """All isomorphism classes of index-l reflexive polygons, sorted by
    canonical form.

    Candidates are images of the sixteen rebased representatives under
    (l i / 0 1) for 0 < i < l coprime to l, filtered by the reflexivity
    test and deduplicated by canonical form.  Even l runs the identical
    search and comes back empty; emptiness is observed, not assumed.
    """
    if l < 1:
        raise ValueError("index must be positive")
    reps = enumerate_1_reflexive()
    found: dict[IntMatrix, LReflexiveRecord] = {}
    if l == 1:
        for sid, q in enumerate(reps, 1):
            found[canonical_form(q)] = _build_record(q, 1, sid, 0)
    else:
        for sid, q in enumerate(reps, 1):
            for i in range(1, l):
                if math.gcd(i, l) != 1:
                    continue
                cand = apply_matrix(q, IntMatrix(((l, i), (0, 1))))
                if is_l_reflexive(cand) != l:
                    continue
                key = canonical_form(cand)
                if key not in found:
                    found[key] = _build_record(cand, l, sid, i)
    return tuple(found[k] for k in sorted(found, key=lambda m: m.rows))


def hexagon_classes_3k(k: int) -> tuple[int, ...]:
    """Smallest shear parameter per isomorphism class of index-3k hexagons.

    Candidates are 0 < i < 3k with i and i+1 both units mod 3k.  Two
    candidates describe isomorphic hexagons when their signature sets
    {±i, ±j, -i-1, h} intersect mod 3k, where ij = -1 and h(-i-1) = 1;
    classes are the transitive closure of that overlap relation.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("index not ≡ 3 mod 6 family")
    n = 3 * k
    cands = [
        i
        for i in range(1, n)
        if math.gcd(n, i) == 1 and math.gcd(n, i + 1) == 1
    ]
    sigs = {}
    for i in cands:
        j = (-pow(i, -1, n)) % n
        h = pow(-(i + 1), -1, n)
        sigs[i] = frozenset({i, (-i) % n, j, (-j) % n, (-(i + 1)) % n, h})

    parent = {i: i for i in cands}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in combinations(cands, 2):
        if sigs[a] & sigs[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    return tuple(sorted({find(i) for i in cands}))


def verify_3k_structure(k: int) -> bool:
    """Every index-3k polygon is a self-dual hexagon from the hexagon
    source, and the class count agrees with the shear-parameter count."""
    recs = classify(3 * k)
    hid = hexagon_source_id()
    if not all(
        len(r.polygon.vertices) == 6 and r.self_dual and r.source_id == hid
        for r in recs
    ):
        return False
    return len(recs) == len(hexagon_classes_3k(k))
