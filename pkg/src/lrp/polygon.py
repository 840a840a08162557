"""Lattice polygon geometry with exact arithmetic.

Polygons are strictly convex counterclockwise vertex cycles.  Point
location and lattice-point enumeration use integer half-plane tests
over the bounding box; every polygon in this package is tiny, so the
simple exact scan beats anything clever.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lattice import (
    IntMatrix,
    Vec,
    cross2,
    gcd_all,
    hnf,
    vdot,
    vec_mat,
    vsub,
)

ORIGIN2: Vec = (0, 0)


@dataclass(frozen=True)
class Polygon:
    """Strictly convex lattice polygon; vertices counterclockwise.

    The vertex tuple stores true corners only (no three consecutive
    collinear points), starting from the lexicographically smallest
    vertex so that equal polygons compare equal.
    """

    vertices: tuple[Vec, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise ValueError("degenerate hull")
        m = len(vs)
        for i in range(m):
            a, b, c = vs[i], vs[(i + 1) % m], vs[(i + 2) % m]
            if cross2(vsub(b, a), vsub(c, b)) <= 0:
                raise ValueError("vertices not strictly convex counterclockwise")


@dataclass(frozen=True)
class EdgeData:
    """One hull edge with its primitive outer normal and local index."""

    tail: Vec
    head: Vec
    normal: Vec
    local_index: int
    lattice_length: int


def convex_hull(points: Iterable[Vec]) -> Polygon:
    """Counterclockwise hull of the points, collinear non-corners dropped."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if len(pts) < 3:
        raise ValueError("degenerate hull")

    def chain(ps: Sequence[Vec]) -> list[Vec]:
        out: list[Vec] = []
        for p in ps:
            while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("degenerate hull")
    return Polygon(tuple(hull))


def _edge_lines(p: Polygon) -> list[tuple[Vec, int]]:
    """(outer normal, support value) per edge; origin need not be inside."""
    out = []
    vs = p.vertices
    m = len(vs)
    for i in range(m):
        t, h = vs[i], vs[(i + 1) % m]
        d = vsub(h, t)
        g = gcd_all(d)
        n = (d[1] // g, -d[0] // g)
        out.append((n, vdot(n, t)))
    return out


def origin_interior(p: Polygon) -> bool:
    return all(off > 0 for _, off in _edge_lines(p))


def contains(p: Polygon, x: Vec, strict: bool = False) -> bool:
    if strict:
        return all(vdot(n, x) < off for n, off in _edge_lines(p))
    return all(vdot(n, x) <= off for n, off in _edge_lines(p))


def edges(p: Polygon) -> tuple[EdgeData, ...]:
    """Edge data in cyclic order; requires the origin strictly inside."""
    vs = p.vertices
    m = len(vs)
    result = []
    for i in range(m):
        t, h = vs[i], vs[(i + 1) % m]
        step = vsub(h, t)
        g = gcd_all(step)
        n = (step[1] // g, -step[0] // g)
        li = vdot(n, t)
        if li <= 0:
            raise ValueError("origin not interior")
        result.append(EdgeData(t, h, n, li, g))
    return tuple(result)


def boundary_points(p: Polygon) -> tuple[Vec, ...]:
    """All lattice points on the boundary, in cyclic order."""
    out: list[Vec] = []
    vs = p.vertices
    m = len(vs)
    for i in range(m):
        t, h = vs[i], vs[(i + 1) % m]
        step = vsub(h, t)
        g = gcd_all(step)
        sx, sy = step[0] // g, step[1] // g
        out.extend((t[0] + j * sx, t[1] + j * sy) for j in range(g))
    return tuple(out)


def _row_sweep(p: Polygon, strict: bool) -> Iterator[Vec]:
    """Lattice points row by row, solving the edge inequalities for x.

    Keeps enumeration linear in the number of rows plus output, which
    matters for the long thin polygons of large index.
    """
    lines = _edge_lines(p)
    ys = [v[1] for v in p.vertices]
    for y in range(min(ys), max(ys) + 1):
        lo, hi = None, None
        empty = False
        for (n0, n1), off in lines:
            c = off - n1 * y
            if n0 == 0:
                if (c <= 0) if strict else (c < 0):
                    empty = True
                    break
            elif n0 > 0:
                bound = (c - 1) // n0 if strict else c // n0
                hi = bound if hi is None else min(hi, bound)
            else:
                bound = c // n0 + 1 if strict else -((-c) // n0)
                lo = bound if lo is None else max(lo, bound)
        if empty or lo is None or hi is None:
            continue
        for x in range(lo, hi + 1):
            yield (x, y)


def interior_points(p: Polygon) -> tuple[Vec, ...]:
    """All lattice points strictly inside, in row-sweep order."""
    return tuple(_row_sweep(p, strict=True))


def lattice_points(p: Polygon) -> tuple[Vec, ...]:
    """All lattice points of the closed polygon, in row-sweep order."""
    return tuple(_row_sweep(p, strict=False))


def normalized_volume(p: Polygon) -> int:
    """Twice the Euclidean area; an integer for lattice polygons."""
    vs = p.vertices
    m = len(vs)
    return sum(cross2(vs[i], vs[(i + 1) % m]) for i in range(m))


def _frames(p: Polygon) -> Iterator[tuple[Vec, ...]]:
    vs = p.vertices
    m = len(vs)
    for s in range(m):
        yield tuple(vs[(s + k) % m] for k in range(m))
        yield tuple(vs[(s - k) % m] for k in range(m))


def _canonical(p: Polygon) -> tuple[IntMatrix, Vec]:
    best: IntMatrix | None = None
    start: Vec = p.vertices[0]
    for frame in _frames(p):
        mat = IntMatrix((tuple(v[0] for v in frame), tuple(v[1] for v in frame)))
        h = hnf(mat)[1]
        if best is None or h.rows < best.rows:
            best, start = h, frame[0]
    assert best is not None
    return best, start


def canonical_form(p: Polygon) -> IntMatrix:
    """Complete invariant for linear unimodular equivalence.

    Over the 2m rotations and reflections of the vertex cycle, form the
    2 x m matrix whose columns are the frame's vertices, reduce it to
    Hermite normal form (which quotients out the coordinate change),
    and keep the lexicographically smallest result.  Unimodular maps
    preserve hull adjacency, so cyclic frames suffice.
    """
    return _canonical(p)[0]


def canonical_cycle(p: Polygon) -> tuple[Vec, ...]:
    """Counterclockwise vertex cycle rotated to start at the vertex that
    heads the winning canonical frame."""
    _, start = _canonical(p)
    i = p.vertices.index(start)
    return p.vertices[i:] + p.vertices[:i]


def is_isomorphic(p: Polygon, q: Polygon) -> bool:
    """Linear unimodular equivalence test via canonical forms."""
    return canonical_form(p) == canonical_form(q)


def apply_matrix(p: Polygon, m: IntMatrix) -> Polygon:
    """Image polygon under right multiplication by a nonsingular matrix."""
    if m.det() == 0:
        raise ValueError("singular map")
    return convex_hull([vec_mat(v, m) for v in p.vertices])
