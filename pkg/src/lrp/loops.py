"""Reflexive loops: possibly non-convex or self-intersecting boundary walks.

A loop of index l is a cyclic sequence of nonzero lattice points with
primitive steps, consecutive determinants of absolute value l, and
primitive corners.  Convex polygons of index l give loops by walking
their boundary points, but multi-traversals and genuinely non-convex
walks are loops too; the dual construction and the signed length still
make sense for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import (
    IntMatrix,
    SublatticeInfo,
    Vec,
    cross2,
    gcd_all,
    is_primitive,
    sublattice_of,
    vdot,
    vec_mat,
    vneg,
    vsub,
)
from .polygon import Polygon, boundary_points
from .reflexive import is_l_reflexive


@dataclass(frozen=True)
class Loop:
    """Validated cyclic sequence of boundary lattice points with its index."""

    points: tuple[Vec, ...]
    index: int


@dataclass(frozen=True)
class LoopMetrics:
    length: int
    winding: int
    boundary_count: int


def _on_segment(a: Vec, x: Vec, b: Vec) -> bool:
    d1, d2 = vsub(x, a), vsub(b, a)
    return cross2(d1, d2) == 0 and 0 <= vdot(d1, d2) <= vdot(d2, d2)


def validate_loop(points: Sequence[Vec], l: int) -> Loop:
    """Check the three loop conditions and return the Loop, naming the
    first violated condition otherwise.

    Two-point cycles are rejected as degenerate; the conditions are
    stated per consecutive pair and repeats are allowed, so k-fold
    traversals are fine.
    """
    if l < 1:
        raise ValueError("index must be positive")
    pts = tuple(tuple(int(x) for x in p) for p in points)
    if len(pts) < 3:
        raise ValueError("degenerate loop: at least 3 points required")
    if any(p == (0, 0) for p in pts):
        raise ValueError("loop points must be nonzero")
    t = len(pts)
    for i in range(t):
        a, b = pts[i], pts[(i + 1) % t]
        if not is_primitive(vsub(b, a)):
            raise ValueError(f"condition (1) violated at step {i}: step not primitive")
        if abs(cross2(a, b)) != l:
            raise ValueError(f"condition (2) violated at step {i}: determinant not ±{l}")
    for i in range(t):
        prv, cur, nxt = pts[(i - 1) % t], pts[i], pts[(i + 1) % t]
        if not _on_segment(prv, cur, nxt) and not is_primitive(cur):
            raise ValueError(f"condition (3) violated at point {i}: vertex not primitive")
    return Loop(pts, l)


def loop_length(loop: Loop) -> int:
    """Signed length: the sum of consecutive determinants divided by the
    index.  Each determinant is ±l, so each step contributes ±1."""
    pts, t = loop.points, len(loop.points)
    return sum(cross2(pts[i], pts[(i + 1) % t]) for i in range(t)) // loop.index


def winding_number(loop: Loop) -> int:
    """Exact winding of the cycle around the origin.

    Counts signed crossings of the positive x axis; points lying on the
    axis are treated as belonging to the lower side, which keeps the
    count consistent without any angle arithmetic.
    """
    pts, t = loop.points, len(loop.points)
    if any(p == (0, 0) for p in pts):
        raise ValueError("loop passes through the origin")
    w = 0
    for i in range(t):
        a, b = pts[i], pts[(i + 1) % t]
        if a[1] <= 0:
            if b[1] > 0 and cross2(a, b) > 0:
                w += 1
        elif b[1] <= 0 and cross2(a, b) < 0:
            w -= 1
    return w


def step_normals(loop: Loop) -> tuple[Vec, ...]:
    """Primitive normal of each step, oriented so its pairing with the
    step's endpoints is +l (the lattice distance of the step line)."""
    pts, t, l = loop.points, len(loop.points), loop.index
    out = []
    for i in range(t):
        a, b = pts[i], pts[(i + 1) % t]
        s = vsub(b, a)
        u = (s[1], -s[0])
        out.append(u if vdot(u, a) > 0 else vneg(u))
    return tuple(out)


def dual_loop(loop: Loop) -> Loop:
    """Boundary points of the dual loop.

    Walks the step normals and emits the lattice points of each segment
    between consecutive distinct normals half-open, so collinear runs of
    the original loop (equal normals) collapse instead of stalling the
    cycle.  Applying this twice recovers the original point cycle up to
    rotation.
    """
    normals = step_normals(loop)
    t = len(normals)
    out: list[Vec] = []
    for i in range(t):
        u, v = normals[i], normals[(i + 1) % t]
        if u == v:
            continue
        diff = vsub(v, u)
        g = gcd_all(diff)
        sx, sy = diff[0] // g, diff[1] // g
        out.extend((u[0] + j * sx, u[1] + j * sy) for j in range(g))
    return validate_loop(out, loop.index)


def twelve_w_check(loop: Loop) -> bool:
    """Length of the loop plus length of its dual equals twelve times the
    winding number."""
    return loop_length(loop) + loop_length(dual_loop(loop)) == 12 * winding_number(loop)


def loop_metrics(loop: Loop) -> LoopMetrics:
    return LoopMetrics(loop_length(loop), winding_number(loop), len(loop.points))


def loop_boundary_sublattice(loop: Loop) -> SublatticeInfo:
    """Sublattice generated by the loop points; its index equals the loop
    index."""
    return sublattice_of(loop.points)


def loop_from_polygon(p: Polygon) -> Loop:
    """Boundary walk of a reflexive polygon as a loop of the same index."""
    l = is_l_reflexive(p)
    if l is None:
        raise ValueError("not l-reflexive")
    return validate_loop(boundary_points(p), l)


def repeat_loop(loop: Loop, k: int) -> Loop:
    """k-fold traversal; length and winding scale by k."""
    if k < 1:
        raise ValueError("traversal count must be positive")
    return validate_loop(loop.points * k, loop.index)


def transform_loop(loop: Loop, m: IntMatrix) -> Loop:
    """Image under right multiplication; the index scales by |det m|.

    The image of a valid loop need not be valid (steps can lose
    primitivity), so this validates and raises where that happens.
    """
    d = abs(m.det())
    if d == 0:
        raise ValueError("singular map")
    return validate_loop([vec_mat(p, m) for p in loop.points], loop.index * d)
