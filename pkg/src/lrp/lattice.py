"""Exact integer linear algebra on tiny lattices.

Vectors are plain tuples of ints (dimension 2 or 3 throughout the
package) and matrices are immutable row-major tuples of tuples.  All
arithmetic is arbitrary-precision integer; nothing here ever touches
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def gcd_all(xs: Iterable[int]) -> int:
    """Nonnegative gcd of a nonempty sequence; the all-zero sequence gives 0."""
    xs = tuple(xs)
    if not xs:
        raise ValueError("empty sequence")
    return math.gcd(*xs)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff v is nonzero and the segment from the origin to v contains
    no lattice point besides its endpoints."""
    return gcd_all(v) == 1


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vdot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def cross2(a: Vec, b: Vec) -> int:
    """det(a b) for plane vectors; twice the signed area of conv{0, a, b}."""
    return a[0] * b[1] - a[1] * b[0]


def cross3(a: Vec, b: Vec) -> Vec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def primitive_part(v: Vec) -> Vec:
    """v divided by the gcd of its entries (v must be nonzero)."""
    g = gcd_all(v)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return IntMatrix(
            tuple(tuple(vdot(r, c) for c in cols) for r in self.rows)
        )

    def _minor(self, i: int, j: int) -> "IntMatrix":
        return IntMatrix(
            tuple(
                tuple(x for jj, x in enumerate(r) if jj != j)
                for ii, r in enumerate(self.rows)
                if ii != i
            )
        )

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        return sum(
            (-1) ** j * self.rows[0][j] * self._minor(0, j).det()
            for j in range(n)
            if self.rows[0][j]
        )

    def adjugate(self) -> "IntMatrix":
        """Matrix of cofactors transposed, so self @ adjugate == det * identity."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("adjugate of non-square matrix")
        if n == 1:
            return IntMatrix(((1,),))
        return IntMatrix(
            tuple(
                tuple((-1) ** (i + j) * self._minor(j, i).det() for j in range(n))
                for i in range(n)
            )
        )


def vec_mat(v: Vec, m: IntMatrix) -> Vec:
    """Row vector times matrix."""
    if len(v) != m.nrows:
        raise ValueError("shape mismatch")
    return tuple(sum(v[k] * m.rows[k][j] for k in range(m.nrows)) for j in range(m.ncols))


def mat_solve_right(v: IntMatrix, w: IntMatrix) -> IntMatrix | None:
    """Integer solution x of v @ x = w for square nonsingular v, else None."""
    d = v.det()
    if d == 0:
        raise ValueError("singular matrix")
    num = v.adjugate() @ w
    rows = []
    for r in num.rows:
        row = []
        for x in r:
            q, rem = divmod(x, d)
            if rem:
                return None
            row.append(q)
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (u, h) with u unimodular and h = u @ a.  h is the canonical
    representative of the left GL(Z) orbit of a: row echelon with
    positive pivots and every entry above a pivot reduced into
    [0, pivot).  Canonicity is what makes this both a lattice-basis
    normaliser and an equality test for row lattices.
    """
    m, n = a.nrows, a.ncols
    h = [list(row) for row in a.rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def addmul(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        hd, hs = h[dst], h[src]
        for j in range(n):
            hd[j] -= q * hs[j]
        ud, us = u[dst], u[src]
        for j in range(m):
            ud[j] -= q * us[j]

    def swap(i: int, j: int) -> None:
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def negate(i: int) -> None:
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            piv = None
            for i in range(r, m):
                if h[i][col] != 0 and (piv is None or abs(h[i][col]) < abs(h[piv][col])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                swap(r, piv)
            if all(h[i][col] == 0 for i in range(r + 1, m)):
                break
            for i in range(r + 1, m):
                addmul(i, r, h[i][col] // h[r][col])
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            negate(r)
        for i in range(r):
            addmul(i, r, h[i][col] // h[r][col])
        r += 1

    return (
        IntMatrix(tuple(tuple(row) for row in u)),
        IntMatrix(tuple(tuple(row) for row in h)),
    )


@dataclass(frozen=True)
class SublatticeInfo:
    """A finite-index sublattice, described by its canonical HNF basis."""

    ambient_dim: int
    basis: IntMatrix
    index: int


def sublattice_of(points: Sequence[Vec]) -> SublatticeInfo:
    """Sublattice generated by the given points.

    The points must span the ambient space over the rationals; the
    returned basis rows are in Hermite normal form and the index is the
    product of its diagonal.
    """
    pts = tuple(tuple(p) for p in points)
    if not pts:
        raise ValueError("degenerate generator set")
    n = len(pts[0])
    _, h = hnf(IntMatrix.from_rows(pts))
    rows = [r for r in h.rows if any(r)]
    if len(rows) < n:
        raise ValueError("degenerate generator set")
    basis = IntMatrix(tuple(rows))
    index = 1
    for i in range(n):
        index *= basis.rows[i][i]
    return SublatticeInfo(n, basis, index)


def restrict_to_sublattice(points: Sequence[Vec], lat: SublatticeInfo) -> tuple[Vec, ...]:
    """Coordinates of each point with respect to the basis of `lat`.

    Errors out if any point does not lie in the sublattice.
    """
    b = lat.basis.rows
    n = lat.ambient_dim
    out = []
    for p in points:
        if len(p) != n:
            raise ValueError("dimension mismatch")
        c = [0] * n
        for j in range(n):
            rem = p[j] - sum(c[k] * b[k][j] for k in range(j))
            q, r = divmod(rem, b[j][j])
            if r:
                raise ValueError("point not in sublattice")
            c[j] = q
        out.append(tuple(c))
    return tuple(out)
