"""Exact integer linear algebra and lattice-point enumeration.

Vectors are tuples of Python ints and matrices are tuples of row vectors.
Where division is unavoidable the intermediates are ``fractions.Fraction``;
no floating point is used anywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotSquare, NotUnimodular, ZeroVector

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


# ---------------------------------------------------------------------------
# vectors


def vec(coords: Iterable[int]) -> Vec:
    """Coerce an iterable to a tuple of ints, rejecting non-integers."""
    out = []
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"integer coordinate expected, got {c!r}")
        out.append(c)
    return tuple(out)


def dot(u: Vec, v: Vec) -> int:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scaled(u: Vec, k: int) -> Vec:
    return tuple(k * a for a in u)


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def content(v: Vec) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    return math.gcd(*v) if v else 0


def primitive(v: Vec) -> Vec:
    """The primitive vector on the ray through v: v divided by its content."""
    g = content(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive representative")
    return tuple(c // g for c in v)


def is_primitive(v: Vec) -> bool:
    return content(v) == 1


# ---------------------------------------------------------------------------
# matrices


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def determinant(m: Mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare(f"matrix is {len(m)}x{len(m[0]) if m else 0}, not square")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Vec], width: int | None = None) -> int:
    """Rank over Q, by exact rational elimination."""
    rows = list(rows)
    if width is None:
        if not rows:
            raise ValueError("rank of an empty matrix needs an explicit width")
        width = len(rows[0])
    work = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][col]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col] / pv
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def invert_unimodular(m: Mat) -> Mat:
    """Inverse of a matrix with determinant +-1; exact and integral."""
    n = len(m)
    d = determinant(m)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}, expected +-1")
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if work[i][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    inv = tuple(tuple(int(x) for x in row[n:]) for row in work)
    return inv


def dual_basis(basis: Sequence[Vec]) -> Mat:
    """Vectors q_1..q_n with <p_i, q_j> = delta_ij for a unimodular basis."""
    p = tuple(tuple(row) for row in basis)
    return transpose(invert_unimodular(p))


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """(U, D, V) with U*m*V = D, U and V unimodular, D diagonal, d_i | d_{i+1}.

    Deterministic: pivots are chosen as the smallest-magnitude nonzero entry,
    ties broken by position.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    a = [list(row) for row in m]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i: int, k: int, q: int) -> None:  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j: int, k: int, q: int) -> None:  # col_j -= q * col_k
        for r in range(nrows):
            a[r][j] -= q * a[r][k]
        for r in range(ncols):
            v[r][j] -= q * v[r][k]

    def row_swap(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j: int, k: int) -> None:
        for r in range(nrows):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(ncols):
            v[r][j], v[r][k] = v[r][k], v[r][j]

    t = 0
    while True:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            # clear the pivot row and column, shrinking the pivot via gcd steps
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, nrows):
                    if a[i][t] != 0:
                        q = a[i][t] // a[t][t]
                        row_op(i, t, q)
                        if a[i][t] != 0:
                            row_swap(t, i)
                            changed = True
                for j in range(t + 1, ncols):
                    if a[t][j] != 0:
                        q = a[t][j] // a[t][t]
                        col_op(j, t, q)
                        if a[t][j] != 0:
                            col_swap(t, j)
                            changed = True
            piv = a[t][t]
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % piv != 0), None)
            if bad is None:
                break
            # fold the offending row into the pivot row and re-clear
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
            u[t] = [x + y for x, y in zip(u[t], u[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (tuple(tuple(r) for r in u),
            tuple(tuple(r) for r in a),
            tuple(tuple(r) for r in v))


def kernel_basis(rows: Sequence[Vec], width: int | None = None) -> Mat:
    """Basis of the saturated integer kernel {x : rows * x = 0}."""
    rows = [tuple(r) for r in rows]
    if width is None:
        if not rows:
            raise ValueError("kernel of an empty matrix needs an explicit width")
        width = len(rows[0])
    if not rows:
        return identity(width)
    _, d, v = smith_normal_form(tuple(rows))
    r = min(len(rows), width)
    free = [j for j in range(width) if j >= r or d[j][j] == 0]
    cols = transpose(v)
    return tuple(cols[j] for j in free)


def hermite_row_form(m: Mat) -> Mat:
    """Unique row-style Hermite normal form (left-multiplication by GL_n(Z)).

    Echelon with positive pivots; entries above each pivot are reduced into
    [0, pivot).
    """
    if not m:
        return ()
    nrows, ncols = len(m), len(m[0])
    h = [list(row) for row in m]
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[r], h[i0] = h[i0], h[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][col] != 0:
                    q = h[i][col] // h[r][col]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if r < nrows and h[r][col] != 0:
            if h[r][col] < 0:
                h[r] = [-x for x in h[r]]
            for i in range(r):
                q = h[i][col] // h[r][col]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
            r += 1
            if r == nrows:
                break
    return tuple(tuple(row) for row in h)


def hermite_column_form(m: Mat) -> Mat:
    """Canonical representative of m under right-multiplication by GL(Z)."""
    if not m or not m[0]:
        return tuple(tuple(row) for row in m)
    return transpose(hermite_row_form(transpose(m)))


# ---------------------------------------------------------------------------
# lattice-point enumeration


@dataclass(frozen=True)
class Constraint:
    """One linear condition <normal, x> REL rhs with REL in {">=", "="}."""

    normal: Vec
    relation: str
    rhs: int

    def __post_init__(self):
        if self.relation not in (">=", "="):
            raise ValueError(f"relation must be '>=' or '=', got {self.relation!r}")


class Unbounded:
    """Marker value: the solution set of the system is unbounded."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"


UNBOUNDED = Unbounded()

# internal inequality representation: (coeffs, rhs) meaning coeffs . x >= rhs
_Ineq = tuple[Vec, int]


def _reduce_ineq(coeffs: Vec, rhs: int) -> _Ineq:
    g = math.gcd(content(coeffs), abs(rhs))
    if g > 1:
        return tuple(c // g for c in coeffs), rhs // g
    return coeffs, rhs


def _split(constraints: Sequence[Constraint], dim: int) -> list[_Ineq]:
    out = []
    for c in constraints:
        if len(c.normal) != dim:
            raise ValueError(f"constraint dimension {len(c.normal)} != {dim}")
        out.append(_reduce_ineq(tuple(c.normal), c.rhs))
        if c.relation == "=":
            out.append(_reduce_ineq(neg(c.normal), -c.rhs))
    return out


def _eliminate(ineqs: Sequence[_Ineq], k: int) -> list[_Ineq]:
    """Fourier-Motzkin elimination of variable k; exact over Q."""
    pos, negs, zero = [], [], []
    for a, b in ineqs:
        if a[k] > 0:
            pos.append((a, b))
        elif a[k] < 0:
            negs.append((a, b))
        elif not is_zero(a) or b > 0:  # keep infeasibility witnesses 0 >= b > 0
            zero.append((a, b))
    out = set(zero)
    for ap, bp in pos:
        for an, bn in negs:
            m1, m2 = ap[k], -an[k]
            coeffs = tuple(m2 * x + m1 * y for x, y in zip(ap, an))
            rhs = m2 * bp + m1 * bn
            if is_zero(coeffs) and rhs <= 0:
                continue
            out.add(_reduce_ineq(coeffs, rhs))
    return sorted(out)


def trivial_homogeneous_cone(ineqs: Sequence[Vec], dim: int) -> bool:
    """True iff {x : a.x >= 0 for all a} is exactly {0}.

    Decided coordinate by coordinate: project onto each axis by eliminating
    the other variables and check the axis is pinned to 0 from both sides.
    """
    rows: list[_Ineq] = []
    for a in ineqs:
        a = tuple(a)
        if not is_zero(a):
            g = content(a)
            rows.append((tuple(c // g for c in a), 0))
    for i in range(dim):
        cur = rows
        for j in range(dim):
            if j != i:
                cur = _eliminate(cur, j)
        has_pos = any(a[i] > 0 for a, _ in cur)
        has_neg = any(a[i] < 0 for a, _ in cur)
        if not (has_pos and has_neg):
            return False
    return True


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _floor_div(p: int, q: int) -> int:
    return p // q


def lattice_points(constraints: Sequence[Constraint], dim: int):
    """All integer solutions, in lexicographic order, or UNBOUNDED.

    Boundedness is decided first on the recession cone (the homogenized
    system); enumeration then projects with Fourier-Motzkin to obtain exact
    per-coordinate bounds and descends recursively.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    ineqs = _split(constraints, dim)
    if not trivial_homogeneous_cone([a for a, _ in ineqs], dim):
        return UNBOUNDED

    systems: list[list[_Ineq]] = [[] for _ in range(dim + 1)]
    systems[dim] = ineqs
    for d in range(dim - 1, 0, -1):
        systems[d] = _eliminate(systems[d + 1], d)

    out: list[Vec] = []
    point = [0] * dim

    def descend(k: int) -> None:
        lo: int | None = None
        hi: int | None = None
        for a, b in systems[k + 1]:
            partial = sum(a[j] * point[j] for j in range(k))
            coeff = a[k]
            if coeff == 0:
                if partial < b:
                    return
            elif coeff > 0:
                cand = _ceil_div(b - partial, coeff)
                lo = cand if lo is None else max(lo, cand)
            else:
                cand = _floor_div(b - partial, coeff)
                hi = cand if hi is None else min(hi, cand)
        if lo is None or hi is None:
            raise AssertionError("unbounded slice inside a bounded polyhedron")
        for x in range(lo, hi + 1):
            point[k] = x
            if k + 1 == dim:
                out.append(tuple(point))
            else:
                descend(k + 1)

    if any(is_zero(a) and b > 0 for a, b in systems[1]):
        return ()
    # an empty 1-variable system would mean an unbounded axis, caught above
    descend(0)
    return tuple(out)
