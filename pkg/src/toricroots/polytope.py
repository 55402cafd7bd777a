"""Lattice polytopes: facets, the inscribed-in-a-rectangle test, normal fans.

Facet inequalities are stored with outer normals (<p, x> <= a); the normal
fan uses inner normals (-p), with the maximal cone at a vertex generated by
the inner normals of the facets through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import lattice
from .errors import BadParams, DegeneratePolytope, InvalidPolytope
from .fan import Fan, build_fan
from .lattice import Vec, dot, neg, primitive, sub, vec


@dataclass(frozen=True)
class FacetInequality:
    """<normal, x> <= rhs, tight on the facet; normal is primitive and outer."""

    normal: Vec
    rhs: int


def _hull_facets(points: tuple[Vec, ...], dim: int) -> tuple[FacetInequality, ...]:
    """Facets of conv(points) by scanning dim-subsets for supporting hyperplanes."""
    found = set()
    for subset in combinations(points, dim):
        diffs = tuple(sub(q, subset[0]) for q in subset[1:])
        kernel = lattice.kernel_basis(diffs, dim)
        if len(kernel) != 1:
            continue  # affinely dependent subset: no unique hyperplane
        u = primitive(kernel[0])
        a = dot(u, subset[0])
        vals = [dot(u, q) - a for q in points]
        if all(v <= 0 for v in vals):
            found.add((u, a))
        elif all(v >= 0 for v in vals):
            found.add((neg(u), -a))
    return tuple(FacetInequality(u, a) for u, a in sorted(found))


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional lattice polytope given by its vertex set.

    Vertices are stored sorted; construction rejects listed points that are
    not extreme, so the stored set is exactly the hull's vertex set.
    """

    dim: int
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise DegeneratePolytope("dimension must be positive")
        pts = tuple(vec(v) for v in self.vertices)
        if any(len(v) != self.dim for v in pts):
            raise InvalidPolytope("vertex of wrong dimension")
        if len(set(pts)) != len(pts):
            raise InvalidPolytope("vertices are not pairwise distinct")
        pts = tuple(sorted(pts))
        object.__setattr__(self, "vertices", pts)
        diffs = [sub(v, pts[0]) for v in pts[1:]]
        if lattice.rank(diffs, self.dim) != self.dim:
            raise DegeneratePolytope("polytope is not full-dimensional")
        fs = _hull_facets(pts, self.dim)
        for v in pts:
            tight = [f.normal for f in fs if dot(f.normal, v) == f.rhs]
            if lattice.rank(tight, self.dim) != self.dim:
                raise InvalidPolytope(f"listed point {list(v)} is not a vertex")


def facets(p: LatticePolytope) -> tuple[FacetInequality, ...]:
    """All facet inequalities, in lexicographic order on the normals."""
    return _hull_facets(p.vertices, p.dim)


@lru_cache(maxsize=None)
def _tight_facets(p: LatticePolytope) -> dict[Vec, tuple[int, ...]]:
    fs = facets(p)
    return {v: tuple(k for k, f in enumerate(fs) if dot(f.normal, v) == f.rhs)
            for v in p.vertices}


def edge_directions_at(p: LatticePolytope, v: Vec) -> tuple[Vec, ...]:
    """Primitive directions of the edges of p containing the vertex v.

    A vertex pair spans an edge iff their common tight facet normals have
    rank dim-1; this works for non-simple polytopes too.
    """
    fs = facets(p)
    tight = _tight_facets(p)
    mine = set(tight[v])
    dirs = []
    for w in p.vertices:
        if w == v:
            continue
        common = [fs[k].normal for k in tight[w] if k in mine]
        if lattice.rank(common, p.dim) == p.dim - 1:
            dirs.append(primitive(sub(w, v)))
    return tuple(sorted(dirs))


@dataclass(frozen=True)
class RectangleWitness:
    """A vertex whose primitive edge directions are a lattice basis pairing
    nonnegatively with every facet normal away from it."""

    vertex: Vec
    edge_basis: tuple[Vec, ...]


def inscribed_in_rectangle(p: LatticePolytope) -> RectangleWitness | None:
    """First witness in vertex order that p is inscribed in a rectangle, or None."""
    fs = facets(p)
    tight = _tight_facets(p)
    for v in p.vertices:
        dirs = edge_directions_at(p, v)
        if len(dirs) != p.dim:
            continue
        if abs(lattice.determinant(dirs)) != 1:
            continue
        away = [fs[k] for k in range(len(fs)) if k not in tight[v]]
        if all(dot(f.normal, e) >= 0 for f in away for e in dirs):
            return RectangleWitness(v, dirs)
    return None


def normal_fan(p: LatticePolytope) -> Fan:
    """The complete fan with rays the inner facet normals and one maximal cone
    per vertex, generated by the inner normals of its facets."""
    fs = facets(p)
    tight = _tight_facets(p)
    inner = sorted(neg(f.normal) for f in fs)
    index = {r: i for i, r in enumerate(inner)}
    cones = sorted(tuple(sorted(index[neg(fs[k].normal)] for k in tight[v]))
                   for v in p.vertices)
    return build_fan(p.dim, inner, cones)


def scale(p: LatticePolytope, k: int) -> LatticePolytope:
    """The dilated polytope k*p; its normal fan is unchanged.

    For k >= dim - 1 the result is very ample, so the fan-side analysis of
    k*p speaks for the projective embedding even when p itself is not.
    """
    if k < 1:
        raise BadParams("scale factor must be a positive integer")
    return LatticePolytope(p.dim, tuple(tuple(k * x for x in v) for v in p.vertices))


@dataclass(frozen=True)
class PolytopeTheoremReport:
    inscribed: bool
    fan_admits: bool


def check_polytope_theorem(p: LatticePolytope) -> PolytopeTheoremReport:
    """Both sides of the polytope criterion; they must agree."""
    from .additive import admits_additive

    return PolytopeTheoremReport(
        inscribed=inscribed_in_rectangle(p) is not None,
        fan_admits=admits_additive(normal_fan(p)).admits,
    )


# ---------------------------------------------------------------------------
# builtin polytopes


def segment(d: int) -> LatticePolytope:
    if d < 1:
        raise BadParams("segment needs d >= 1")
    return LatticePolytope(1, ((0,), (d,)))


def cube(n: int) -> LatticePolytope:
    if n < 1:
        raise BadParams("cube needs n >= 1")
    verts = []
    for mask in range(2 ** n):
        verts.append(tuple((mask >> i) & 1 for i in range(n)))
    return LatticePolytope(n, tuple(verts))


def dilated_simplex(n: int, d: int) -> LatticePolytope:
    """conv{0, d*e_1, ..., d*e_n}."""
    if n < 1 or d < 1:
        raise BadParams("dilated_simplex needs n >= 1 and d >= 1")
    verts = [tuple([0] * n)]
    for i in range(n):
        verts.append(tuple(d * int(i == j) for j in range(n)))
    return LatticePolytope(n, tuple(verts))


def trapezoid() -> LatticePolytope:
    """conv{(0,0),(2,0),(2,1),(0,3)}: the polytope of a Hirzebruch surface."""
    return LatticePolytope(2, ((0, 0), (2, 0), (2, 1), (0, 3)))


def skew_triangle() -> LatticePolytope:
    """conv{(0,0),(1,2),(2,1)}: not inscribed in a rectangle."""
    return LatticePolytope(2, ((0, 0), (1, 2), (2, 1)))


_BUILTIN_POLYTOPES = {
    "segment": (segment, 1),
    "cube": (cube, 1),
    "dsimplex": (dilated_simplex, 2),
    "trapezoid": (trapezoid, 0),
    "triangle": (skew_triangle, 0),
}


def builtin_polytope(name: str, *params: int) -> LatticePolytope:
    if name not in _BUILTIN_POLYTOPES:
        raise BadParams(f"unknown polytope generator {name!r}")
    func, arity = _BUILTIN_POLYTOPES[name]
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} parameter(s), got {len(params)}")
    return func(*params)


# ---------------------------------------------------------------------------
# JSON interchange


def polytope_to_json_dict(p: LatticePolytope) -> dict:
    return {"dim": p.dim, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json_dict(data: dict) -> LatticePolytope:
    """Strict reader: listed points must all be vertices of the hull."""
    if not isinstance(data, dict):
        raise InvalidPolytope("polytope JSON must be an object")
    missing = {"dim", "vertices"} - set(data)
    if missing:
        raise InvalidPolytope(f"polytope JSON lacks keys {sorted(missing)}")
    try:
        dim = int(data["dim"])
        vertices = tuple(vec(v) for v in data["vertices"])
    except (TypeError, ValueError) as exc:
        raise InvalidPolytope(f"bad polytope data: {exc}") from None
    return LatticePolytope(dim, vertices)
