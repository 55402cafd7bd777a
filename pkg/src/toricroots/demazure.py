"""Demazure roots of a fan, their Cox-ring derivations, and orbit pairs.

A root is a lattice vector e pairing to -1 with exactly one ray generator
(its distinguished ray) and nonnegatively with every other, such that for
every cone on which e vanishes, the cone spanned together with the
distinguished ray is again in the fan. The second condition is implied by
the first on fans with convex support but is always checked explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import lattice
from .errors import InvalidFan
from .fan import Cone, Fan, _minimal_rays
from .lattice import UNBOUNDED, Constraint, Vec, dot, primitive


@dataclass(frozen=True)
class DemazureRoot:
    """A root e with its distinguished ray index and cached pairing row."""

    vector: Vec
    ray: int
    pairings: Vec  # <p_rho', e> over all rays, in ray order


@dataclass(frozen=True)
class RayRoots:
    """Roots attached to one ray: a finite list, or an infinite/truncated marker."""

    ray: int
    status: str  # "finite" | "infinite" | "truncated"
    roots: tuple[DemazureRoot, ...]
    bound: int | None = None


@dataclass(frozen=True)
class RootSet:
    per_ray: tuple[RayRoots, ...]

    @property
    def finite(self) -> bool:
        return all(r.status == "finite" for r in self.per_ray)

    def roots(self) -> tuple[DemazureRoot, ...]:
        return tuple(r for ray in self.per_ray for r in ray.roots)


def pairing_row(fan: Fan, e: Vec) -> Vec:
    return tuple(dot(p, e) for p in fan.rays)


def satisfies_condition1(fan: Fan, e: Vec, ray: int) -> bool:
    row = pairing_row(fan, e)
    return row[ray] == -1 and all(v >= 0 for i, v in enumerate(row) if i != ray)


@lru_cache(maxsize=None)
def _generated_cone_in_fan(fan: Fan, gens: tuple[Vec, ...]) -> bool:
    """Is cone(gens) a cone of the fan? Decided on minimal generators."""
    minimal = _minimal_rays(gens, fan.dim)
    if minimal is None:
        return False
    prim_index = {primitive(r): i for i, r in enumerate(fan.rays)}
    try:
        idx = tuple(sorted(prim_index[r] for r in minimal))
    except KeyError:
        return False
    return idx in fan.face_sets


def satisfies_condition2(fan: Fan, e: Vec, ray: int) -> bool:
    for face in fan.all_faces:
        if all(dot(fan.rays[i], e) == 0 for i in face.ray_indices):
            gens = tuple(fan.rays[i] for i in face.ray_indices) + (fan.rays[ray],)
            if not _generated_cone_in_fan(fan, tuple(sorted(gens))):
                return False
    return True


def is_demazure_root(fan: Fan, e, ray: int) -> bool:
    e = tuple(e)
    return satisfies_condition1(fan, e, ray) and satisfies_condition2(fan, e, ray)


def demazure_root(fan: Fan, e, ray: int) -> DemazureRoot:
    e = tuple(e)
    if not is_demazure_root(fan, e, ray):
        raise ValueError(f"{list(e)} is not a Demazure root with distinguished ray {ray}")
    return DemazureRoot(e, ray, pairing_row(fan, e))


def _condition1_system(fan: Fan, ray: int) -> list[Constraint]:
    sys = [Constraint(fan.rays[ray], "=", -1)]
    for i, p in enumerate(fan.rays):
        if i != ray:
            sys.append(Constraint(p, ">=", 0))
    return sys


def roots_for_ray(fan: Fan, ray: int, bound: int | None = None) -> RayRoots:
    """Roots with the given distinguished ray.

    Unbounded root polyhedra yield an "infinite" marker, or a "truncated"
    enumeration of the points with sup-norm <= bound when one is supplied.
    Complete fans always land in the "finite" case.
    """
    if not 0 <= ray < len(fan.rays):
        raise InvalidFan([f"no ray with index {ray}"])
    if bound is not None and bound < 1:
        raise ValueError("bound must be a positive integer")
    system = _condition1_system(fan, ray)
    points = lattice.lattice_points(system, fan.dim)
    status = "finite"
    if points is UNBOUNDED:
        if bound is None:
            return RayRoots(ray, "infinite", ())
        status = "truncated"
        unit = [tuple(int(i == j) for j in range(fan.dim)) for i in range(fan.dim)]
        for u in unit:
            system.append(Constraint(u, ">=", -bound))
            system.append(Constraint(tuple(-x for x in u), ">=", -bound))
        points = lattice.lattice_points(system, fan.dim)
        assert points is not UNBOUNDED
    roots = tuple(DemazureRoot(e, ray, pairing_row(fan, e))
                  for e in points if satisfies_condition2(fan, e, ray))
    return RayRoots(ray, status, roots, bound if status == "truncated" else None)


def all_roots(fan: Fan, bound: int | None = None) -> RootSet:
    return RootSet(tuple(roots_for_ray(fan, i, bound) for i in range(len(fan.rays))))


def commute(a: DemazureRoot, b: DemazureRoot) -> bool:
    """Whether the derivations of two roots commute.

    True iff the distinguished rays coincide, or each root vanishes on the
    other's distinguished ray generator.
    """
    if a.ray == b.ray:
        return True
    return b.pairings[a.ray] == 0 and a.pairings[b.ray] == 0


# ---------------------------------------------------------------------------
# Cox-ring derivations


@dataclass(frozen=True)
class CoxDerivation:
    """monomial * d/dx_target, the monomial given by per-variable exponents."""

    target: int
    exponents: tuple[tuple[int, int], ...]  # (variable index, power), target omitted

    @property
    def num_vars(self) -> int:
        return len(self.exponents) + 1


def derivation(fan: Fan, root: DemazureRoot) -> CoxDerivation:
    expo = tuple((i, root.pairings[i]) for i in range(len(fan.rays)) if i != root.ray)
    return CoxDerivation(root.ray, expo)


def _apply(d: CoxDerivation, poly: dict[tuple, int]) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for mono, coeff in poly.items():
        k = mono[d.target]
        if k == 0:
            continue
        new = list(mono)
        new[d.target] -= 1
        for var, power in d.exponents:
            new[var] += power
        key = tuple(new)
        out[key] = out.get(key, 0) + coeff * k
    return {m: c for m, c in out.items() if c}


def bracket_oracle(a: CoxDerivation, b: CoxDerivation) -> bool:
    """Symbolically check [a, b] = 0 by applying both orders to each variable.

    Independent of :func:`commute`; serves as its oracle.
    """
    if a.num_vars != b.num_vars:
        raise ValueError("derivations live on different polynomial rings")
    m = a.num_vars
    for j in range(m):
        x_j = {tuple(int(i == j) for i in range(m)): 1}
        if _apply(a, _apply(b, x_j)) != _apply(b, _apply(a, x_j)):
            return False
    return True


def format_derivation(d: CoxDerivation) -> str:
    """ASCII rendering, e.g. ``x1^2*x3 d/dx4``; variables are 1-based."""
    parts = []
    for var, power in sorted(d.exponents):
        if power == 0:
            continue
        parts.append(f"x{var + 1}" if power == 1 else f"x{var + 1}^{power}")
    mono = "*".join(parts) if parts else "1"
    return f"{mono} d/dx{d.target + 1}"


# ---------------------------------------------------------------------------
# orbit pairs


def he_connected_pairs(fan: Fan, root: DemazureRoot) -> tuple[tuple[Cone, Cone], ...]:
    """All cone pairs (sigma1, sigma2) with e <= 0 on sigma2, e not identically
    zero there, and sigma1 the facet of sigma2 cut out by <., e> = 0.

    The zero cone counts as the facet of a ray.
    """
    e = root.vector
    out = []
    for c2 in fan.all_faces:
        vals = [dot(fan.rays[i], e) for i in c2.ray_indices]
        if not vals or any(v > 0 for v in vals) or all(v == 0 for v in vals):
            continue
        sub = tuple(i for i, v in zip(c2.ray_indices, vals) if v == 0)
        c1 = fan.cone(sub)
        if c1.dim == c2.dim - 1:
            out.append((c1, c2))
    return tuple(out)
