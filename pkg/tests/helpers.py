"""Shared fixtures: the bundled fan corpus and seeded random generators."""

from __future__ import annotations

import functools
import random

from toricroots import (
    Fan,
    LatticePolytope,
    build_fan,
    hirzebruch,
    p235_model,
    product_p1,
    projective_space,
    wps_one,
)
from toricroots.errors import InvalidFan
from toricroots.lattice import primitive


def quadrant_fan() -> Fan:
    """Affine plane fan: one quadrant with its faces (roots are infinite)."""
    return build_fan(2, [(1, 0), (0, 1)], [(0, 1)])


def torsion_fan() -> Fan:
    """Rays (1,1), (1,-1) with one maximal cone: class group Z/2."""
    return build_fan(2, [(1, 1), (1, -1)], [(0, 1)])


def bundled_complete_fans() -> list[tuple[str, Fan]]:
    fans = [
        ("P1", projective_space(1)),
        ("P2", projective_space(2)),
        ("P3", projective_space(3)),
        ("P1xP1", product_p1(2)),
        ("(P1)^3", product_p1(3)),
        ("(P1)^4", product_p1(4)),
        ("wps(2)", wps_one(2)),
        ("wps(2,3)", wps_one(2, 3)),
        ("wps(1,2,3)", wps_one(1, 2, 3)),
        ("P(2,3,5) model", p235_model()),
    ]
    fans.extend((f"F_{d}", hirzebruch(d)) for d in range(1, 6))
    return fans


def bundled_fans() -> list[tuple[str, Fan]]:
    return bundled_complete_fans() + [
        ("quadrant", quadrant_fan()),
        ("torsion", torsion_fan()),
    ]


def _angle_half(v) -> int:
    # 0 for the open upper half plane plus the positive x-axis, 1 otherwise
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _angle_half(u), _angle_half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def random_complete_fan_2d(rng: random.Random) -> Fan | None:
    """Sort random primitive vectors by angle; consecutive pairs become the
    maximal cones. Returns None when the sample is rejected."""
    k = rng.randint(3, 8)
    rays = set()
    for _ in range(k):
        v = (rng.randint(-5, 5), rng.randint(-5, 5))
        if v != (0, 0):
            rays.add(primitive(v))
    if len(rays) < 3:
        return None
    ordered = sorted(rays, key=functools.cmp_to_key(_angle_cmp))
    n = len(ordered)
    for i in range(n):
        u, v = ordered[i], ordered[(i + 1) % n]
        if u[0] * v[1] - u[1] * v[0] <= 0:
            return None  # gap >= pi: support would not cover the plane
    cones = [(i, (i + 1) % n) for i in range(n)]
    try:
        return build_fan(2, ordered, cones)
    except InvalidFan:
        return None


def random_complete_fans_2d(seed: int, count: int) -> list[Fan]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        fan = random_complete_fan_2d(rng)
        if fan is not None:
            out.append(fan)
    return out


def _hull_2d(points):
    """Andrew's monotone chain with strict turns: extreme points only."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]


def random_lattice_polygon(rng: random.Random) -> LatticePolytope | None:
    """Random 2D lattice polygon with vertices in [0, 6]^2, or None."""
    pts = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(4, 10))]
    hull = _hull_2d(pts)
    if len(hull) < 3:
        return None
    return LatticePolytope(2, tuple(hull))


def random_lattice_polygons(seed: int, count: int) -> list[LatticePolytope]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        poly = random_lattice_polygon(rng)
        if poly is not None:
            out.append(poly)
    return out
