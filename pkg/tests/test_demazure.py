"""Demazure roots, the commuting criterion and its symbolic oracle, orbit pairs."""

import pytest

from helpers import bundled_complete_fans, quadrant_fan, random_complete_fans_2d
from toricroots import (
    all_roots,
    bracket_oracle,
    build_fan,
    commute,
    demazure_root,
    derivation,
    format_derivation,
    he_connected_pairs,
    hirzebruch,
    is_demazure_root,
    product_p1,
    projective_space,
    roots_for_ray,
)
from toricroots.demazure import satisfies_condition1, satisfies_condition2
from toricroots.lattice import UNBOUNDED, Constraint, dot, lattice_points


def _root_vectors(fan):
    return {(rr.ray, r.vector) for rr in all_roots(fan).per_ray for r in rr.roots}


# ---------------------------------------------------------------------------
# roots per ray


@pytest.mark.parametrize("d", range(1, 6))
def test_hirzebruch_down_ray_roots(d):
    fan = hirzebruch(d)
    rr = roots_for_ray(fan, 3)  # ray (0, -1)
    assert rr.status == "finite"
    assert [r.vector for r in rr.roots] == [(k, 1) for k in range(d + 1)]


def test_quadrant_roots_infinite():
    fan = quadrant_fan()
    rr = roots_for_ray(fan, 0)
    assert rr.status == "infinite"
    assert rr.roots == ()


def test_quadrant_roots_truncated():
    fan = quadrant_fan()
    rr = roots_for_ray(fan, 0, bound=3)
    assert rr.status == "truncated" and rr.bound == 3
    assert [r.vector for r in rr.roots] == [(-1, c) for c in range(4)]


def test_p2_ray_roots_against_enumeration_oracle():
    fan = projective_space(2)
    # oracle: raw condition-(1) lattice points for ray 0, before the cone filter
    sys = [Constraint((1, 0), "=", -1), Constraint((0, 1), ">=", 0),
           Constraint((-1, -1), ">=", 0)]
    raw = lattice_points(sys, 2)
    assert raw is not UNBOUNDED
    rr = roots_for_ray(fan, 0)
    assert [r.vector for r in rr.roots] == list(raw) == [(-1, 0), (-1, 1)]


def test_all_roots_counts():
    assert len(_root_vectors(hirzebruch(1))) == 4
    assert len(_root_vectors(projective_space(2))) == 6
    p1sq = _root_vectors(product_p1(2))
    assert len(p1sq) == 4
    # distinguished ray of each root is the ray opposite to the root vector
    fan = product_p1(2)
    for ray_idx, vector in p1sq:
        assert fan.rays[ray_idx] == tuple(-x for x in vector)


def test_root_listing_is_sorted_and_unique():
    for name, fan in bundled_complete_fans():
        for rr in all_roots(fan).per_ray:
            vecs = [r.vector for r in rr.roots]
            assert vecs == sorted(set(vecs)), name


# ---------------------------------------------------------------------------
# conditions (1) and (2)


def test_emitted_roots_satisfy_condition1():
    for name, fan in bundled_complete_fans():
        for rr in all_roots(fan).per_ray:
            for r in rr.roots:
                assert satisfies_condition1(fan, r.vector, r.ray), name
                assert r.pairings == tuple(dot(p, r.vector) for p in fan.rays)


def test_condition1_implies_condition2_on_complete_fans():
    fans = [f for _, f in bundled_complete_fans()]
    fans += random_complete_fans_2d(seed=11, count=30)
    for fan in fans:
        for ray in range(len(fan.rays)):
            sys = [Constraint(fan.rays[ray], "=", -1)]
            sys += [Constraint(p, ">=", 0) for i, p in enumerate(fan.rays) if i != ray]
            points = lattice_points(sys, fan.dim)
            assert points is not UNBOUNDED
            for e in points:
                assert satisfies_condition2(fan, e, ray)


def test_condition2_can_fail_on_nonconvex_support():
    # two opposite quadrants: e = (-1, 0) on ray (1, 0) satisfies (1) but the
    # ray (0, 1) cone extended by (1, 0) is missing from the fan
    fan = build_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (2, 3)])
    assert satisfies_condition1(fan, (-1, 0), 0)
    assert not satisfies_condition2(fan, (-1, 0), 0)
    assert not is_demazure_root(fan, (-1, 0), 0)


# ---------------------------------------------------------------------------
# commuting criterion and its oracle


def test_commute_examples():
    for d in (1, 2, 3):
        fan = hirzebruch(d)
        r_right = demazure_root(fan, (1, 0), 2)
        r_top = demazure_root(fan, (d, 1), 3)
        r_left = demazure_root(fan, (-1, 0), 0)
        assert commute(r_right, r_top)
        assert not commute(r_right, r_left)
        same_ray = [demazure_root(fan, (k, 1), 3) for k in range(d + 1)]
        for a in same_ray:
            for b in same_ray:
                assert commute(a, b)


def test_bracket_oracle_examples():
    fan = hirzebruch(2)
    d_right = derivation(fan, demazure_root(fan, (1, 0), 2))
    d_top = derivation(fan, demazure_root(fan, (2, 1), 3))
    d_left = derivation(fan, demazure_root(fan, (-1, 0), 0))
    assert bracket_oracle(d_right, d_right)
    assert bracket_oracle(d_right, d_top)
    assert not bracket_oracle(d_right, d_left)


def test_commute_matches_bracket_oracle_everywhere():
    for name, fan in bundled_complete_fans():
        roots = all_roots(fan).roots()
        derivs = {r: derivation(fan, r) for r in roots}
        for a in roots:
            for b in roots:
                assert commute(a, b) == bracket_oracle(derivs[a], derivs[b]), name


# ---------------------------------------------------------------------------
# derivations


def test_derivation_formula_affine():
    # single-quadrant fan: exponents of the derivation are the root coordinates
    fan = quadrant_fan()
    rr = roots_for_ray(fan, 0, bound=2)
    for r in rr.roots:
        d = derivation(fan, r)
        assert d.target == 0
        assert dict(d.exponents) == {1: r.vector[1]}


def test_derivation_rendering_hirzebruch():
    fan = hirzebruch(3)
    rendered = [format_derivation(derivation(fan, r)) for r in all_roots(fan).roots()]
    assert "x2*x3^3 d/dx4" in rendered      # k = 0
    assert "x1*x2*x3^2 d/dx4" in rendered   # k = 1
    assert "x1^3*x2 d/dx4" in rendered      # k = 3
    assert "x3 d/dx1" in rendered
    assert "x1 d/dx3" in rendered


def test_derivation_rendering_p2():
    fan = projective_space(2)
    r = demazure_root(fan, (-1, 0), 0)
    assert format_derivation(derivation(fan, r)) == "x3 d/dx1"


# ---------------------------------------------------------------------------
# orbit pairs


def test_pairs_p1():
    fan = projective_space(1)
    root = demazure_root(fan, (-1,), 0)
    pairs = he_connected_pairs(fan, root)
    assert len(pairs) == 1
    facet, cone = pairs[0]
    assert facet.ray_indices == () and cone.ray_indices == (0,)


def test_pairs_p2():
    fan = projective_space(2)
    root = demazure_root(fan, (-1, 0), 0)
    pairs = he_connected_pairs(fan, root)
    got = {(a.ray_indices, b.ray_indices) for a, b in pairs}
    assert got == {((), (0,)), ((1,), (0, 1))}


def test_pairs_f1():
    fan = hirzebruch(1)
    root = demazure_root(fan, (0, 1), 3)
    pairs = he_connected_pairs(fan, root)
    got = {(tuple(fan.rays[i] for i in a.ray_indices),
            tuple(fan.rays[i] for i in b.ray_indices)) for a, b in pairs}
    assert got == {((), ((0, -1),)), (((1, 0),), ((1, 0), (0, -1)))}


def test_pairs_dimension_law():
    for name, fan in bundled_complete_fans():
        for root in all_roots(fan).roots():
            for facet, cone in he_connected_pairs(fan, root):
                assert cone.dim == facet.dim + 1, name


def test_bound_must_be_positive():
    with pytest.raises(ValueError):
        roots_for_ray(quadrant_fan(), 0, bound=0)


def test_complete_fan_roots_ignore_bound():
    for name, fan in bundled_complete_fans():
        assert all_roots(fan, bound=2) == all_roots(fan), name
