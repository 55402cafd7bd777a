"""Existence of additive actions: complete collections and their equivalence.

A complete collection is a set of n Demazure roots pairing with their
distinguished ray generators as -identity; such collections classify the
torus-normalized actions of the n-dimensional vector group, and on complete
fans their existence also settles the non-normalized question.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from . import lattice
from .demazure import DemazureRoot, all_roots, demazure_root, is_demazure_root
from .errors import InfiniteRoots, NoWitness, NotComplete
from .fan import Fan, LatticeAutomorphism, is_complete, is_fan_automorphism
from .lattice import Mat, Vec, dot, neg


@dataclass(frozen=True)
class CompleteCollection:
    """n roots e_1..e_n with <p_i, e_j> = -delta_ij; sorted by ray index."""

    roots: tuple[DemazureRoot, ...]

    @property
    def ray_indices(self) -> tuple[int, ...]:
        return tuple(r.ray for r in self.roots)

    @property
    def root_vectors(self) -> tuple[Vec, ...]:
        return tuple(r.vector for r in self.roots)

    def basis_matrix(self, fan: Fan) -> Mat:
        return tuple(fan.rays[i] for i in self.ray_indices)

    def pairing_matrix(self, fan: Fan) -> Mat:
        return tuple(tuple(dot(fan.rays[i], r.vector) for r in self.roots)
                     for i in self.ray_indices)


def complete_collections(fan: Fan) -> tuple[CompleteCollection, ...]:
    """All complete collections, ordered by their sorted ray-index tuples.

    A collection is forced by its distinguished rays: those must be a
    unimodular basis and the roots are the negated dual basis, so it
    suffices to scan n-subsets of rays.
    """
    n = fan.dim
    out = []
    for subset in combinations(range(len(fan.rays)), n):
        basis = tuple(fan.rays[i] for i in subset)
        if abs(lattice.determinant(basis)) != 1:
            continue
        dual = lattice.dual_basis(basis)
        roots = []
        for pos, ray_idx in enumerate(subset):
            e = neg(dual[pos])
            if not is_demazure_root(fan, e, ray_idx):
                break
            roots.append(demazure_root(fan, e, ray_idx))
        else:
            out.append(CompleteCollection(tuple(roots)))
    return tuple(out)


@dataclass(frozen=True)
class AdditiveDecision:
    admits: bool
    witness: CompleteCollection | None
    fan_complete: bool

    @property
    def reading(self) -> str:
        """Which statement the answer decides for this fan.

        On complete fans a collection settles arbitrary additive actions;
        otherwise only the torus-normalized ones.
        """
        return "additive" if self.fan_complete else "normalized_additive"


def admits_additive(fan: Fan) -> AdditiveDecision:
    """Decide existence, returning the lexicographically first collection."""
    collections = complete_collections(fan)
    witness = collections[0] if collections else None
    return AdditiveDecision(bool(collections), witness, is_complete(fan))


def condition4_distinguished_span(fan: Fan, bound: int | None = None) -> bool:
    """Do distinguished ray generators of the roots span N_Q?

    Raises InfiniteRoots when a ray has an infinite root set and no bound
    was supplied.
    """
    roots = all_roots(fan, bound)
    if any(r.status == "infinite" for r in roots.per_ray):
        raise InfiniteRoots("some root set is infinite; pass a bound to truncate")
    vectors = [fan.rays[r.ray] for r in roots.per_ray if r.roots]
    if not vectors:
        return False
    return lattice.rank(vectors, fan.dim) == fan.dim


@dataclass(frozen=True)
class EquivalenceWitness:
    """A fan automorphism carrying one collection onto another."""

    matrix: Mat  # gamma, acting on N; gamma(p_i) = p'_{pi(i)}
    ray_map: tuple[tuple[int, int], ...]

    def automorphism(self) -> LatticeAutomorphism:
        return LatticeAutomorphism(self.matrix)


def verify_witness(fan: Fan, c1: CompleteCollection, c2: CompleteCollection,
                   witness: EquivalenceWitness) -> bool:
    """Check the witness: fan automorphism, ray bijection, and that the dual
    map carries the first root set onto the second."""
    try:
        g = witness.automorphism()
    except Exception:
        return False
    if not is_fan_automorphism(fan, g):
        return False
    for i, j in witness.ray_map:
        if g.apply(fan.rays[i]) != fan.rays[j]:
            return False
    pushforward = lattice.transpose(lattice.invert_unimodular(witness.matrix))
    image = {lattice.mat_vec(pushforward, e) for e in c1.root_vectors}
    return image == set(c2.root_vectors)


def find_equivalence(fan: Fan, c1: CompleteCollection,
                     c2: CompleteCollection) -> EquivalenceWitness:
    """Search ray bijections for an automorphism mapping c1 onto c2.

    The automorphism is solved exactly from gamma(p_i) = p'_{pi(i)} over the
    unimodular basis of c1 and then verified unconditionally. A witness
    always exists for two complete collections of the same fan, so failure
    raises NoWitness loudly.
    """
    rays1 = c1.ray_indices
    p1_inv = lattice.invert_unimodular(c1.basis_matrix(fan))
    for perm in permutations(c2.ray_indices):
        p2 = tuple(fan.rays[j] for j in perm)
        gamma = lattice.transpose(lattice.mat_mul(p1_inv, p2))
        witness = EquivalenceWitness(gamma, tuple(zip(rays1, perm)))
        if verify_witness(fan, c1, c2, witness):
            return witness
    raise NoWitness(
        f"no automorphism maps collection {rays1} onto {c2.ray_indices}; "
        "this contradicts uniqueness of normalized actions and means the "
        "input fan or the collections are corrupt")


@dataclass(frozen=True)
class ThreeConReport:
    complete_collection_exists: bool
    distinguished_span: bool


def theorem3con_report(fan: Fan) -> ThreeConReport:
    """The two decidable flags; on complete fans they must agree."""
    if not is_complete(fan):
        raise NotComplete("the report is only defined for complete fans")
    return ThreeConReport(
        complete_collection_exists=bool(complete_collections(fan)),
        distinguished_span=condition4_distinguished_span(fan),
    )
