from fractions import Fraction

import pytest

from tenv.backend import FinSetOp, FinVectFq
from tenv.config import Bounds, ContractViolation, ResourceBoundError
from tenv.degree import natural_degree
from tenv.envelope import compose_hom, from_relation, hom_basis
from tenv.relations import relations
from tenv.specialization import (
    UniformFunctor,
    burnside_orbit_count,
    fullness_rank,
    functoriality_check,
    group_act,
    group_elements,
    interpolation_dim_check,
    pstar_and_invariants,
    relation_matrix,
    relation_matrix_oracle,
    specialize,
    uniformity_and_adapted_check,
)


def _orbit_count(P, x, y):
    """Orbits on P(x) * P(y) by direct enumeration."""
    G = group_elements(P)
    pairs = {(a, b) for a in P.elements(x) for b in P.elements(y)}
    count = 0
    while pairs:
        a, b = pairs.pop()
        count += 1
        for g in G:
            pairs.discard((group_act(P, g, a), group_act(P, g, b)))
    return count


def test_adapted_parameters(setop, vect2):
    assert UniformFunctor(setop, 3).adapted_parameter() == 3
    assert UniformFunctor(vect2, 2).adapted_parameter() == 4
    assert UniformFunctor(FinVectFq(3), 1).adapted_parameter() == 3
    assert UniformFunctor(setop, 3).cardinality(2) == 9
    assert UniformFunctor(vect2, 2).cardinality(1) == 4
    with pytest.raises(ContractViolation):
        UniformFunctor(setop, 0)


def test_functor_preserves_composition(setop, vect2):
    for B, size, top in [(setop, 2, 2), (vect2, 1, 2)]:
        P = UniformFunctor(B, size)
        for x in range(1 if B.name == "setop" else 0, top + 1):
            for y in range(1 if B.name == "setop" else 0, top + 1):
                for f in B.morphisms(x, y):
                    for g in B.morphisms(y, 1):
                        gf = P.apply(B.compose(g, f))
                        assert gf == tuple(P.apply(g)[i] for i in P.apply(f))


@pytest.mark.parametrize("B,size,top", [(FinSetOp(), 2, 2), (FinVectFq(2), 1, 2), (FinVectFq(3), 1, 1)], ids=["setop", "vect2", "vect3"])
def test_relation_matrix_matches_membership_oracle(B, size, top):
    P = UniformFunctor(B, size)
    for x in range(top + 1):
        for y in range(top + 1):
            for r in relations(B, x, y):
                assert relation_matrix(P, r) == relation_matrix_oracle(P, r)


@pytest.mark.parametrize("B,size", [(FinSetOp(), 3), (FinVectFq(2), 2), (FinVectFq(3), 1)], ids=["setop", "vect2", "vect3"])
def test_uniform_fibers_and_left_exactness(B, size):
    rep = uniformity_and_adapted_check(UniformFunctor(B, size), natural_degree(B), max_rank=2)
    assert rep.passed, rep.failures[:3]
    assert rep.checked["uniform"] > 0 and rep.checked["pullback"] > 0


def test_wrong_parameter_breaks_uniformity(setop, dset):
    rep = uniformity_and_adapted_check(UniformFunctor(setop, 3), dset.at(2), max_rank=2)
    assert not rep.passed
    assert {kind for kind, _ in rep.failures} == {"uniform"}


def test_functoriality_at_adapted_parameter(setop, dset):
    P = UniformFunctor(setop, 3)
    rep = functoriality_check(P, dset.at(3), objects=(1, 2))
    assert rep.passed
    assert rep.checked == {"compose": 229, "tensor": 4}


def test_functoriality_fails_when_mis_adapted(setop, dset):
    rep = functoriality_check(UniformFunctor(setop, 3), dset.at(2), objects=(1, 2))
    assert not rep.passed
    assert len(rep.failures) == 59


def test_functoriality_vect(vect2, dvect):
    rep = functoriality_check(UniformFunctor(vect2, 2), dvect.at(4), objects=(1,))
    assert rep.passed


def test_specialize_linear_combination(setop, dset):
    P = UniformFunctor(setop, 2)
    space = hom_basis(setop, 1, 1)
    F = from_relation(setop, space.basis[0], 3) + from_relation(setop, space.basis[1], Fraction(-1, 2))
    M = specialize(P, F)
    assert M == relation_matrix(P, space.basis[0]).scale(3) + relation_matrix(P, space.basis[1]).scale(Fraction(-1, 2))
    # the disconnected relation squares to t times itself, which cannot be specialized
    D = from_relation(setop, next(r for r in space.basis if len(r.body.key) == 2))
    with pytest.raises(ContractViolation):
        specialize(P, compose_hom(D, D, dset))


@pytest.mark.parametrize("B,size,x,nonempty", [(FinSetOp(), 3, 1, 1), (FinSetOp(), 3, 2, 2), (FinSetOp(), 3, 3, 5), (FinSetOp(), 2, 3, 4), (FinVectFq(2), 2, 2, 5), (FinVectFq(2), 1, 2, 4)])
def test_pstar_pieces(B, size, x, nonempty):
    P = UniformFunctor(B, size)
    rep = pstar_and_invariants(P, x)
    assert rep.partition_ok and rep.invariant_ok and rep.orbit_ok
    assert rep.nonempty == nonempty
    assert fullness_rank(P, x) == nonempty


def test_pstar_without_group_enumeration(setop):
    P = UniformFunctor(FinSetOp(Bounds(max_psize=100)), 6)
    rep = pstar_and_invariants(P, 2)
    assert rep.orbit_ok is None and rep.partition_ok


@pytest.mark.parametrize("B,size,x,y", [(FinSetOp(), 3, 1, 1), (FinSetOp(), 3, 1, 2), (FinSetOp(), 2, 2, 2), (FinVectFq(2), 1, 1, 2), (FinVectFq(2), 2, 1, 1)])
def test_burnside_matches_orbit_enumeration(B, size, x, y):
    P = UniformFunctor(B, size)
    assert burnside_orbit_count(P, x, y) == _orbit_count(P, x, y)


@pytest.mark.parametrize(
    "size,x,y,hom,rad",
    [(3, 1, 1, 2, 0), (3, 2, 2, 15, 1), (3, 1, 2, 5, 0), (3, 2, 1, 5, 0), (1, 2, 2, 15, 14)],
)
def test_interpolation_dimensions(setop, dset, size, x, y, hom, rad):
    rep = interpolation_dim_check(UniformFunctor(setop, size), x, y, dset)
    assert (rep.hom_dim, rep.radical_dim) == (hom, rad)
    assert rep.match


def test_interpolation_vect(vect2, dvect):
    rep = interpolation_dim_check(UniformFunctor(vect2, 1), 1, 1, dvect)
    assert rep.hom_dim == 5 and rep.match


def test_functor_size_bound():
    P = UniformFunctor(FinSetOp(Bounds(max_psize=50)), 4)
    with pytest.raises(ResourceBoundError):
        P.elements(3)
