from itertools import product

import pytest

from tenv.backend import FinSetOp, FinVectFq
from tenv.config import ContractViolation
from tenv.degree import natural_degree
from tenv.envelope import diagram_to_relation, partition_oracle_compose, relation_to_diagram
from tenv.relations import (
    classical_compose,
    core,
    core_size,
    graph_of,
    identity_relation,
    is_proper_subquotient,
    relations,
    tensor_rel,
    transpose,
    weighted_compose,
)
from tenv.scalars import T

BACKENDS = [(FinSetOp(), 2), (FinVectFq(2), 1), (FinVectFq(3), 1)]
IDS = ["setop", "vect2", "vect3"]


def test_relation_counts(setop, vect2):
    # relations x -> y are subobjects of x*y
    assert len(relations(setop, 1, 1)) == 2
    assert len(relations(setop, 2, 1)) == 5
    assert len(relations(setop, 2, 2)) == 15
    assert len(relations(vect2, 1, 1)) == 5
    assert len(relations(vect2, 1, 2)) == 16


def test_weighted_compose_matches_partition_diagrams(setop, dset):
    for m, n, k in product(range(3), repeat=3):
        for r in relations(setop, m, n):
            for s in relations(setop, n, k):
                w = weighted_compose(setop, r, s, dset)
                diagram, loops = partition_oracle_compose(relation_to_diagram(r), relation_to_diagram(s))
                assert w.relation == diagram_to_relation(diagram, m, k)
                assert w.coeff == T ** loops


def test_diagram_roundtrip(setop):
    for r in relations(setop, 2, 2):
        assert diagram_to_relation(relation_to_diagram(r), 2, 2) == r


@pytest.mark.parametrize("B,n", BACKENDS, ids=IDS)
def test_identity_is_unit(B, n):
    for x, y in product(range(n + 1), repeat=2):
        for r in relations(B, x, y):
            assert classical_compose(B, identity_relation(B, x), r) == r
            assert classical_compose(B, r, identity_relation(B, y)) == r


@pytest.mark.parametrize("B,n", BACKENDS, ids=IDS)
def test_weighted_composition_associative(B, n):
    d = natural_degree(B)
    for x, y, z, w in product(range(n + 1), repeat=4):
        for r in relations(B, x, y):
            for s in relations(B, y, z):
                rs = weighted_compose(B, r, s, d)
                for u in relations(B, z, w):
                    left = weighted_compose(B, rs.relation, u, d)
                    su = weighted_compose(B, s, u, d)
                    right = weighted_compose(B, r, su.relation, d)
                    assert left.relation == right.relation
                    assert rs.coeff * left.coeff == su.coeff * right.coeff


@pytest.mark.parametrize("B,n", BACKENDS, ids=IDS)
def test_transpose_reverses_composition(B, n):
    for x, y, z in product(range(n + 1), repeat=3):
        for r in relations(B, x, y):
            assert transpose(B, transpose(B, r)) == r
            for s in relations(B, y, z):
                lhs = transpose(B, classical_compose(B, r, s))
                rhs = classical_compose(B, transpose(B, s), transpose(B, r))
                assert lhs == rhs


@pytest.mark.parametrize("B,n", BACKENDS, ids=IDS)
def test_graphs_compose_like_morphisms(B, n):
    for x, y, z in product(range(1 if B.name == "setop" else 0, n + 1), repeat=3):
        for f in B.morphisms(x, y):
            for g in B.morphisms(y, z):
                assert classical_compose(B, graph_of(B, f), graph_of(B, g)) == graph_of(B, B.compose(g, f))


def test_composing_mismatched_relations_raises(setop):
    with pytest.raises(ContractViolation):
        classical_compose(setop, identity_relation(setop, 1), identity_relation(setop, 2))


@pytest.mark.parametrize("B,n", [(FinSetOp(), 3), (FinVectFq(2), 2)], ids=["setop", "vect2"])
def test_core_factorization(B, n):
    for x, y in product(range(n + 1), repeat=2):
        if x + y > n + 1:
            continue
        for r in relations(B, x, y):
            c = core(B, r)
            assert B.is_surjective(c.left_to_core) and B.is_surjective(c.right_to_core)
            assert classical_compose(B, c.first, c.second) == r
            assert core_size(B, r) <= min(x, y)


def test_core_of_identity_and_graphs(setop, vect2):
    for B in (setop, vect2):
        for x in range(3):
            assert core_size(B, identity_relation(B, x)) == x
    # the graph of an automorphism has full core; a constant map has a one-point core
    assert core_size(setop, graph_of(setop, setop.automorphisms(3)[3])) == 3
    const = graph_of(setop, setop.morphisms(1, 3)[0])
    assert core_size(setop, const) == 1


def test_tensor_of_identities(setop, vect2):
    for B in (setop, vect2):
        idt = tensor_rel(B, identity_relation(B, 1), identity_relation(B, 2))
        assert idt == identity_relation(B, 3)


def test_tensor_interchange(setop, dset):
    rels11 = relations(setop, 1, 1)
    for r1, r2, s1, s2 in product(rels11, repeat=4):
        lhs = weighted_compose(setop, tensor_rel(setop, r1, s1), tensor_rel(setop, r2, s2), dset)
        a = weighted_compose(setop, r1, r2, dset)
        b = weighted_compose(setop, s1, s2, dset)
        assert lhs.relation == tensor_rel(setop, a.relation, b.relation)
        assert lhs.coeff == a.coeff * b.coeff


def test_subquotients(setop, vect2):
    assert is_proper_subquotient(setop, 2, 2) == "equal"
    # quotients of subobjects of x in FinSetOp have at most |x| elements
    assert is_proper_subquotient(setop, 1, 3) == "proper"
    assert is_proper_subquotient(setop, 4, 3) == "not"
    assert is_proper_subquotient(vect2, 0, 2) == "proper"
    assert is_proper_subquotient(vect2, 3, 2) == "not"

