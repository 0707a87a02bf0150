from fractions import Fraction
from itertools import product

import pytest

from tenv import fq
from tenv.backend import FinSetOp, FinVectFq, Morphism
from tenv.config import ContractViolation
from tenv.degree import natural_degree
from tenv.envelope import (
    LinearHom,
    compose_hom,
    hom_basis,
    identity_hom,
    partition_oracle_compose,
    relation_to_diagram,
    trace,
)
from tenv.radical import (
    conjugacy_class_count,
    copoint_relation,
    gl_class_count,
    gram_matrix,
    gram_omega,
    indecomposable_surjections,
    nonsingularity_verdict,
    omega,
    omega_multiplicativity_check,
    partition_count,
    point_relation,
    radical,
    semisimple_blocks,
    simple_census,
)
from tenv.scalars import T


def falling(n):
    out = 1
    for i in range(n):
        out = out * (T - i)
    return out


def q_falling(n, q):
    out = 1
    for i in range(n):
        out = out * (T - q ** i)
    return out


# ----- omega -----


def test_omega_of_indecomposables(setop, dset, vect2, dvect):
    for x in range(1, 6):
        for e in indecomposable_surjections(setop, x):
            assert omega(setop, e, dset).value == T - (x - 1)
    for x in range(1, 4):
        for e in indecomposable_surjections(vect2, x):
            assert omega(vect2, e, dvect).value == T - 2 ** (x - 1)


def test_indecomposables_are_the_one_step_quotients(setop, vect2, vect3):
    for B in (setop, vect2, vect3):
        for x in range(1, 4):
            ind = indecomposable_surjections(B, x)
            assert ind and all(e.target == x - 1 for e in ind)
    # FinSetOp: one per omitted point; FinVectFq: one per hyperplane
    assert len(indecomposable_surjections(setop, 4)) == 4
    assert len(indecomposable_surjections(vect2, 3)) == 7
    assert len(indecomposable_surjections(vect3, 2)) == 4


def test_omega_to_terminal_closed_forms(setop, dset, vect2, dvect, vect3):
    for n in range(5):
        assert omega(setop, setop.to_terminal(n), dset).value == falling(n)
    for n in range(4):
        assert omega(vect2, vect2.to_terminal(n), dvect).value == q_falling(n, 2)
    d3 = natural_degree(vect3)
    for n in range(3):
        assert omega(vect3, vect3.to_terminal(n), d3).value == q_falling(n, 3)


@pytest.mark.parametrize("B,n", [(FinSetOp(), 4), (FinVectFq(2), 3)], ids=["setop", "vect2"])
def test_omega_multiplicative(B, n):
    d = natural_degree(B)
    for x in range(n + 1):
        for e_bar in B.quotients(x):
            for e in B.quotients(e_bar.target):
                ok, whole, parts = omega_multiplicativity_check(B, e_bar, e, d)
                assert ok, (e_bar, e, whole, parts)


def test_omega_needs_surjection(setop, dset):
    with pytest.raises(ContractViolation):
        omega(setop, Morphism(2, 2, (0, 0)), dset)


# ----- Gram determinants -----


def _setop_gram_oracle(x, subs):
    """Stack point u over copoint v as partition diagrams and count closed components."""
    out = []
    for u in subs:
        row = []
        for v in subs:
            diagram, loops = partition_oracle_compose(
                relation_to_diagram(point_relation(x, u)), relation_to_diagram(copoint_relation(x, v))
            )
            assert diagram == frozenset()
            row.append(T ** loops)
        out.append(row)
    return out


def _vect_gram_oracle(B, x, subs):
    out = []
    for u in subs:
        row = []
        for v in subs:
            inter = len(u.key) + len(v.key) - fq.rank(u.key + v.key, x, B.q)
            row.append(T ** inter)
        out.append(row)
    return out


@pytest.mark.parametrize("x", range(4))
def test_setop_gram_matrix_matches_diagrams(setop, dset, x):
    subs, mat = gram_matrix(setop, x, dset)
    assert mat == _setop_gram_oracle(x, subs)


@pytest.mark.parametrize("x", range(3))
def test_vect_gram_matrix_matches_intersections(vect2, dvect, x):
    subs, mat = gram_matrix(vect2, x, dvect)
    assert mat == _vect_gram_oracle(vect2, x, subs)


def test_gram_spot_values(setop, dset, vect2, dvect):
    rep = gram_omega(setop, 2, dset)
    assert rep.det == T ** 3 - T ** 2
    assert sorted(str(o.value) for o in rep.omega_factors) == ["t", "t^2 - t"]
    rep = gram_omega(vect2, 1, dvect)
    assert rep.matrix == [[1, 1], [1, T]]
    assert rep.det == T - 1


@pytest.mark.parametrize("B,n", [(FinSetOp(), 4), (FinVectFq(2), 2), (FinVectFq(3), 1)], ids=["setop", "vect2", "vect3"])
def test_gram_determinant_is_omega_product(B, n):
    d = natural_degree(B)
    for x in range(n + 1):
        rep = gram_omega(B, x, d)
        assert rep.det == rep.product
        closed = 1
        for u in rep.subobjects:
            k = B.rank(B.sub_object(u))
            closed = closed * (falling(k) if B.name == "setop" else q_falling(k, B.q))
        assert rep.det == closed


def test_gram_degrees(setop, dset):
    assert gram_omega(setop, 3, dset).det.degree() == 10
    assert gram_omega(setop, 4, dset).det.degree() == 37


# ----- singular parameters -----


def test_singular_sets(setop, dset, vect2, dvect):
    assert nonsingularity_verdict(setop, dset, 4).singular_params == [0, 1, 2, 3]
    assert nonsingularity_verdict(vect2, dvect, 3).singular_params == [1, 2, 4]
    assert nonsingularity_verdict(FinVectFq(3), natural_degree(FinVectFq(3)), 2).singular_params == [1, 3]


def test_numeric_verdict(setop, dset):
    bad = nonsingularity_verdict(setop, dset.at(2), 4)
    assert not bad.nonsingular
    assert {e.source for e in bad.failing} == {3}
    assert nonsingularity_verdict(setop, dset.at(Fraction(7, 2)), 4).nonsingular


# ----- radicals -----

END2_RADICAL = {0: 15, 1: 14, 2: 7, 3: 1, -1: 0, Fraction(7, 2): 0}


@pytest.mark.parametrize("t,dim", sorted(END2_RADICAL.items()))
def test_end2_radical_dimensions(setop, dset, t, dim):
    rep = radical(setop, 2, 2, dset.at(t))
    assert rep.hom_dim == 15
    assert rep.radical_dim == dim


def test_radical_elements_are_negligible(setop, dset):
    # checked through composition and traces, not through the pairing matrix
    d = dset.at(2)
    rep = radical(setop, 2, 1, d)
    assert rep.radical_dim > 0
    F = hom_basis(setop, 2, 1)
    G = hom_basis(setop, 1, 2)
    for v in rep.basis:
        f = LinearHom(F, v)
        for g in G.basis:
            assert trace(compose_hom(LinearHom.basis_vector(G, g), f, d), d) == 0


def test_radical_small_cases(setop, dset):
    assert radical(setop, 1, 1, dset.at(1)).radical_dim == 1
    assert radical(setop, 1, 1, dset.at(5)).radical_dim == 0
    assert radical(setop, 1, 1, dset).radical_dim == 0


def test_radical_inside_summands_matches_full_at_identity(setop, dset):
    d = dset.at(2)
    p = identity_hom(setop, 2)
    full = radical(setop, 2, 2, d)
    cut = radical(setop, 2, 2, d, summands=(p, p))
    assert cut.radical_dim == full.radical_dim


# ----- blocks and the census -----


@pytest.mark.parametrize(
    "t,blocks",
    [(Fraction(7, 2), [3, 2, 1, 1]), (5, [3, 2, 1, 1]), (3, [3, 2, 1]), (2, [2, 2]), (1, [1])],
)
def test_end2_blocks(setop, dset, t, blocks):
    rep = semisimple_blocks(setop, 2, dset.at(t))
    assert rep.blocks == blocks
    assert sum(b * b for b in rep.blocks) == rep.quotient_dim
    assert rep.method == "central-idempotents"


def test_end2_blocks_symbolic(setop, dset):
    rep = semisimple_blocks(setop, 2, dset)
    assert rep.blocks == [3, 2, 1, 1]
    assert rep.center_dim == 4 and rep.radical_dim == 0
    assert rep.method == "charpoly-multiplicity"


def test_census_matches_class_counts(setop, dset, vect2, dvect):
    for x, want in [(1, 2), (2, 4)]:
        rep = simple_census(setop, x, dset)
        assert rep.predicted == rep.computed == want
        rep = simple_census(setop, x, dset.at(Fraction(7, 2)))
        assert rep.predicted == rep.computed == want
    rep = simple_census(vect2, 1, dvect)
    assert rep.predicted == rep.computed == 2
    assert rep.blocks.blocks == [2, 1]
    assert simple_census(vect2, 1, dvect.at(7)).blocks.blocks == [2, 1]


def test_class_counts():
    assert [partition_count(n) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert [gl_class_count(n, 2) for n in range(5)] == [1, 1, 3, 6, 14]
    assert [gl_class_count(n, 3) for n in range(4)] == [1, 2, 8, 24]
    S, V = FinSetOp(), FinVectFq(2)
    for n in range(5):
        assert conjugacy_class_count(S, n) == partition_count(n)
    for n in range(4):
        assert conjugacy_class_count(V, n) == gl_class_count(n, 2)


def test_subspace_pairs_are_symmetric(vect2, dvect):
    subs, mat = gram_matrix(vect2, 2, dvect)
    for i, j in product(range(len(subs)), repeat=2):
        assert mat[i][j] == mat[j][i]
