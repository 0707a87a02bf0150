from itertools import product

import pytest
from hypothesis import given, strategies as st

from tenv import fq
from tenv.backend import FinSetOp, FinVectFq, Morphism, Subobject, make_backend, set_partitions
from tenv.config import Bounds, ContractViolation, ResourceBoundError, SchemaError

BELL = [1, 1, 2, 5, 15, 52, 203]
SUBSPACES_F2 = [1, 2, 5, 16, 67]
SUBSPACES_F3 = [1, 2, 6, 28]


def _setop_map(draw, a, b):
    return Morphism(a, b, tuple(draw(st.integers(0, a - 1)) for _ in range(b)))


def _vect_map(draw, x, y, q):
    return Morphism(x, y, tuple(tuple(draw(st.integers(0, q - 1)) for _ in range(x)) for _ in range(y)))


@st.composite
def setop_maps(draw, max_obj=3):
    a = draw(st.integers(1, max_obj))
    return _setop_map(draw, a, draw(st.integers(0, max_obj)))


@st.composite
def vect_maps(draw, q=2, max_obj=3):
    return _vect_map(draw, draw(st.integers(0, max_obj)), draw(st.integers(0, max_obj)), q)


@st.composite
def chains(draw, backend):
    """Three composable morphisms h: a -> b, f: b -> c, g: c -> d."""
    lo = 1 if backend.name == "setop" else 0
    a, b, c = (draw(st.integers(lo, 3)) for _ in range(3))
    d = draw(st.integers(0, 3))
    if backend.name == "setop":
        return _setop_map(draw, a, b), _setop_map(draw, b, c), _setop_map(draw, c, d)
    return tuple(_vect_map(draw, s, t, backend.q) for s, t in [(a, b), (b, c), (c, d)])


def _backends():
    return [FinSetOp(), FinVectFq(2), FinVectFq(3)]


# ----- enumeration counts -----


@pytest.mark.parametrize("n", range(7))
def test_setop_subobjects_are_bell(setop, n):
    assert len(setop.subobjects(n)) == BELL[n]
    assert len(set_partitions(n)) == BELL[n]


@pytest.mark.parametrize("n", range(5))
def test_vect_subobjects_gaussian(vect2, n):
    assert len(vect2.subobjects(n)) == SUBSPACES_F2[n]
    assert sum(fq.gaussian_binomial(n, k, 2) for k in range(n + 1)) == SUBSPACES_F2[n]


@pytest.mark.parametrize("n", range(4))
def test_vect_f3_subobjects(vect3, n):
    assert len(vect3.subobjects(n)) == SUBSPACES_F3[n]


@pytest.mark.parametrize("n", range(4))
def test_quotients_are_distinct_surjections(n):
    for B in _backends():
        qs = B.quotients(n)
        assert all(B.is_surjective(e) for e in qs)
        kernels = {B.kernel_pair(e) for e in qs}
        assert len(kernels) == len(qs)
    assert len(FinSetOp().quotients(n)) == 2 ** n
    assert len(FinVectFq(2).quotients(n)) == SUBSPACES_F2[n]


def test_hom_and_aut_counts(setop, vect2):
    assert len(setop.morphisms(3, 2)) == 9
    assert len(setop.automorphisms(3)) == 6 == setop.aut_order(3)
    assert len(vect2.morphisms(2, 1)) == 4
    assert len(vect2.automorphisms(2)) == 6 == vect2.aut_order(2)
    assert FinVectFq(3).aut_order(2) == 48


# ----- category laws -----


@pytest.mark.parametrize("B", _backends(), ids=repr)
@given(data=st.data())
def test_composition_is_associative_and_unital(B, data):
    h, f, g = data.draw(chains(B))
    assert B.compose(g, B.compose(f, h)) == B.compose(B.compose(g, f), h)
    assert B.compose(f, B.identity(f.source)) == f
    assert B.compose(B.identity(f.target), f) == f


def test_compose_type_mismatch_raises(setop, vect2):
    with pytest.raises(ContractViolation):
        setop.compose(setop.identity(2), setop.identity(3))
    with pytest.raises(ContractViolation):
        vect2.compose(vect2.identity(2), vect2.identity(1))


# ----- image factorization -----


@given(setop_maps(4))
def test_setop_image_factorization(f):
    _check_image(FinSetOp(), f)


@given(vect_maps(2, 3))
def test_vect_image_factorization(f):
    _check_image(FinVectFq(2), f)


@given(vect_maps(3, 2))
def test_vect3_image_factorization(f):
    _check_image(FinVectFq(3), f)


def _check_image(B, f):
    im = B.image(f)
    m = B.mono(im.mono)
    assert B.is_surjective(im.epi)
    assert B.is_injective(m)
    assert B.compose(m, im.epi) == f
    assert im.mono in B.subobjects(f.target)


# ----- pullbacks: universal property by brute force -----


def _cones(B, f, g, w_max):
    for w in range(w_max + 1):
        for a in B.morphisms(w, f.source):
            for b in B.morphisms(w, g.source):
                if B.compose(f, a) == B.compose(g, b):
                    yield w, a, b


def _check_pullback_universal(B, f, g, w_max):
    p, p1, p2 = B.pullback(f, g)
    assert B.compose(f, p1) == B.compose(g, p2)
    for w, a, b in _cones(B, f, g, w_max):
        factorizations = [
            u for u in B.morphisms(w, p) if B.compose(p1, u) == a and B.compose(p2, u) == b
        ]
        assert len(factorizations) == 1


def test_setop_pullback_universal(setop):
    # all cospans between objects of size <= 2 over a target of size <= 2
    for z in range(3):
        for x, y in product(range(1, 3), repeat=2):
            for f in setop.morphisms(x, z):
                for g in setop.morphisms(y, z):
                    _check_pullback_universal(setop, f, g, 2)


def test_vect_pullback_universal(vect2):
    for z in range(2):
        for x, y in product(range(3), repeat=2):
            if x + y > 3:
                continue
            for f in vect2.morphisms(x, z):
                for g in vect2.morphisms(y, z):
                    _check_pullback_universal(vect2, f, g, 1)


@pytest.mark.parametrize("B", _backends(), ids=repr)
def test_surjections_stable_under_pullback(B):
    # regularity: the pullback of a surjection along any morphism is surjective
    for x in range(3):
        for e in B.quotients(x):
            for y in range(3):
                for f in B.morphisms(y, e.target):
                    _, p1, p2 = B.pullback(e, f)
                    assert B.is_surjective(p2)


# ----- subobject lattice operations -----


@pytest.mark.parametrize("B,n", [(FinSetOp(), 4), (FinVectFq(2), 3), (FinVectFq(3), 2)])
def test_meet_is_greatest_lower_bound(B, n):
    subs = B.subobjects(n)
    for u in subs:
        for v in subs:
            m = B.meet(u, v)
            assert B.leq(m, u) and B.leq(m, v)
            for w in subs:
                if B.leq(w, u) and B.leq(w, v):
                    assert B.leq(w, m)


def test_setop_meet_matches_generic_pullback_meet(setop):
    subs = setop.subobjects(4)
    for u in subs:
        for v in subs:
            assert setop.meet(u, v) == super(FinSetOp, setop).meet(u, v)


def test_setop_order_is_reverse_refinement(setop):
    top, bottom = setop.top(3), setop.bottom(3)
    assert top.key == ((0,), (1,), (2,))
    assert bottom.key == ((0, 1, 2),)
    coarse = Subobject(3, ((0, 1), (2,)))
    assert setop.leq(coarse, top) and not setop.leq(top, coarse)


@pytest.mark.parametrize("B,n", [(FinSetOp(), 3), (FinVectFq(2), 3), (FinVectFq(3), 2)])
def test_galois_adjunction(B, n):
    for x in range(n + 1):
        for e in B.quotients(x):
            for u in B.subobjects(x):
                for v in B.subobjects(e.target):
                    img, pre = B.galois_images(e, u, v)
                    assert B.leq(img, v) == B.leq(u, pre)


def test_galois_requires_surjection(setop):
    f = Morphism(2, 2, (0, 0))
    with pytest.raises(ContractViolation):
        setop.galois_images(f, setop.top(2), setop.top(2))


@pytest.mark.parametrize("B,n", [(FinSetOp(), 3), (FinVectFq(2), 2)])
def test_factors_through_matches_brute_force(B, n):
    for x in range(n + 1):
        qs = B.quotients(x)
        for e in qs:
            for e2 in qs:
                brute = any(B.compose(g, e2) == e for g in B.morphisms(e2.target, e.target))
                assert B.factors_through(e, e2) == brute


# ----- squares of surjections -----


def _squares(B, n):
    """Commutative squares u -> x, u -> y, x -> z, y -> z of surjections, built as a
    pushout followed by a further quotient, so pullbacks and non-pullbacks both occur."""
    for u in range(n + 1):
        qs = B.quotients(u)
        for f1 in qs:
            for f2 in qs:
                c, g1, g2 = B.pushout_of_surjections(f1, f2)
                for h in B.quotients(c):
                    yield f1, f2, B.compose(h, g1), B.compose(h, g2)


@pytest.mark.parametrize("B,n", [(FinSetOp(), 3), (FinVectFq(2), 2), (FinVectFq(3), 2)])
def test_pushpull(B, n):
    pulls = pushes = 0
    for sq in _squares(B, n):
        assert B.square_commutes(*sq)
        assert B.pushpull_holds(*sq)
        pulls += B.is_pullback_square(*sq)
        pushes += B.is_pushout_square(*sq)
    assert pulls > 0 and pushes > pulls


def test_pushout_is_pushout(setop, vect2):
    for B, n in [(setop, 3), (vect2, 2)]:
        for u in range(n + 1):
            for f1 in B.quotients(u):
                for f2 in B.quotients(u):
                    c, g1, g2 = B.pushout_of_surjections(f1, f2)
                    assert B.is_surjective(g1) and B.is_surjective(g2)
                    assert B.is_pushout_square(f1, f2, g1, g2)


def test_setop_pushout_of_two_points():
    # gluing {0} and {1} in the opposite category: the shared part is empty
    B = FinSetOp()
    e1 = Morphism(2, 1, (0,))
    e2 = Morphism(2, 1, (1,))
    c, _, _ = B.pushout_of_surjections(e1, e2)
    assert c == 0
    assert B.is_pullback_square(e1, e2, B.to_terminal(1), B.to_terminal(1))


# ----- bounds and construction -----


def test_bounds_are_enforced():
    B = FinSetOp(Bounds(max_setsize=3))
    B.subobjects(3)
    with pytest.raises(ResourceBoundError):
        B.subobjects(4)
    V = FinVectFq(2, Bounds(max_qdim=8))
    V.subobjects(3)
    with pytest.raises(ResourceBoundError):
        V.subobjects(4)
    with pytest.raises(ResourceBoundError):
        FinSetOp(Bounds(max_psize=10)).morphisms(3, 3)


def test_bounds_from_env(monkeypatch):
    monkeypatch.setenv("TENV_MAX_SETSIZE", "2")
    assert Bounds.from_env().max_setsize == 2
    with pytest.raises(ResourceBoundError):
        FinSetOp().subobjects(3)
    monkeypatch.setenv("TENV_MAX_SETSIZE", "many")
    with pytest.raises(SchemaError):
        Bounds.from_env()


def test_make_backend():
    assert make_backend("setop").name == "setop"
    assert make_backend("vect", 5).q == 5
    with pytest.raises(SchemaError):
        make_backend("vect", 4)
    with pytest.raises(SchemaError):
        make_backend("groups")


def test_subobject_json_roundtrip(setop, vect2):
    for u in setop.subobjects(3):
        assert setop.subobject_from_json(3, setop.subobject_json(u)) == u
    for u in vect2.subobjects(3):
        assert vect2.subobject_from_json(3, vect2.subobject_json(u)) == u
    with pytest.raises(SchemaError):
        setop.subobject_from_json(3, [[0, 1]])
