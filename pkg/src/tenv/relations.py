"""Relations in a regular category and their weighted composition.

A relation r: x -> y is a subobject of x*y.  Classical composition takes the
image of the pullback of r and s over y; the weighted composite multiplies it
by the degree of the surjection from that pullback onto its image.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .config import ContractViolation


@dataclass(frozen=True)
class Relation:
    left: int
    right: int
    body: object  # Subobject of left*right


@dataclass(frozen=True)
class WeightedRelation:
    coeff: object
    relation: Relation


@dataclass(frozen=True)
class Composite:
    relation: Relation
    epi: object  # surjection from the pullback onto the composite relation


def _legs(backend, r):
    """(r_obj -> left, r_obj -> right) for a relation r."""
    m = backend.mono(r.body)
    _, px, py = backend.product(r.left, r.right)
    return backend.compose(px, m), backend.compose(py, m)


def bracket(backend, f, x, y):
    """Image of f: p -> x*y as a relation x -> y, with the surjection onto it."""
    im = backend.image(f)
    return Composite(Relation(x, y, im.mono), im.epi)


@lru_cache(maxsize=None)
def _compose_cached(backend, r, s):
    if r.right != s.left:
        raise ContractViolation(f"cannot compose relations {r} then {s}")
    r_x, r_y = _legs(backend, r)
    s_y, s_z = _legs(backend, s)
    pb = backend.pullback(r_y, s_y)
    if pb is None:
        return None
    _, to_r, to_s = pb
    f = backend.pair(backend.compose(r_x, to_r), backend.compose(s_z, to_s))
    return bracket(backend, f, r.left, s.right)


def classical_compose(backend, r, s):
    """s after r, or None when the pullback does not exist."""
    c = _compose_cached(backend, r, s)
    return None if c is None else c.relation


def compose_with_epi(backend, r, s):
    return _compose_cached(backend, r, s)


def weighted_compose(backend, r, s, delta):
    """delta(pullback ->> composite) times (s after r), or None if absent."""
    c = _compose_cached(backend, r, s)
    if c is None:
        return None
    return WeightedRelation(delta(backend, c.epi), c.relation)


def identity_relation(backend, x):
    return graph_of(backend, backend.identity(x))


def graph_of(backend, f):
    """The relation {(a, f a)} as a subobject of source*target."""
    g = backend.pair(backend.identity(f.source), f)
    return Relation(f.source, f.target, backend.image(g).mono)


def _swap(backend, x, y):
    _, px, py = backend.product(x, y)
    return backend.pair(py, px)


def transpose(backend, r):
    sw = _swap(backend, r.left, r.right)
    m = backend.compose(sw, backend.mono(r.body))
    return Relation(r.right, r.left, backend.image(m).mono)


@lru_cache(maxsize=None)
def tensor_rel(backend, r, s):
    """r (x) s: x*y -> x'*y' for r: x -> x', s: y -> y'."""
    mr, ms = backend.mono(r.body), backend.mono(s.body)
    _, p_r, p_s = backend.product(mr.source, ms.source)
    r_x, r_x2 = _legs(backend, r)
    s_y, s_y2 = _legs(backend, s)
    left = backend.pair(backend.compose(r_x, p_r), backend.compose(s_y, p_s))
    right = backend.pair(backend.compose(r_x2, p_r), backend.compose(s_y2, p_s))
    xy, _, _ = backend.product(r.left, s.left)
    xy2, _, _ = backend.product(r.right, s.right)
    return Relation(xy, xy2, backend.image(backend.pair(left, right)).mono)


def tensor_object(backend, x, y):
    return backend.product(x, y)[0]


def ev_coev(backend, x):
    """(ev: x*x -> 1, coev: 1 -> x*x), both built from the diagonal."""
    star = backend.terminal()
    diag = backend.pair(backend.identity(x), backend.identity(x))
    xx = diag.target
    bang = backend.to_terminal(x)
    ev = Relation(xx, star, backend.image(backend.pair(diag, bang)).mono)
    coev = Relation(star, xx, backend.image(backend.pair(bang, diag)).mono)
    return ev, coev


def relations(backend, x, y):
    """All relations x -> y in canonical subobject order."""
    xy = backend.product(x, y)[0]
    return [Relation(x, y, u) for u in backend.subobjects(xy)]


@dataclass(frozen=True)
class Core:
    obj: int  # the core object c
    to_left: object  # surjection r ->> image of r in x
    to_right: object  # surjection r ->> image of r in y
    left_image: object  # Subobject of x
    right_image: object  # Subobject of y
    left_to_core: object  # surjection x_image ->> c
    right_to_core: object  # surjection y_image ->> c
    first: Relation  # x -> c
    second: Relation  # c -> y


def core(backend, r):
    """Pushout of the two images of r, and the factorization r = second . first."""
    r_x, r_y = _legs(backend, r)
    ix, iy = backend.image(r_x), backend.image(r_y)
    c, qx, qy = backend.pushout_of_surjections(ix.epi, iy.epi)
    to_c = backend.compose(qx, ix.epi)
    first = bracket(backend, backend.pair(r_x, to_c), r.left, c).relation
    second = bracket(backend, backend.pair(to_c, r_y), c, r.right).relation
    return Core(c, ix.epi, iy.epi, ix.mono, iy.mono, qx, qy, first, second)


def core_size(backend, r):
    return backend.rank(core(backend, r).obj)


def is_proper_subquotient(backend, y, x):
    """'equal' if y is x, 'proper' if y is a quotient of a subobject of x, else 'not'."""
    if y == x:
        return "equal"
    for u in backend.subobjects(x):
        w = backend.sub_object(u)
        if backend.rank(w) < backend.rank(y):
            continue
        for e in backend.quotients(w):
            if e.target == y:
                return "proper"
    return "not"
