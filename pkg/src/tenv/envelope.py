"""The linear category of relations: Hom spaces spanned by relations.

A morphism [x] -> [y] is a linear combination of relations x -> y; products
of basis relations are single weighted relations, so End([x]) has sparse
structure constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .backend import Subobject, canonical_partition
from .config import ContractViolation
from .relations import (
    Relation,
    core,
    ev_coev,
    identity_relation,
    relations,
    tensor_object,
    tensor_rel,
    transpose,
    weighted_compose,
)
from .scalars import simplify


@dataclass(frozen=True)
class HomSpace:
    backend: object
    source: int
    target: int
    basis: tuple
    index: dict

    def __len__(self):
        return len(self.basis)

    def __hash__(self):
        return hash((id(self.backend), self.source, self.target))

    def __eq__(self, other):
        return (
            isinstance(other, HomSpace)
            and self.backend is other.backend
            and (self.source, self.target) == (other.source, other.target)
        )


@lru_cache(maxsize=None)
def hom_basis(backend, x, y):
    basis = tuple(relations(backend, x, y))
    return HomSpace(backend, x, y, basis, {r: i for i, r in enumerate(basis)})


@dataclass(frozen=True)
class LinearHom:
    space: HomSpace
    coeffs: tuple

    @classmethod
    def basis_vector(cls, space, r, coeff=1):
        v = [simplify(0)] * len(space)
        v[space.index[r]] = simplify(coeff)
        return cls(space, tuple(v))

    @classmethod
    def zero(cls, space):
        return cls(space, tuple(simplify(0) for _ in range(len(space))))

    def terms(self):
        return [(c, self.space.basis[i]) for i, c in enumerate(self.coeffs) if c != 0]

    def __add__(self, other):
        if self.space != other.space:
            raise ContractViolation("adding morphisms of different Hom spaces")
        return LinearHom(self.space, tuple(simplify(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LinearHom(self.space, tuple(simplify(c * a) for a in self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)


def from_relation(backend, r, coeff=1):
    return LinearHom.basis_vector(hom_basis(backend, r.left, r.right), r, coeff)


def compose_hom(G, F, delta):
    """G after F."""
    if F.space.target != G.space.source:
        raise ContractViolation("composing morphisms with mismatched objects")
    backend = F.space.backend
    out = hom_basis(backend, F.space.source, G.space.target)
    acc = [0] * len(out)
    for a, r in F.terms():
        for b, s in G.terms():
            w = weighted_compose(backend, r, s, delta)
            if w is None:
                continue
            k = out.index[w.relation]
            acc[k] = acc[k] + a * b * w.coeff
    return LinearHom(out, tuple(simplify(c) for c in acc))


def identity_hom(backend, x):
    return from_relation(backend, identity_relation(backend, x))


def tensor_hom(F, G):
    backend = F.space.backend
    acc = {}
    for a, r in F.terms():
        for b, s in G.terms():
            rs = tensor_rel(backend, r, s)
            acc[rs] = acc.get(rs, 0) + a * b
    x = tensor_object(backend, F.space.source, G.space.source)
    y = tensor_object(backend, F.space.target, G.space.target)
    space = hom_basis(backend, x, y)
    v = [simplify(0)] * len(space)
    for rs, c in acc.items():
        v[space.index[rs]] = simplify(c)
    return LinearHom(space, tuple(v))


def dual_hom(F):
    """Transpose of every relation; [x] is its own dual."""
    backend = F.space.backend
    space = hom_basis(backend, F.space.target, F.space.source)
    v = [simplify(0)] * len(space)
    for c, r in F.terms():
        v[space.index[transpose(backend, r)]] = c
    return LinearHom(space, tuple(v))


def relation_trace(backend, r, delta):
    """ev . (r (x) id) . coev for a relation r: x -> x."""
    if r.left != r.right:
        raise ContractViolation("trace of a non-endomorphism")
    x = r.left
    ev, coev = ev_coev(backend, x)
    rid = tensor_rel(backend, r, identity_relation(backend, x))
    a = weighted_compose(backend, coev, rid, delta)
    b = weighted_compose(backend, a.relation, ev, delta)
    return simplify(a.coeff * b.coeff)


def trace(F, delta):
    acc = 0
    for c, r in F.terms():
        acc = acc + c * relation_trace(F.space.backend, r, delta)
    return simplify(acc)


def dimension(backend, x, delta):
    return relation_trace(backend, identity_relation(backend, x), delta)


@dataclass
class EndAlgebra:
    """End([x]) with sparse structure constants: b_j . b_i = coeff * b_k (or 0)."""

    backend: object
    obj: int
    space: HomSpace
    table: dict  # (i, j) -> (k, coeff) meaning b_j after b_i

    @property
    def dim(self):
        return len(self.space)

    def unit(self):
        return self.space.index[identity_relation(self.backend, self.obj)]

    def mul(self, a, b):
        """Product a * b = a after b, on coefficient vectors."""
        acc = [0] * self.dim
        for j, x in enumerate(a):
            if x == 0:
                continue
            for i, y in enumerate(b):
                if y == 0:
                    continue
                k, c = self.table[(i, j)]
                if c != 0:
                    acc[k] = acc[k] + x * y * c
        return [simplify(c) for c in acc]

    def structure_constants(self):
        """Dense c[i][j] = dict k -> coeff with b_i * b_j = sum_k c[i][j][k] b_k."""
        n = self.dim
        return [[{self.table[(j, i)][0]: self.table[(j, i)][1]} for j in range(n)] for i in range(n)]


def end_algebra(backend, x, delta):
    space = hom_basis(backend, x, x)
    table = {}
    for i, r in enumerate(space.basis):
        for j, s in enumerate(space.basis):
            w = weighted_compose(backend, r, s, delta)
            table[(i, j)] = (space.index[w.relation], simplify(w.coeff))
    return EndAlgebra(backend, x, space, table)


def check_associativity(alg):
    n = alg.dim
    tab = alg.table
    for a, b, c in iproduct(range(n), repeat=3):
        # (c . b) . a  vs  c . (b . a)
        k1, c1 = tab[(a, b)]
        k2, c2 = tab[(k1, c)]
        k3, c3 = tab[(b, c)]
        k4, c4 = tab[(a, k3)]
        lhs = c1 * c2
        rhs = c3 * c4
        if lhs != rhs or (lhs != 0 and k2 != k4):
            return False
    return True


def end_unit_check(backend, max_rank, delta):
    """Identities are two-sided units in every End([x]) up to the bound."""
    for x in range(max_rank + 1):
        alg = end_algebra(backend, x, delta)
        u = alg.unit()
        for i in range(alg.dim):
            if alg.table[(u, i)] != (i, 1) or alg.table[(i, u)] != (i, 1):
                return False
    return True


# ----- set-partition diagrams: an independent model of FinSetOp relations -----


def relation_to_diagram(r):
    """Blocks of labels 'x1'.. (left) and 'y1'.. (right) for a FinSetOp relation."""
    m = r.left
    out = []
    for b in r.body.key:
        out.append(frozenset(f"x{k + 1}" if k < m else f"y{k - m + 1}" for k in b))
    return frozenset(out)


def diagram_to_relation(diagram, m, n):
    def idx(label):
        side, k = label[0], int(label[1:])
        return k - 1 if side == "x" else m + k - 1

    blocks = canonical_partition([[idx(l) for l in b] for b in diagram])
    return Relation(m, n, Subobject(m + n, blocks))


def partition_oracle_compose(p, q):
    """Stack two partition diagrams p: x -> y and q: y -> z.

    Middle labels are glued, the connected components restricted to the outer
    labels give the result, and components living only in the middle are
    counted.  Returns (diagram, number of middle-only components).
    """
    p = [set(b) for b in p]
    q = [set(b) for b in q]
    nodes = []
    for b in p:
        nodes.append({("L" if l[0] == "x" else "M") + l[1:] for l in b})
    for b in q:
        nodes.append({("M" if l[0] == "x" else "R") + l[1:] for l in b})
    # merge blocks sharing a middle label
    merged = True
    while merged:
        merged = False
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if nodes[i] & nodes[j]:
                    nodes[i] |= nodes.pop(j)
                    merged = True
                    break
            if merged:
                break
    result = []
    middle_only = 0
    for comp in nodes:
        outer = {("x" if l[0] == "L" else "y") + l[1:] for l in comp if l[0] != "M"}
        if outer:
            result.append(frozenset(outer))
        else:
            middle_only += 1
    return frozenset(result), middle_only


@dataclass(frozen=True)
class TObject:
    """A summand of [x] cut out by an idempotent."""

    obj: int
    idempotent: LinearHom

    @classmethod
    def from_idempotent(cls, p, delta):
        if p.space.source != p.space.target:
            raise ContractViolation("idempotent must be an endomorphism")
        pp = compose_hom(p, p, delta)
        if pp != p:
            raise ContractViolation("morphism is not idempotent")
        return cls(p.space.source, p)

    def dimension(self, delta):
        return trace(self.idempotent, delta)


def aut_graph_count(backend, x):
    """Relations in End([x]) whose core has the size of x."""
    n = backend.rank(x)
    return sum(1 for r in hom_basis(backend, x, x).basis if backend.rank(core(backend, r).obj) == n)

