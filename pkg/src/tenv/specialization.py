"""Realizing relations as matrices through a uniform functor to finite sets.

FinSetOp: P(A) = X^A for a fixed set X of size N, P(f) precomposes with the
underlying set map.  FinVectFq: P(U) = Hom(F_q^n, U), P(f) postcomposes with f.
A relation r: x -> y becomes the 0/1 count matrix P(r -> y) P(r -> x)^T.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from . import fq
from .backend import FinSetOp, FinVectFq
from .config import ContractViolation, ResourceBoundError
from .envelope import compose_hom, from_relation, hom_basis, tensor_hom
from .linalg import DenseMatrix, rank
from .radical import point_relation, radical
from .relations import _legs
from .scalars import simplify


class UniformFunctor:
    def __init__(self, backend, size):
        if size < 1:
            raise ContractViolation("the functor needs a nonempty set / positive dimension")
        self.backend = backend
        self.size = size  # |X| for FinSetOp, n for FinVectFq
        self._elements = {}
        self._index = {}
        self._maps = {}

    @property
    def is_set(self):
        return isinstance(self.backend, FinSetOp)

    def adapted_parameter(self):
        if self.is_set:
            return Fraction(self.size)
        return Fraction(self.backend.q ** self.size)

    def cardinality(self, x):
        if self.is_set:
            return self.size ** x
        return self.backend.q ** (self.size * x)

    def elements(self, x):
        if x not in self._elements:
            self.backend.bounds.check("max_psize", self.cardinality(x), f"functor value on object {x}")
            if self.is_set:
                els = list(product(range(self.size), repeat=x))
            else:
                n = self.size
                els = [
                    tuple(tuple(v[i * n:(i + 1) * n]) for i in range(x))
                    for v in product(range(self.backend.q), repeat=x * n)
                ]
            self._elements[x] = els
            self._index[x] = {e: i for i, e in enumerate(els)}
        return self._elements[x]

    def index(self, x):
        self.elements(x)
        return self._index[x]

    def act(self, f, a):
        """P(f) applied to one element a of P(source f)."""
        if self.is_set:
            return tuple(a[k] for k in f.data)
        return fq.matmul(f.data, a, f.source, self.size, self.backend.q)

    def apply(self, f):
        """P(f) as a tuple of target indices, one per element of P(source)."""
        if f not in self._maps:
            idx = self.index(f.target)
            self._maps[f] = tuple(idx[self.act(f, a)] for a in self.elements(f.source))
        return self._maps[f]


def relation_counts(P, r):
    """Sparse entries {(b, a): count} of the matrix of a relation."""
    to_x, to_y = _legs(P.backend, r)
    fx, fy = P.apply(to_x), P.apply(to_y)
    out = {}
    for a, b in zip(fx, fy):
        out[(b, a)] = out.get((b, a), 0) + 1
    return out


def relation_matrix(P, r):
    rows = [[0] * P.cardinality(r.left) for _ in range(P.cardinality(r.right))]
    for (b, a), c in relation_counts(P, r).items():
        rows[b][a] = c
    return DenseMatrix.from_rows(rows, P.cardinality(r.left))


def relation_matrix_oracle(P, r):
    """Entry (b, a) is 1 exactly when the pair (a, b) factors through r."""
    backend = P.backend
    xy = backend.product(r.left, r.right)[0]
    m = backend.mono(r.body)
    image = set(P.apply(m))
    idx = P.index(xy)
    rows = []
    for b in P.elements(r.right):
        row = []
        for a in P.elements(r.left):
            # concatenating coordinates gives the element (a, b) of P(x * y)
            row.append(1 if idx[a + b] in image else 0)
        rows.append(row)
    return DenseMatrix.from_rows(rows, P.cardinality(r.left))


def specialize(P, F):
    """The matrix of a linear combination of relations; coefficients must be numbers."""
    sp = F.space
    out = [[Fraction(0)] * P.cardinality(sp.source) for _ in range(P.cardinality(sp.target))]
    for c, r in F.terms():
        c = simplify(c)
        if not isinstance(c, Fraction):
            raise ContractViolation(f"coefficient {c} is not a number; specialize t first")
        for (b, a), k in relation_counts(P, r).items():
            out[b][a] += c * k
    return DenseMatrix.from_rows(out, P.cardinality(sp.source))


@dataclass
class FunctorReport:
    passed: bool
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)


def _surjections(backend, x):
    out = []
    for y in range(x + 1):
        out.extend(f for f in backend.morphisms(x, y) if backend.is_surjective(f))
    return out


def square_identity_holds(P, to_y, to_x, g, f):
    """Compare g^T-transfer with pullback transfer for a square A -> B, A -> C, B -> D, C -> D.

    A = P(p), B = P(y), C = P(x), D = P(z); to_y: A -> B, to_x: A -> C,
    g: B -> D, f: C -> D, all given as index tuples.  The identity
    g^T f == to_y to_x^T holds for every c in C exactly when A is the pullback.
    """
    fibers_g = {}
    for b, d in enumerate(g):
        fibers_g.setdefault(d, []).append(b)
    lhs = {}
    for c, d in enumerate(f):
        for b in fibers_g.get(d, []):
            lhs[(b, c)] = lhs.get((b, c), 0) + 1
    rhs = {}
    for a, (b, c) in enumerate(zip(to_y, to_x)):
        rhs[(b, c)] = rhs.get((b, c), 0) + 1
    return lhs == rhs


def uniformity_and_adapted_check(P, delta, max_rank=2):
    """Fibers of P(e) all have size delta(e) at the adapted parameter, and P is left exact."""
    backend = P.backend
    d = delta.at(P.adapted_parameter()) if delta.symbolic else delta
    report = FunctorReport(True, {"uniform": 0, "pullback": 0, "terminal": 1})
    if P.cardinality(backend.terminal()) != 1:
        report.passed = False
        report.failures.append(("terminal", "P(1) is not a point"))
    for x in range(max_rank + 1):
        for e in _surjections(backend, x):
            report.checked["uniform"] += 1
            counts = {}
            for b in P.apply(e):
                counts[b] = counts.get(b, 0) + 1
            sizes = set(counts.values())
            if len(counts) != P.cardinality(e.target):
                sizes.add(0)
            want = d(backend, e)
            if sizes != {want}:
                report.passed = False
                report.failures.append(("uniform", f"fiber sizes {sorted(sizes)} != {want} for {e}"))
    for z in range(max_rank + 1):
        for x in range(max_rank + 1):
            for y in range(max_rank + 1):
                for f in backend.morphisms(x, z):
                    for g in backend.morphisms(y, z):
                        report.checked["pullback"] += 1
                        _, to_x, to_y = backend.pullback(f, g)
                        ok = square_identity_holds(P, P.apply(to_y), P.apply(to_x), P.apply(g), P.apply(f))
                        if not ok:
                            report.passed = False
                            report.failures.append(("pullback", f"square over {f}, {g}"))
    return report


def functoriality_check(P, delta, objects=(1, 2), tensor_pairs=20):
    """T(g . f) = T(g) T(f) over all basis pairs of End([x]), plus tensor compatibility."""
    backend = P.backend
    report = FunctorReport(True, {"compose": 0, "tensor": 0})
    for x in objects:
        basis = hom_basis(backend, x, x).basis
        mats = {r: specialize(P, from_relation(backend, r)) for r in basis}
        for r in basis:
            for s in basis:
                report.checked["compose"] += 1
                lhs = specialize(P, compose_hom(from_relation(backend, s), from_relation(backend, r), delta))
                rhs = mats[s] @ mats[r]
                if lhs != rhs:
                    report.passed = False
                    report.failures.append(("compose", f"{s} after {r}"))
    small = hom_basis(backend, 1, 1).basis
    done = 0
    for r in small:
        for s in hom_basis(backend, 1, 1).basis:
            if done >= tensor_pairs:
                break
            done += 1
            report.checked["tensor"] += 1
            F, G = from_relation(backend, r), from_relation(backend, s)
            lhs = specialize(P, tensor_hom(F, G))
            rhs = specialize(P, F).kron(specialize(P, G))
            if lhs != rhs:
                report.passed = False
                report.failures.append(("tensor", f"{r} (x) {s}"))
    return report


# ----- the P* decomposition and orbits -----


def invariant(P, a):
    """Canonical invariant of a in P(x): its kernel partition, resp. its column space."""
    if P.is_set:
        groups = {}
        for k, v in enumerate(a):
            groups.setdefault(v, []).append(k)
        return tuple(sorted(tuple(g) for g in groups.values()))
    x = len(a)
    basis, _ = fq.rref(fq.transpose(a, P.size), x, P.backend.q)
    return basis


@dataclass
class PStarReport:
    pieces: dict  # subobject -> set of element indices of P(x) whose minimal subobject it is
    partition_ok: bool
    invariant_ok: bool
    orbit_ok: object  # True/False, or None when the group was too large to enumerate
    nonempty: int


def group_elements(P):
    """Aut of X: permutations of range(N) or invertible n x n matrices."""
    if P.is_set:
        P.backend.bounds.check("max_psize", _fact(P.size), "enumerating Sym(X)")
        return list(permutations(range(P.size)))
    V = FinVectFq(P.backend.q, P.backend.bounds)
    return [g.data for g in V.automorphisms(P.size)]


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def group_act(P, g, a):
    if P.is_set:
        return tuple(g[v] for v in a)
    return fq.matmul(a, g, P.size, P.size, P.backend.q)


def pstar_and_invariants(P, x, brute_orbits=True):
    backend = P.backend
    subs = backend.subobjects(x)
    images = {u: set(P.apply(backend.mono(u))) for u in subs}
    pieces = {}
    for u in subs:
        smaller = set()
        for v in subs:
            if v != u and backend.leq(v, u):
                smaller |= images[v]
        pieces[u] = images[u] - smaller
    covered = [0] * P.cardinality(x)
    for s in pieces.values():
        for a in s:
            covered[a] += 1
    partition_ok = all(c == 1 for c in covered)
    els = P.elements(x)
    invariant_ok = all(
        all(invariant(P, els[a]) == u.key for a in s) for u, s in pieces.items()
    )
    orbit_ok = None
    if brute_orbits:
        try:
            G = group_elements(P)
        except ResourceBoundError:
            G = None
        if G is not None:
            idx = P.index(x)
            orbit_ok = True
            for u, s in pieces.items():
                if not s:
                    continue
                a0 = next(iter(s))
                orbit = {idx[group_act(P, g, els[a0])] for g in G}
                if orbit != s:
                    orbit_ok = False
    nonempty = sum(1 for s in pieces.values() if s)
    return PStarReport(pieces, partition_ok, invariant_ok, orbit_ok, nonempty)


def fullness_rank(P, x):
    """Rank of the specialized vectors of Hom(1, [x]); equals the number of nonempty P*."""
    backend = P.backend
    cols = []
    for u in backend.subobjects(x):
        m = specialize(P, from_relation(backend, point_relation(x, u)))
        cols.append([m[i, 0] for i in range(m.rows)])
    return rank(cols)


def burnside_orbit_count(P, x, y):
    """Number of Aut(X)-orbits on P(x) * P(y), by Burnside's lemma."""
    G = group_elements(P)
    ex, ey = P.elements(x), P.elements(y)
    total = 0
    for g in G:
        fx = sum(1 for a in ex if group_act(P, g, a) == a)
        fy = sum(1 for b in ey if group_act(P, g, b) == b)
        total += fx * fy
    if total % len(G):
        raise ContractViolation("Burnside count is not an integer")
    return total // len(G)


@dataclass
class InterpolationReport:
    hom_dim: int
    radical_dim: int
    orbit_count: int

    @property
    def match(self):
        return self.hom_dim - self.radical_dim == self.orbit_count


def interpolation_dim_check(P, x, y, delta):
    """dim Hom([x], [y]) minus the radical at the adapted t vs orbits of Aut(X) on P(x) * P(y)."""
    d = delta.at(P.adapted_parameter()) if delta.symbolic else delta
    rad = radical(P.backend, x, y, d)
    return InterpolationReport(rad.hom_dim, rad.radical_dim, burnside_orbit_count(P, x, y))
