"""Two finite regular categories: FinSetOp (opposite of finite sets) and FinVectFq.

Objects are skeletal, so an object is just an int: a set size or a dimension.
Size/dimension 0 is the terminal object.

FinSetOp: a morphism a -> b is stored as the underlying set map B -> A, i.e. a
tuple of length b with values in range(a).  Surjections are the injective set
maps, monomorphisms the surjective ones, and subobjects of n are the set
partitions of range(n) (a partition P sits below Q when Q refines P).

FinVectFq: a morphism x -> y is a y-by-x matrix over F_q (tuple of row
tuples); subobjects are subspaces, stored as RREF bases.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations, permutations, product

from . import fq
from .config import Bounds, ContractViolation, SchemaError


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    data: tuple


@dataclass(frozen=True)
class Subobject:
    ambient: int
    key: tuple


@dataclass(frozen=True)
class ImageFactorization:
    epi: Morphism  # source -> image object
    mono: Subobject  # image as a subobject of the target


class Backend(ABC):
    name = "abstract"

    def __init__(self, bounds=None):
        self.bounds = bounds or Bounds.from_env()

    # ----- primitives every backend provides -----

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def compose(self, f, g):
        """f after g."""

    @abstractmethod
    def is_surjective(self, f): ...

    @abstractmethod
    def is_injective(self, f): ...

    @abstractmethod
    def product(self, x, y):
        """(x*y, projection to x, projection to y)."""

    @abstractmethod
    def pair(self, f, g):
        """The map into a product with components f and g."""

    @abstractmethod
    def image(self, f) -> ImageFactorization: ...

    @abstractmethod
    def mono(self, sub) -> Morphism:
        """The canonical monomorphism representing a subobject."""

    @abstractmethod
    def pullback(self, f, g):
        """(P, P -> source f, P -> source g) or None if absent."""

    @abstractmethod
    def pushout_of_surjections(self, e1, e2):
        """(C, target e1 -> C, target e2 -> C)."""

    @abstractmethod
    def _subobjects(self, x): ...

    @abstractmethod
    def leq(self, u, v): ...

    @abstractmethod
    def quotients(self, x):
        """One surjection out of x per quotient (surjections up to isomorphism)."""

    @abstractmethod
    def morphisms(self, x, y): ...

    @abstractmethod
    def automorphisms(self, x): ...

    @abstractmethod
    def aut_order(self, x): ...

    @abstractmethod
    def describe(self, x) -> dict: ...

    @abstractmethod
    def morphism_json(self, f): ...

    @abstractmethod
    def subobject_json(self, u): ...

    # ----- derived structure -----

    def terminal(self):
        return 0

    def to_terminal(self, x):
        # both encodings store the unique map x -> 0 as an empty tuple
        return Morphism(x, 0, ())

    def is_iso(self, f):
        return f.source == f.target and self.is_surjective(f) and self.is_injective(f)

    def sub_object(self, u):
        """The object underlying a subobject."""
        return self.mono(u).source

    def subobjects(self, x):
        self.check_subobject_bound(x)
        return self._subobjects(x)

    def top(self, x):
        return self.image(self.identity(x)).mono

    def bottom(self, x):
        return min((u for u in self.subobjects(x)), key=lambda u: self.rank(self.sub_object(u)))

    def meet(self, u, v):
        """Intersection via the pullback of the two monomorphisms."""
        mu, mv = self.mono(u), self.mono(v)
        pb = self.pullback(mu, mv)
        if pb is None:
            return None
        _, pu, _ = pb
        return self.image(self.compose(mu, pu)).mono

    def direct_image(self, e, u):
        return self.image(self.compose(e, self.mono(u))).mono

    def inverse_image(self, e, v):
        pb = self.pullback(e, self.mono(v))
        if pb is None:
            return None
        return self.image(pb[1]).mono

    def galois_images(self, e, u, v):
        """(e_*(u), e^*(v)) for e: x -> y, u <= x, v <= y."""
        if not self.is_surjective(e):
            raise ContractViolation("galois images need a surjection")
        if e.source != u.ambient or e.target != v.ambient:
            raise ContractViolation("subobjects do not live on the ends of e")
        return self.direct_image(e, u), self.inverse_image(e, v)

    def kernel_pair(self, e):
        pb = self.pullback(e, e)
        return pb[1], pb[2]

    def factors_through(self, e, e2):
        """Does e factor as g . e2 for surjections e, e2 out of the same object?"""
        k1, k2 = self.kernel_pair(e2)
        return self.compose(e, k1) == self.compose(e, k2)

    # ----- squares u -> x, u -> y, x -> z, y -> z -----

    def square_commutes(self, f1, f2, g1, g2):
        return self.compose(g1, f1) == self.compose(g2, f2)

    def is_pullback_square(self, f1, f2, g1, g2):
        """u is the pullback of g1, g2 via f1, f2."""
        if not self.square_commutes(f1, f2, g1, g2):
            return False
        comparison = self.pair(f1, f2)
        if not self.is_injective(comparison):
            return False
        _, p1, p2 = self.pullback(g1, g2)
        return self.image(comparison).mono == self.image(self.pair(p1, p2)).mono

    def is_pushout_square(self, f1, f2, g1, g2):
        """z is the pushout of the surjections f1, f2 via g1, g2."""
        if not self.square_commutes(f1, f2, g1, g2):
            return False
        c, _, _ = self.pushout_of_surjections(f1, f2)
        # the induced map c -> z is surjective, so it is invertible iff the ranks agree
        return self.rank(c) == self.rank(g1.target)

    def pushpull_holds(self, f1, f2, g1, g2):
        """Pullback iff (pushout and u -> x*y injective), for a commutative square of surjections."""
        lhs = self.is_pullback_square(f1, f2, g1, g2)
        rhs = self.is_pushout_square(f1, f2, g1, g2) and self.is_injective(self.pair(f1, f2))
        return lhs == rhs

    @abstractmethod
    def rank(self, x):
        """Set size or dimension; together with the backend it names the object."""

    @abstractmethod
    def check_subobject_bound(self, x): ...


# ----- FinSetOp -----


def set_partitions(n):
    """All partitions of range(n), each a tuple of sorted blocks ordered by minimum."""
    out = []

    def rec(i, blocks):
        if i == n:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return out


def canonical_partition(blocks):
    bs = [tuple(sorted(b)) for b in blocks if b]
    return tuple(sorted(bs))


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _classes(n, pairs):
    """Connected components of range(n) under the given pairs, ordered by minimum."""
    parent = list(range(n))
    for a, b in pairs:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    label = {}
    cls = []
    for i in range(n):
        r = _find(parent, i)
        if r not in label:
            label[r] = len(label)
        cls.append(label[r])
    return cls, len(label)


class FinSetOp(Backend):
    name = "setop"

    def identity(self, x):
        return Morphism(x, x, tuple(range(x)))

    def compose(self, f, g):
        if g.target != f.source:
            raise ContractViolation(f"cannot compose {f} after {g}")
        G = g.data
        return Morphism(g.source, f.target, tuple(G[k] for k in f.data))

    def is_surjective(self, f):
        return len(set(f.data)) == len(f.data)

    def is_injective(self, f):
        return len(set(f.data)) == f.source

    def product(self, x, y):
        p = x + y
        return p, Morphism(p, x, tuple(range(x))), Morphism(p, y, tuple(range(x, x + y)))

    def pair(self, f, g):
        if f.source != g.source:
            raise ContractViolation("pair needs a common source")
        return Morphism(f.source, f.target + g.target, f.data + g.data)

    def image(self, f):
        fibers = {}
        for k, a in enumerate(f.data):
            fibers.setdefault(a, []).append(k)
        blocks = sorted(tuple(b) for b in fibers.values())
        epi = Morphism(f.source, len(blocks), tuple(f.data[b[0]] for b in blocks))
        return ImageFactorization(epi, Subobject(f.target, tuple(blocks)))

    def mono(self, sub):
        idx = [0] * sub.ambient
        for i, b in enumerate(sub.key):
            for k in b:
                idx[k] = i
        return Morphism(len(sub.key), sub.ambient, tuple(idx))

    def pullback(self, f, g):
        if f.target != g.target:
            raise ContractViolation("pullback needs a common target")
        x, y = f.source, g.source
        cls, p = _classes(x + y, [(a, x + b) for a, b in zip(f.data, g.data)])
        return p, Morphism(p, x, tuple(cls[:x])), Morphism(p, y, tuple(cls[x:]))

    def pushout_of_surjections(self, e1, e2):
        if e1.source != e2.source:
            raise ContractViolation("pushout needs a common source")
        where2 = {a: j for j, a in enumerate(e2.data)}
        pairs = sorted((a, i, where2[a]) for i, a in enumerate(e1.data) if a in where2)
        c = len(pairs)
        return (
            c,
            Morphism(e1.target, c, tuple(i for _, i, _ in pairs)),
            Morphism(e2.target, c, tuple(j for _, _, j in pairs)),
        )

    def _subobjects(self, x):
        return [Subobject(x, p) for p in sorted(set_partitions(x))]

    def leq(self, u, v):
        where = {}
        for i, b in enumerate(u.key):
            for k in b:
                where[k] = i
        return all(len({where[k] for k in b}) == 1 for b in v.key)

    def meet(self, u, v):
        n = u.ambient
        pairs = [(b[0], k) for b in u.key + v.key for k in b[1:]]
        cls, m = _classes(n, pairs)
        blocks = [[] for _ in range(m)]
        for k, c in enumerate(cls):
            blocks[c].append(k)
        return Subobject(n, tuple(tuple(b) for b in blocks))

    def quotients(self, x):
        out = []
        for k in range(x, -1, -1):
            for s in combinations(range(x), k):
                out.append(Morphism(x, k, s))
        return out

    def morphisms(self, x, y):
        self.bounds.check("max_psize", x ** y, f"enumerating FinSetOp({x}, {y})")
        return [Morphism(x, y, d) for d in product(range(x), repeat=y)]

    def automorphisms(self, x):
        self.bounds.check("max_psize", _factorial(x), f"enumerating Aut({x})")
        return [Morphism(x, x, p) for p in permutations(range(x))]

    def aut_order(self, x):
        return _factorial(x)

    def rank(self, x):
        return x

    def check_subobject_bound(self, x):
        self.bounds.check("max_setsize", x, "partition enumeration of a set")

    def describe(self, x):
        return {"backend": "setop", "size": x}

    def morphism_json(self, f):
        return {"source": f.source, "target": f.target, "map": list(f.data)}

    def subobject_json(self, u):
        return [list(b) for b in u.key]

    def subobject_from_json(self, x, blocks):
        seen = sorted(k for b in blocks for k in b)
        if seen != list(range(x)):
            raise SchemaError(f"blocks must partition range({x})")
        return Subobject(x, canonical_partition(blocks))


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ----- FinVectFq -----


class FinVectFq(Backend):
    name = "vect"

    def __init__(self, q=2, bounds=None):
        super().__init__(bounds)
        if not fq.is_prime(q):
            raise SchemaError(f"q must be prime, got {q}", "/q")
        self.q = q

    def __repr__(self):
        return f"FinVectFq(q={self.q})"

    def identity(self, x):
        return Morphism(x, x, fq.identity(x))

    def compose(self, f, g):
        if g.target != f.source:
            raise ContractViolation(f"cannot compose {f} after {g}")
        return Morphism(g.source, f.target, fq.matmul(f.data, g.data, f.source, g.source, self.q))

    def _rank(self, f):
        return fq.rank(f.data, f.source, self.q)

    def is_surjective(self, f):
        return self._rank(f) == f.target

    def is_injective(self, f):
        return self._rank(f) == f.source

    def product(self, x, y):
        p = x + y
        px = tuple(tuple(1 if j == i else 0 for j in range(p)) for i in range(x))
        py = tuple(tuple(1 if j == x + i else 0 for j in range(p)) for i in range(y))
        return p, Morphism(p, x, px), Morphism(p, y, py)

    def pair(self, f, g):
        if f.source != g.source:
            raise ContractViolation("pair needs a common source")
        return Morphism(f.source, f.target + g.target, f.data + g.data)

    def image(self, f):
        basis, pivots = fq.rref(fq.transpose(f.data, f.source), f.target, self.q)
        epi = tuple(f.data[p] for p in pivots)
        return ImageFactorization(Morphism(f.source, len(basis), epi), Subobject(f.target, basis))

    def mono(self, sub):
        return Morphism(len(sub.key), sub.ambient, fq.transpose(sub.key, sub.ambient))

    def pullback(self, f, g):
        if f.target != g.target:
            raise ContractViolation("pullback needs a common target")
        x, y, q = f.source, g.source, self.q
        rows = [tuple(f.data[i]) + tuple((-v) % q for v in g.data[i]) for i in range(f.target)]
        ker = fq.nullspace(rows, x + y, q)
        p = len(ker)
        px = tuple(tuple(v[i] for v in ker) for i in range(x))
        py = tuple(tuple(v[x + i] for v in ker) for i in range(y))
        return p, Morphism(p, x, px), Morphism(p, y, py)

    def _quotient_by(self, n, basis_rows):
        """Matrix of F^n -> F^n / span(basis_rows) in coordinates off the pivots."""
        red, pivots = fq.rref(basis_rows, n, self.q)
        keep = [c for c in range(n) if c not in pivots]
        cols = []
        for j in range(n):
            v = [1 if i == j else 0 for i in range(n)]
            for row, p in zip(red, pivots):
                c = v[p]
                if c:
                    v = [(a - c * b) % self.q for a, b in zip(v, row)]
            cols.append([v[k] for k in keep])
        mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(len(keep)))
        return len(keep), mat

    def pushout_of_surjections(self, e1, e2):
        if e1.source != e2.source:
            raise ContractViolation("pushout needs a common source")
        y1, y2, q = e1.target, e2.target, self.q
        cols = []
        for j in range(e1.source):
            cols.append(
                tuple(e1.data[i][j] for i in range(y1))
                + tuple((-e2.data[i][j]) % q for i in range(y2))
            )
        c, mat = self._quotient_by(y1 + y2, cols)
        q1 = tuple(r[:y1] for r in mat)
        q2 = tuple(r[y1:] for r in mat)
        return c, Morphism(y1, c, q1), Morphism(y2, c, q2)

    def _subobjects(self, x):
        out = []
        for k in range(x + 1):
            out.extend(Subobject(x, b) for b in fq.all_rref(k, x, self.q))
        return out

    def check_subobject_bound(self, x):
        self.bounds.check("max_qdim", self.q ** x, f"subspace enumeration of F_{self.q}^{x} (q^d)")

    def leq(self, u, v):
        return fq.rank(u.key + v.key, u.ambient, self.q) == len(v.key)

    def quotients(self, x):
        out = []
        for k in self.subobjects(x):
            c, mat = self._quotient_by(x, k.key)
            out.append(Morphism(x, c, mat))
        return out

    def morphisms(self, x, y):
        self.bounds.check("max_psize", self.q ** (x * y), f"enumerating Hom(F^{x}, F^{y})")
        out = []
        for vals in product(range(self.q), repeat=x * y):
            out.append(Morphism(x, y, tuple(tuple(vals[i * x:(i + 1) * x]) for i in range(y))))
        return out

    def automorphisms(self, x):
        return [f for f in self.morphisms(x, x) if self.is_injective(f)]

    def aut_order(self, x):
        return fq.gl_order(x, self.q)

    def rank(self, x):
        return x

    def describe(self, x):
        return {"backend": "vect", "q": self.q, "dim": x}

    def morphism_json(self, f):
        return {"source": f.source, "target": f.target, "matrix": [list(r) for r in f.data]}

    def subobject_json(self, u):
        return [list(r) for r in u.key]

    def subobject_from_json(self, x, rows):
        for r in rows:
            if len(r) != x or any(not isinstance(v, int) for v in r):
                raise SchemaError(f"basis vectors must be {x} integers")
        red, _ = fq.rref([[v % self.q for v in r] for r in rows], x, self.q)
        return Subobject(x, red)


def make_backend(name, q=2, bounds=None):
    if name == "setop":
        return FinSetOp(bounds)
    if name == "vect":
        return FinVectFq(q, bounds)
    raise SchemaError(f"unknown backend {name!r}", "/backend")
