"""Finite posets of subobjects, Moebius functions and the Moebius algebra.

Meets are recovered from the order alone (down-sets as bitmasks), so they can
be checked against the backend's pullback-based meet.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import ContractViolation
from .linalg import determinant


@dataclass
class FinitePoset:
    """A finite poset with partially defined meets."""

    elements: list
    leq_table: list  # leq_table[i][j] is True when elements[i] <= elements[j]
    down: list = field(default_factory=list)  # bitmask of the down-set of each element
    _by_down: dict = field(default_factory=dict)
    _mu_cols: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.elements)
        if not self.down:
            self.down = [
                sum(1 << i for i in range(n) if self.leq_table[i][j]) for j in range(n)
            ]
        self._by_down = {d: j for j, d in enumerate(self.down)}
        if len(self._by_down) != n:
            raise ContractViolation("relation is not antisymmetric")
        self.index = {e: i for i, e in enumerate(self.elements)}
        # increasing down-set size is a linear extension
        self.linear = sorted(range(n), key=lambda j: bin(self.down[j]).count("1"))

    @classmethod
    def from_order(cls, elements, leq):
        elements = list(elements)
        table = [[leq(a, b) for b in elements] for a in elements]
        return cls(elements, table)

    @classmethod
    def of_subobjects(cls, backend, x):
        return cls.from_order(backend.subobjects(x), backend.leq)

    def __len__(self):
        return len(self.elements)

    def leq(self, i, j):
        return self.leq_table[i][j]

    def meet(self, i, j):
        """Index of the greatest lower bound, or None if there is none."""
        return self._by_down.get(self.down[i] & self.down[j])

    def below(self, j):
        d = self.down[j]
        return [i for i in range(len(self.elements)) if d >> i & 1]

    def top(self):
        full = (1 << len(self.elements)) - 1
        return self._by_down.get(full)

    def mu_column(self, v):
        """{u: mu(u, v)} for all u <= v."""
        if v in self._mu_cols:
            return self._mu_cols[v]
        below = self.below(v)
        below.sort(key=lambda i: bin(self.down[i]).count("1"), reverse=True)
        mu = {v: 1}
        for u in below:
            if u == v:
                continue
            # mu(u, v) = - sum over u < w <= v
            s = 0
            for w, m in mu.items():
                if w != u and self.leq_table[u][w]:
                    s += m
            mu[u] = -s
        self._mu_cols[v] = mu
        return mu

    def mu(self, u, v):
        if not self.leq_table[u][v]:
            return 0
        return self.mu_column(v)[u]

    def moebius_matrix(self):
        n = len(self.elements)
        out = [[0] * n for _ in range(n)]
        for v in range(n):
            for u, m in self.mu_column(v).items():
                out[u][v] = m
        return out

    def zeta_matrix(self):
        return [[1 if b else 0 for b in row] for row in self.leq_table]


def check_moebius_inverse(poset):
    """zeta * mu is the identity."""
    n = len(poset)
    z = poset.zeta_matrix()
    m = poset.moebius_matrix()
    for i in range(n):
        for j in range(n):
            s = sum(z[i][k] * m[k][j] for k in range(n))
            if s != (1 if i == j else 0):
                return False
    return True


# ----- the Moebius algebra: basis = poset elements, product = meet, missing meet = 0 -----


def alg_mul(poset, a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = poset.meet(i, j)
            if k is None:
                continue
            out[k] = out.get(k, 0) + x * y
    return {k: c for k, c in out.items() if c != 0}


def alg_add(a, b, scale=1):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + scale * c
    return {k: c for k, c in out.items() if c != 0}


def lattice_idempotent(poset, v):
    """p_v = sum_{u <= v} mu(u, v) u."""
    return {u: m for u, m in poset.mu_column(v).items() if m != 0}


def lattice_idempotents(poset):
    return [lattice_idempotent(poset, v) for v in range(len(poset))]


def check_orthogonality(poset):
    """p_u p_v = delta_{uv} p_u for all pairs."""
    ps = lattice_idempotents(poset)
    for u in range(len(poset)):
        for v in range(len(poset)):
            prod = alg_mul(poset, ps[u], ps[v])
            want = ps[u] if u == v else {}
            if prod != want:
                return False
    return True


def apply_linear(poset, phi, a):
    """Extend a function on poset elements linearly to the Moebius algebra."""
    acc = 0
    for i, c in a.items():
        acc = acc + c * phi(i)
    return acc


@dataclass
class WilfResult:
    det: object
    factors: list
    product: object


def wilf_determinant(poset, phi):
    """det[phi(u meet v)] together with the product of phi(p_w); they must agree.

    phi is a function of element indices; pairs without a meet contribute 0.
    """
    n = len(poset)
    mat = []
    for u in range(n):
        row = []
        for v in range(n):
            k = poset.meet(u, v)
            row.append(0 if k is None else phi(k))
        mat.append(row)
    det = determinant(mat)
    factors = [apply_linear(poset, phi, lattice_idempotent(poset, w)) for w in range(n)]
    prod = 1
    for f in factors:
        prod = prod * f
    if det != prod:
        raise ContractViolation(f"determinant {det} differs from idempotent product {prod}")
    return WilfResult(det, factors, prod)


def stanley_split(backend, e, l_sub):
    """Check p_l = e^*(p_m) . p_{l -> m} in the Moebius algebra of sub(source e).

    Here m = e_*(l) and p_{l -> m} = sum of mu(w, l) w over w <= l with
    e_*(w) = m.  Returns (lhs, rhs) as coefficient dicts keyed by subobjects.
    """
    x, y = e.source, e.target
    L = FinitePoset.of_subobjects(backend, x)
    M = FinitePoset.of_subobjects(backend, y)
    l = L.index[l_sub]
    m_sub = backend.direct_image(e, l_sub)
    m = M.index[m_sub]
    lhs = lattice_idempotent(L, l)
    pull = {}
    for v, c in lattice_idempotent(M, m).items():
        w = backend.inverse_image(e, M.elements[v])
        if w is not None:
            k = L.index[w]
            pull[k] = pull.get(k, 0) + c
    pull = {k: c for k, c in pull.items() if c}
    restricted = {}
    for w, c in L.mu_column(l).items():
        if c and backend.direct_image(e, L.elements[w]) == m_sub:
            restricted[w] = c
    rhs = alg_mul(L, pull, restricted)
    name = lambda d: {L.elements[k]: c for k, c in d.items()}
    return name(lhs), name(rhs)
