"""Obstruction polynomials, Gram determinants, tensor radicals and block structure."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .backend import FinSetOp, Subobject
from .config import ContractViolation, ResourceBoundError
from .envelope import LinearHom, compose_hom, end_algebra, hom_basis, relation_trace, trace
from .linalg import charpoly, determinant, kernel_basis, rank, rref, solve_in_span
from .moebius import FinitePoset
from .relations import Relation, is_proper_subquotient, weighted_compose
from .scalars import (
    Poly,
    rational_roots,
    simplify,
    squarefree_decomposition,
    to_field,
    udivmod,
)


@lru_cache(maxsize=None)
def subobject_poset(backend, x):
    return FinitePoset.of_subobjects(backend, x)


# ----- omega -----


@dataclass(frozen=True)
class OmegaValue:
    surjection: object
    value: object
    terms: tuple  # (subobject w, mu(w, top), degree of w ->> target)


def omega(backend, e, delta):
    """Sum over w <= x with e(w) = y of mu(w, x) * delta(w ->> y)."""
    if not backend.is_surjective(e):
        raise ContractViolation("omega is defined for surjections")
    L = subobject_poset(backend, e.source)
    top = L.top()
    top_y = backend.top(e.target)
    acc = 0
    terms = []
    for w, m in sorted(L.mu_column(top).items()):
        if m == 0:
            continue
        comp = backend.compose(e, backend.mono(L.elements[w]))
        im = backend.image(comp)
        if im.mono != top_y:
            continue
        val = delta(backend, im.epi)
        terms.append((L.elements[w], m, val))
        acc = acc + m * val
    return OmegaValue(e, simplify(acc), tuple(terms))


def omega_multiplicativity_check(backend, e_bar, e, delta):
    """omega(e . e_bar) == omega(e) * omega(e_bar)."""
    whole = omega(backend, backend.compose(e, e_bar), delta).value
    parts = simplify(omega(backend, e, delta).value * omega(backend, e_bar, delta).value)
    return whole == parts, whole, parts


# ----- the Gram matrix of Hom(1, [x]) -----


def point_relation(x, u):
    """u viewed as a relation 1 -> x."""
    return Relation(0, x, Subobject(u.ambient, u.key))


def copoint_relation(x, u):
    """u viewed as a relation x -> 1."""
    return Relation(x, 0, Subobject(u.ambient, u.key))


@dataclass
class GramReport:
    obj: int
    subobjects: list
    matrix: list
    det: object
    omega_factors: list  # OmegaValue of u ->> 1 per subobject u
    product: object


def gram_matrix(backend, x, delta):
    subs = backend.subobjects(x)
    mat = []
    for u in subs:
        row = []
        for v in subs:
            w = weighted_compose(backend, point_relation(x, u), copoint_relation(x, v), delta)
            row.append(w.coeff)
        mat.append(row)
    return subs, mat


def gram_omega(backend, x, delta):
    """Gram determinant of Hom(1, [x]) and its factorization into omegas."""
    subs, mat = gram_matrix(backend, x, delta)
    det = simplify(determinant(mat))
    factors = []
    prod = 1
    for u in subs:
        w = backend.sub_object(u)
        ov = omega(backend, backend.to_terminal(w), delta)
        factors.append(ov)
        prod = prod * ov.value
    prod = simplify(prod)
    if det != prod:
        raise ContractViolation(f"Gram determinant {det} differs from omega product {prod}")
    return GramReport(x, subs, mat, det, factors, prod)


# ----- indecomposable surjections and the singular parameter set -----


def indecomposable_surjections(backend, x):
    """Non-invertible quotients of x admitting no factorization through a proper quotient."""
    quots = backend.quotients(x)
    out = []
    for e in quots:
        if e.target == x:
            continue
        ok = True
        for e2 in quots:
            if e2.target in (x, e.target):
                continue
            if backend.rank(e2.target) < backend.rank(e.target):
                continue
            if backend.factors_through(e, e2):
                ok = False
                break
        if ok:
            out.append(e)
    return out


@dataclass
class SingularityVerdict:
    symbolic: bool
    max_rank: int
    omegas: list  # (surjection, omega value)
    singular_params: list = field(default_factory=list)
    irrational_factors: list = field(default_factory=list)
    identically_zero: bool = False
    failing: list = field(default_factory=list)

    @property
    def nonsingular(self):
        if self.symbolic:
            return not self.identically_zero
        return not self.failing


def nonsingularity_verdict(backend, delta, max_rank):
    """Nonvanishing of omega on indecomposable surjections out of objects of rank <= max_rank.

    With a symbolic degree function the result is the set of rational
    parameters at which some omega vanishes.
    """
    omegas = []
    for x in range(1, max_rank + 1):
        for e in indecomposable_surjections(backend, x):
            omegas.append((e, omega(backend, e, delta).value))
    verdict = SingularityVerdict(delta.symbolic, max_rank, omegas)
    if not delta.symbolic:
        verdict.failing = [e for e, v in omegas if v == 0]
        return verdict
    roots = set()
    residual = set()
    for _, v in omegas:
        if v == 0:
            verdict.identically_zero = True
            continue
        if not isinstance(v, Poly):
            continue
        rs = rational_roots(v)
        roots.update(rs)
        rest = v.to_dense()
        for r, m in rs.items():
            for _ in range(m):
                rest = udivmod(rest, [-r, Fraction(1)])[0]
        if len(rest) > 1:
            residual.add(Poly.from_dense(rest, v.vars[0]) / rest[-1])
    verdict.singular_params = sorted(roots)
    verdict.irrational_factors = sorted(residual, key=str)
    return verdict


# ----- tensor radical: kernel of the trace pairing -----


@dataclass
class RadicalReport:
    hom_dim: int
    radical_dim: int
    basis: list  # coefficient vectors in the relation basis of Hom(x, y)
    pairing: list


def trace_pairing(backend, x, y, delta):
    """M[i][j] = tr(g_i . f_j) for f_j, g_i the relation bases of Hom(x, y), Hom(y, x)."""
    F = hom_basis(backend, x, y)
    G = hom_basis(backend, y, x)
    mat = []
    for g in G.basis:
        row = []
        for f in F.basis:
            w = weighted_compose(backend, f, g, delta)
            row.append(simplify(w.coeff * relation_trace(backend, w.relation, delta)))
        mat.append(row)
    return mat


def radical(backend, x, y, delta, summands=None):
    """Negligible morphisms x -> y: those f with tr(g f) = 0 for every g: y -> x.

    ``summands`` optionally gives idempotents (p, q) on x and y; the radical
    is then computed inside q Hom(x, y) p.
    """
    if summands is None:
        mat = trace_pairing(backend, x, y, delta)
        n = len(hom_basis(backend, x, y))
        basis = kernel_basis(mat)
        return RadicalReport(n, len(basis), [tuple(simplify(c) for c in v) for v in basis], mat)
    p, q = summands
    F = hom_basis(backend, x, y)
    G = hom_basis(backend, y, x)
    fs = _span_reduce([compose_hom(q, compose_hom(LinearHom.basis_vector(F, r), p, delta), delta) for r in F.basis])
    gs = _span_reduce([compose_hom(p, compose_hom(LinearHom.basis_vector(G, r), q, delta), delta) for r in G.basis])
    mat = [[trace(compose_hom(g, f, delta), delta) for f in fs] for g in gs]
    if not fs:
        return RadicalReport(0, 0, [], mat)
    if not gs:
        combos = [[1 if i == j else 0 for i in range(len(fs))] for j in range(len(fs))]
    else:
        combos = kernel_basis(mat)
    vecs = []
    for c in combos:
        v = [0] * len(F)
        for coeff, f in zip(c, fs):
            for i, a in enumerate(f.coeffs):
                v[i] = v[i] + coeff * a
        vecs.append(v)
    basis = [tuple(simplify(c) for c in r) for r in rref(vecs)[0]] if vecs else []
    return RadicalReport(len(fs), len(basis), basis, mat)


def _span_reduce(homs):
    """A linearly independent subfamily spanning the same space."""
    out = []
    rows = []
    for h in homs:
        trial = rows + [list(h.coeffs)]
        if rank(trial) > len(rows):
            rows = trial
            out.append(h)
    return out


# ----- semisimple quotient and its blocks -----


@dataclass
class Algebra:
    """Finite-dimensional algebra by dense structure constants: e_i e_j = sum_k c[i][j][k] e_k."""

    dim: int
    consts: list

    def mul(self, a, b):
        acc = [to_field(0)] * self.dim
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                xy = x * y
                for k, c in self.consts[i][j].items():
                    acc[k] = acc[k] + xy * c
        return acc

    def left_matrix(self, z):
        """Matrix of a -> z a, columns indexed by basis elements."""
        cols = [self.mul(z, _unit_vec(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def center(self):
        n = self.dim
        rows = []
        for b in range(n):
            # sum_k z_k (e_k e_b - e_b e_k) = 0, one equation per output coordinate
            eq = [[to_field(0)] * n for _ in range(n)]
            for k in range(n):
                for out, c in self.consts[k][b].items():
                    eq[out][k] = eq[out][k] + c
                for out, c in self.consts[b][k].items():
                    eq[out][k] = eq[out][k] - c
            rows.extend(r for r in eq if any(v != 0 for v in r))
        if not rows:
            return [_unit_vec(n, j) for j in range(n)]
        return [list(v) for v in kernel_basis(rows)]


def _unit_vec(n, j):
    return [to_field(1 if i == j else 0) for i in range(n)]


def quotient_algebra(alg, ideal_basis):
    """The algebra modulo a two-sided ideal, on the coordinates off the ideal's pivots."""
    red, pivots = rref(ideal_basis) if ideal_basis else ([], [])
    keep = [c for c in range(alg.dim) if c not in pivots]
    pos = {c: i for i, c in enumerate(keep)}

    def reduce(v):
        v = [to_field(a) for a in v]
        for row, p in zip(red, pivots):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return [v[c] for c in keep]

    consts = [[None] * len(keep) for _ in keep]
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            prod = alg.mul(_unit_vec(alg.dim, ca), _unit_vec(alg.dim, cb))
            r = reduce(prod)
            consts[a][b] = {k: c for k, c in enumerate(r) if c != 0}
    return Algebra(len(keep), consts), reduce, pos


def algebra_from_end(E):
    n = E.dim
    consts = [[{} for _ in range(n)] for _ in range(n)]
    for (i, j), (k, c) in E.table.items():
        # b_j after b_i is the product b_j * b_i
        if c != 0:
            consts[j][i] = {k: to_field(c)}
    return Algebra(n, consts)


@dataclass
class BlockReport:
    blocks: list  # matrix sizes d_i of the simple blocks, largest first
    center_dim: int
    quotient_dim: int
    radical_dim: int
    method: str
    unsplit: list = field(default_factory=list)  # (center dim, dimension) of blocks not split over Q
    idempotents: list = field(default_factory=list)  # central idempotents of the quotient

    @property
    def block_count(self):
        return len(self.blocks) + sum(c for c, _ in self.unsplit)


def _isqrt_exact(n):
    r = int(round(n ** 0.5))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    raise ContractViolation(f"block dimension {n} is not a perfect square")


def _random_central(center, rng):
    n = len(center[0])
    coeffs = [rng.randint(1, 97) for _ in center]
    z = [to_field(0)] * n
    for c, v in zip(coeffs, center):
        z = [a + c * b for a, b in zip(z, v)]
    return z


def blocks_by_multiplicity(A, center, tries=8, seed=1):
    """Block sizes from the characteristic polynomial of left multiplication by a central z.

    L_z acts on the i-th block by its eigenvalue, so the multiplicities of the
    distinct roots of charpoly(L_z) are the d_i^2.  Works over Q(t) as well.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        z = _random_central(center, rng)
        cp = charpoly(A.left_matrix(z))
        parts = squarefree_decomposition(cp)
        if sum(len(f) - 1 for f, _ in parts) != len(center):
            continue
        dims = []
        for f, mult in parts:
            dims.extend([_isqrt_exact(mult)] * (len(f) - 1))
        return sorted(dims, reverse=True)
    raise ContractViolation("no separating central element found")


def _minimal_polynomial(A, z):
    one = _algebra_one(A)
    powers = [one]
    while True:
        nxt = A.mul(z, powers[-1])
        coords = solve_in_span(powers, nxt)
        if coords is not None:
            # z^k = sum c_i z^i
            return [-c for c in coords] + [to_field(1)]
        powers.append(nxt)


def _algebra_one(A):
    """The unit, found by solving e a = a for the basis."""
    n = A.dim
    rows = []
    rhs = []
    for j in range(n):
        for out in range(n):
            row = [to_field(0)] * n
            for k in range(n):
                row[k] = A.consts[k][j].get(out, to_field(0))
            rows.append(row)
            rhs.append(to_field(1 if out == j else 0))
    aug = [r + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        raise ContractViolation("algebra has no unit")
    sol = [to_field(0)] * n
    for row, c in zip(red, pivots):
        sol[c] = row[n]
    return sol


def _poly_in(A, coeffs, z):
    one = _algebra_one(A)
    acc = [to_field(0)] * A.dim
    for c in reversed(coeffs):
        acc = A.mul(z, acc)
        if c != 0:
            acc = [a + c * b for a, b in zip(acc, one)]
    return acc


def blocks_by_idempotents(A, center, tries=8, seed=1):
    """Split the center over Q by a central element with rational eigenvalues.

    Returns (block sizes, unsplit blocks, idempotents).  Blocks whose central
    eigenvalues are irrational are reported unsplit with their center dimension.
    """
    rng = random.Random(seed)
    best = None
    for _ in range(tries):
        z = _random_central(center, rng)
        mp = _minimal_polynomial(A, z)
        if len(mp) - 1 != len(center):
            continue
        roots = rational_roots([Fraction(c) for c in mp])
        if any(m > 1 for m in roots.values()):
            continue
        idems = []
        dims = []
        for lam in roots:
            cof = udivmod(mp, [-lam, Fraction(1)])[0]
            val = sum(c * lam ** i for i, c in enumerate(cof))
            g = [c / val for c in cof]
            e = _poly_in(A, g, z)
            idems.append(e)
            dims.append(_isqrt_exact(rank(A.left_matrix(e))))
        unsplit = []
        rest_deg = len(mp) - 1 - len(roots)
        if rest_deg:
            one = _algebra_one(A)
            e_rest = one
            for e in idems:
                e_rest = [a - b for a, b in zip(e_rest, e)]
            unsplit.append((rest_deg, rank(A.left_matrix(e_rest))))
        best = (sorted(dims, reverse=True), unsplit, idems)
        break
    if best is None:
        raise ContractViolation("no central element with squarefree minimal polynomial found")
    return best


def semisimple_blocks(backend, x, delta):
    """Blocks of End([x]) modulo its tensor radical."""
    E = end_algebra(backend, x, delta)
    rad = radical(backend, x, x, delta)
    A = algebra_from_end(E)
    if rad.radical_dim:
        A, _, _ = quotient_algebra(A, [list(v) for v in rad.basis])
    center = A.center()
    if delta.symbolic:
        dims = blocks_by_multiplicity(A, center)
        return BlockReport(dims, len(center), A.dim, rad.radical_dim, "charpoly-multiplicity")
    dims, unsplit, idems = blocks_by_idempotents(A, center)
    check = blocks_by_multiplicity(A, center)
    rest = list(check)
    for d in dims:
        if d not in rest:
            raise ContractViolation(f"idempotent route {dims} disagrees with multiplicity route {check}")
        rest.remove(d)
    if len(rest) != sum(c for c, _ in unsplit):
        raise ContractViolation(f"idempotent route {dims} disagrees with multiplicity route {check}")
    return BlockReport(dims, len(center), A.dim, rad.radical_dim, "central-idempotents", unsplit, idems)


# ----- the simple-object census -----


def conjugacy_class_count(backend, y):
    """Number of conjugacy classes of Aut(y), by brute force when small."""
    try:
        auts = backend.automorphisms(y)
    except ResourceBoundError:
        return _class_count_formula(backend, y)
    seen = set()
    classes = 0
    inverse = {}
    for g in auts:
        for h in auts:
            if backend.compose(g, h) == backend.identity(y):
                inverse[g] = h
                break
    for g in auts:
        if g in seen:
            continue
        classes += 1
        for h in auts:
            seen.add(backend.compose(backend.compose(h, g), inverse[h]))
    return classes


def _class_count_formula(backend, y):
    n = backend.rank(y)
    if isinstance(backend, FinSetOp):
        return partition_count(n)
    return gl_class_count(n, backend.q)


def partition_count(n):
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            p[m] += p[m - k]
    return p[n]


def gl_class_count(n, q):
    """Coefficient of x^n in prod_{k>=1} (1 - x^k) / (1 - q x^k)."""
    series = [1] + [0] * n
    for k in range(1, n + 1):
        # multiply by (1 - x^k)
        series = [series[i] - (series[i - k] if i >= k else 0) for i in range(n + 1)]
        # multiply by 1 / (1 - q x^k) = sum_j q^j x^{jk}
        out = list(series)
        for i in range(k, n + 1):
            out[i] += q * out[i - k]
        series = out
    return series[n]


@dataclass
class CensusReport:
    predicted: int
    computed: int
    subquotients: list  # (object, number of irreducibles of its automorphism group)
    blocks: BlockReport

    @property
    def match(self):
        return self.predicted == self.computed


def simple_census(backend, x, delta):
    subq = []
    for y in range(backend.rank(x) + 1):
        if is_proper_subquotient(backend, y, x) != "not":
            subq.append((y, conjugacy_class_count(backend, y)))
    predicted = sum(c for _, c in subq)
    blocks = semisimple_blocks(backend, x, delta)
    return CensusReport(predicted, blocks.block_count, subq, blocks)
