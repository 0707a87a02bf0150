"""Linear algebra over a prime field F_q, on tuples of ints in range(q)."""
from __future__ import annotations

from itertools import combinations, product


def is_prime(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def rref(rows, ncols, q):
    """Reduced row echelon form of a list of vectors; returns (rows, pivots)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] % q), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], q - 2, q)
        a[r] = [(x * inv) % q for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] % q:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return tuple(tuple(x % q for x in row) for row in a[:r]), pivots


def rank(rows, ncols, q):
    return len(rref(rows, ncols, q)[1])


def nullspace(rows, ncols, q):
    """Basis (in RREF) of {v : rows . v = 0}."""
    red, pivots = rref(rows, ncols, q)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % q
        basis.append(v)
    return rref(basis, ncols, q)[0]


def matmul(a, b, inner, cols, q):
    """Product of an (r x inner) and an (inner x cols) matrix given as row tuples."""
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(inner)) % q for j in range(cols))
        for row in a
    )


def transpose(a, ncols):
    return tuple(tuple(row[j] for row in a) for j in range(ncols))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def all_rref(k, d, q):
    """Every k x d matrix in reduced row echelon form with k pivots."""
    out = []
    for pivots in combinations(range(d), k):
        free_slots = []
        for i, p in enumerate(pivots):
            for c in range(p + 1, d):
                if c not in pivots:
                    free_slots.append((i, c))
        for vals in product(range(q), repeat=len(free_slots)):
            m = [[0] * d for _ in range(k)]
            for i, p in enumerate(pivots):
                m[i][p] = 1
            for (i, c), v in zip(free_slots, vals):
                m[i][c] = v
            out.append(tuple(tuple(r) for r in m))
    return out


def gaussian_binomial(d, k, q):
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gl_order(d, q):
    out = 1
    for i in range(d):
        out *= q ** d - q ** i
    return out
