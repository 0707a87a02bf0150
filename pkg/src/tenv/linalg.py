"""Dense exact matrices: determinants, kernels, characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Poly, RatFunc, gcd_univariate, scalar_kind, to_field, utrim

_KIND_ORDER = {"rational": 0, "poly": 1, "ratfunc": 2}


def _widen(x, kind):
    if kind == "rational":
        return Fraction(x)
    if kind == "poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)
    return to_field(x)


def common_kind(values):
    kind = "rational"
    for v in values:
        k = scalar_kind(v)
        if _KIND_ORDER[k] > _KIND_ORDER[kind]:
            kind = k
    return kind


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major matrix over one scalar kind (numbers are widened on construction)."""

    rows: int
    cols: int
    entries: tuple
    kind: str = "rational"

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        flat = [x for r in rows for x in r]
        kind = common_kind(flat)
        return cls(len(rows), cols, tuple(_widen(x, kind) for x in flat), kind)

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r, c):
        return cls.from_rows([[0] * c for _ in range(r)], c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return DenseMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            line = []
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    a = r[k]
                    if a != 0:
                        b = other.entries[k * other.cols + j]
                        if b != 0:
                            acc = acc + a * b
                line.append(acc)
            out.append(line)
        return DenseMatrix.from_rows(out, other.cols)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return DenseMatrix.from_rows(
            [[self[i, j] + other[i, j] for j in range(self.cols)] for i in range(self.rows)],
            self.cols,
        )

    def scale(self, c):
        return DenseMatrix.from_rows(
            [[c * x for x in self.row(i)] for i in range(self.rows)], self.cols
        )

    def kron(self, other):
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append(
                    [self[i, j] * other[k, l] for j in range(self.cols) for l in range(other.cols)]
                )
        return DenseMatrix.from_rows(out, self.cols * other.cols)

    def trace(self):
        acc = 0
        for i in range(min(self.rows, self.cols)):
            acc = acc + self[i, i]
        return acc

    def map(self, fn):
        return DenseMatrix.from_rows([[fn(x) for x in self.row(i)] for i in range(self.rows)], self.cols)

    def is_zero(self):
        return all(x == 0 for x in self.entries)


def _as_rows(m):
    if isinstance(m, DenseMatrix):
        return m.to_rows(), m.cols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def determinant(m):
    """Exact determinant.

    Rational and polynomial entries use Bareiss elimination, where every
    division is exact; rational-function entries use Gaussian elimination.
    """
    rows, n = _as_rows(m)
    if len(rows) != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    kind = common_kind(x for r in rows for x in r)
    a = [[_widen(x, kind) for x in r] for r in rows]
    if kind == "ratfunc":
        return _det_field(a)
    sign = 1
    prev = Fraction(1) if kind == "rational" else Poly.const(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _zero_like(kind)
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = p * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(val, prev, kind)
            a[i][k] = _zero_like(kind)
        prev = p
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _zero_like(kind):
    return Fraction(0) if kind == "rational" else (Poly.const(0) if kind == "poly" else RatFunc(0))


def _exact_div(val, d, kind):
    if kind == "rational":
        return val / d
    return val.exact_div(d)


def _det_field(a):
    n = len(a)
    det = to_field(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return to_field(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        p = a[k][k]
        det = det * p
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / p
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    return det


def rref(m):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    rows, ncols = _as_rows(m)
    a = [[to_field(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        if p != 1:
            a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m):
    rows, ncols = _as_rows(m)
    kind = common_kind(x for r in rows for x in r)
    if kind == "rational":
        return len(rref(rows)[1])
    return len(_fraction_free_echelon(_to_poly_rows(rows), ncols)[1])


def _to_poly_rows(rows):
    """Clear denominators row by row so that every entry is a polynomial."""
    out = []
    for r in rows:
        r = [to_field(x) for x in r]
        if all(x == 0 for x in r):
            continue
        den = Poly.const(1)
        for x in r:
            if isinstance(x, RatFunc) and not x.den == 1:
                den = (den * x.den).exact_div(_poly_gcd(den, x.den))
        line = []
        for x in r:
            if isinstance(x, RatFunc):
                line.append((x.num * den).exact_div(x.den))
            else:
                line.append(Poly.const(x) * den)
        out.append(line)
    return out


def _poly_gcd(a, b):
    if len(set(a.vars) | set(b.vars)) <= 1:
        return gcd_univariate(a, b)
    return Poly.const(1)


def _fraction_free_echelon(rows, ncols):
    """Bareiss-style echelon form with exact polynomial divisions."""
    a = [list(r) for r in rows]
    seen = set()
    uniq = []
    for r in a:
        key = tuple(r)
        if key not in seen and any(x != 0 for x in r):
            seen.add(key)
            uniq.append(r)
    a = uniq
    prev = Poly.const(1)
    pivots = []
    r = 0
    for c in range(ncols):
        cands = [i for i in range(r, len(a)) if a[i][c] != 0]
        if not cands:
            continue
        # prefer the simplest pivot to keep degrees low
        piv = min(cands, key=lambda i: (a[i][c].degree(), len(a[i][c].terms)))
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            lead = a[i][c]
            if lead == 0:
                if prev != 1:
                    a[i] = [x if j <= c else (p * x).exact_div(prev) for j, x in enumerate(a[i])]
                else:
                    a[i] = [x if j <= c else p * x for j, x in enumerate(a[i])]
                continue
            new = []
            for j in range(ncols):
                if j <= c:
                    new.append(Poly.const(0) if j == c else a[i][j])
                    continue
                val = p * a[i][j] - lead * a[r][j]
                new.append(val.exact_div(prev) if prev != 1 else val)
            a[i] = new
        prev = p
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(m):
    """Basis of the right kernel {v : M v = 0}, echelonized with leading entries 1.

    Entries may be rationals, polynomials or rational functions.  Over
    function fields the elimination is done fraction-free on polynomials and
    only the back substitution uses rational-function arithmetic.
    """
    rows, ncols = _as_rows(m)
    kind = common_kind(x for r in rows for x in r)
    if kind == "rational":
        red, pivots = rref(rows)
    else:
        ech, pivots = _fraction_free_echelon(_to_poly_rows(rows), ncols)
        red = [[to_field(x) for x in r] for r in ech]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [to_field(0)] * ncols
        v[f] = to_field(1)
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            s = to_field(0)
            row = red[i]
            for j in range(c + 1, ncols):
                if row[j] != 0 and v[j] != 0:
                    s = s + row[j] * v[j]
            v[c] = -s / row[c] if s != 0 else to_field(0)
        basis.append(v)
    if not basis:
        return []
    ech, _ = rref(basis)
    return [tuple(r) for r in ech]


def solve_in_span(basis, target):
    """Coordinates of target in the span of basis vectors, or None."""
    n = len(basis)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    cols = len(target)
    aug = [[basis[j][i] for j in range(n)] + [target[i]] for i in range(cols)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    sol = [to_field(0)] * n
    for row, c in zip(red, pivots):
        sol[c] = row[n]
    return sol


def charpoly(m):
    """Characteristic polynomial det(X I - M) as coefficients, low degree first.

    Uses reduction to upper Hessenberg form, which needs only field arithmetic.
    """
    rows, n = _as_rows(m)
    if len(rows) != n:
        raise ValueError("charpoly of a non-square matrix")
    h = [[to_field(x) for x in r] for r in rows]
    for mm in range(1, n - 1):
        i = next((i for i in range(mm, n) if h[i][mm - 1] != 0), None)
        if i is None:
            continue
        if i != mm:
            h[i], h[mm] = h[mm], h[i]
            for r in h:
                r[i], r[mm] = r[mm], r[i]
        piv = h[mm][mm - 1]
        for i in range(mm + 1, n):
            if h[i][mm - 1] == 0:
                continue
            u = h[i][mm - 1] / piv
            for j in range(n):
                if h[mm][j] != 0:
                    h[i][j] = h[i][j] - u * h[mm][j]
            for r in h:
                if r[i] != 0:
                    r[mm] = r[mm] + u * r[i]
    one = to_field(1)
    polys = [[one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (X - h[k-1][k-1]) * prev
        p = [to_field(0)] + list(prev)
        d = h[k - 1][k - 1]
        for i, c in enumerate(prev):
            p[i] = p[i] - d * c
        t = one
        for i in range(1, k):
            t = t * h[k - i][k - i - 1]
            if t == 0:
                break
            coef = t * h[k - i - 1][k - 1]
            if coef != 0:
                for j, c in enumerate(polys[k - i - 1]):
                    p[j] = p[j] - coef * c
        polys.append(p)
    return utrim(polys[n]) if n else [one]
