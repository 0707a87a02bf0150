"""Exact scalars: rationals, multivariate polynomials over Q, rational functions.

Rationals are plain ``fractions.Fraction``.  Polynomials are sparse dicts from
exponent tuples to nonzero Fractions, with variables kept sorted by name and
unused variables pruned, so equal polynomials have equal representations.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Rational = Fraction


def _grlex_key(exps):
    return (sum(exps), exps)


class Poly:
    """Polynomial with rational coefficients in named variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        # terms: dict exps -> coefficient; normalized on construction
        vars = tuple(vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    e = tuple(e)
                    if len(e) != len(vars):
                        raise ValueError("exponent length does not match variables")
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.vars, self.terms = _prune(vars, clean)
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars, p.terms = _prune(vars, terms)
        p._hash = None
        return p

    @classmethod
    def var(cls, name="t"):
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def from_dense(cls, coeffs, var="t"):
        """Univariate polynomial from coefficients listed low degree first."""
        return cls._raw((var,), {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})

    # ----- inspection -----

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def constant_value(self):
        if self.vars:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def is_univariate(self):
        return len(self.vars) <= 1

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coeff(self):
        return self.leading_term()[1]

    def to_dense(self):
        """Coefficient list low degree first; only for univariate polynomials."""
        if len(self.vars) > 1:
            raise ValueError("to_dense needs a univariate polynomial")
        if not self.terms:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for e, c in self.terms.items():
            out[e[0] if e else 0] = c
        return out

    def main_var(self, default="t"):
        return self.vars[0] if self.vars else default

    # ----- arithmetic -----

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        vars, a, b = _align(self, other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly._raw((), {})
        vars, a, b = _align(self, other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = 1 / Fraction(other)
            return Poly._raw(self.vars, {e: c * inv for e, c in self.terms.items()})
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(other), self)
        return NotImplemented

    def exact_div(self, other):
        """Quotient self / other, raising ArithmeticError if it is not a polynomial."""
        other = _as_poly(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        if not self.terms:
            return self
        if len(set(self.vars) | set(other.vars)) == 1:
            q, r = divmod_univariate(self, other)
            if r.terms:
                raise ArithmeticError(f"{other} does not divide {self}")
            return q
        vars, rem, d = _align(self, other)
        rem = dict(rem)
        de, dc = max(d.items(), key=lambda kv: _grlex_key(kv[0]))
        quot = {}
        while rem:
            e, c = max(rem.items(), key=lambda kv: _grlex_key(kv[0]))
            shift = tuple(x - y for x, y in zip(e, de))
            if min(shift) < 0:
                raise ArithmeticError(f"{other} does not divide {self}")
            m = c / dc
            quot[shift] = m
            for e2, c2 in d.items():
                k = tuple(x + y for x, y in zip(e2, shift))
                v = rem.get(k, 0) - m * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly._raw(vars, quot)

    def derivative(self, var=None):
        if not self.vars:
            return Poly.const(0)
        var = var or self.vars[0]
        if var not in self.vars:
            return Poly.const(0)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Poly._raw(self.vars, out)

    def content(self):
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def subs(self, values):
        """Substitute values (scalars or polynomials) for variables; returns Poly."""
        result = Poly.const(0)
        for e, c in self.terms.items():
            term = Poly.const(c)
            rest = {}
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                if v in values:
                    term = term * (_as_poly(values[v]) ** k)
                else:
                    rest[v] = k
            if rest:
                rvars = tuple(sorted(rest))
                term = term * Poly._raw(rvars, {tuple(rest[v] for v in rvars): Fraction(1)})
            result = result + term
        return result

    def __call__(self, value):
        """Evaluate a univariate polynomial at a scalar."""
        if not self.vars:
            return self.constant_value()
        if len(self.vars) > 1:
            raise ValueError("use subs for multivariate polynomials")
        acc = Fraction(0)
        for c in reversed(self.to_dense()):
            acc = acc * value + c
        return acc

    # ----- comparison / hashing -----

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return not self.vars and self.terms.get((), 0) == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self.vars:
                self._hash = hash(self.terms.get((), Fraction(0)))
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt_rational(a)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)


def _prune(vars, terms):
    if not vars:
        return (), terms
    used = [False] * len(vars)
    for e in terms:
        for i, k in enumerate(e):
            if k:
                used[i] = True
    if all(used):
        return vars, terms
    keep = [i for i, u in enumerate(used) if u]
    nv = tuple(vars[i] for i in keep)
    out = {}
    for e, c in terms.items():
        out[tuple(e[i] for i in keep)] = c
    return nv, out


def _align(a, b):
    if a.vars == b.vars:
        return a.vars, a.terms, b.terms
    vars = tuple(sorted(set(a.vars) | set(b.vars)))

    def lift(p):
        idx = [vars.index(v) for v in p.vars]
        out = {}
        for e, c in p.terms.items():
            ne = [0] * len(vars)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return out

    return vars, lift(a), lift(b)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


def divmod_univariate(a, b):
    """Division with remainder for univariate polynomials in the same variable."""
    var = a.vars[0] if a.vars else (b.vars[0] if b.vars else "t")
    if a.vars and b.vars and a.vars != b.vars:
        raise ValueError("polynomials in different variables")
    q, r = udivmod(a.to_dense(), b.to_dense())
    return Poly.from_dense(q, var), Poly.from_dense(r, var)


def gcd_univariate(a, b):
    """Monic gcd of univariate polynomials (gcd(0, 0) = 0).

    Runs the primitive pseudo-remainder sequence on integer coefficients,
    which avoids the rational coefficient growth of plain Euclid.
    """
    var = a.main_var(b.main_var())
    x, y = _int_primitive(a.to_dense()), _int_primitive(b.to_dense())
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _int_primitive(_int_prem(x, y))
    if not x:
        return Poly.const(0)
    lc = x[-1]
    return Poly.from_dense([Fraction(c, lc) for c in x], var)


def _int_primitive(coeffs):
    coeffs = utrim(coeffs)
    if not coeffs:
        return []
    m = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * m) for c in coeffs]
    g = gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient lists (low degree first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        r = utrim(r)
    return r


# ----- dense univariate polynomials over any exact field -----
# Coefficient lists low degree first, entries supporting + - * / and == 0.


def utrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def udivmod(a, b):
    a = utrim(a)
    b = utrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    rem = list(a)
    lc = b[-1]
    quot = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c == 0:
            continue
        c = c / lc
        quot[k] = c
        for i, bc in enumerate(b):
            rem[k + i] = rem[k + i] - c * bc
    return utrim(quot), utrim(rem[: len(b) - 1])


def umonic(p):
    p = utrim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def ugcd(a, b):
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return utrim(out)


def usub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return utrim([x - y for x, y in zip(a, b)])


def uderiv(p):
    return utrim([c * i for i, c in enumerate(p)][1:])


def squarefree_decomposition(p):
    """Yun's algorithm in characteristic zero.

    Returns [(factor, multiplicity)] with monic squarefree, pairwise coprime
    factors whose product (with multiplicities) is monic(p).
    """
    p = umonic(p)
    if len(p) <= 1:
        return []
    out = []
    dp = uderiv(p)
    a = ugcd(p, dp)
    b = udivmod(p, a)[0]
    c = udivmod(dp, a)[0]
    d = usub(c, uderiv(b))
    i = 1
    while len(b) > 1:
        a = ugcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = udivmod(b, a)[0]
        c = udivmod(d, a)[0]
        d = usub(c, uderiv(b))
        i += 1
    return out


# ----- rational functions -----


class RatFunc:
    """Quotient num/den of polynomials, kept reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs polynomial or rational parts")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly.const(1)
            return
        if not den.is_constant():
            if len(set(num.vars) | set(den.vars)) == 1:
                g = gcd_univariate(num, den)
                if g.degree() > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            else:
                try:
                    num = num.exact_div(den)
                    den = Poly.const(1)
                except ArithmeticError:
                    pass
        lc = den.leading_coeff()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_value()

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(0)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(1) / (self ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return RatFunc._raw(_as_poly(x), Poly.const(1))
    return NotImplemented


# ----- generic helpers -----

T = Poly.var("t")


def scalar_kind(x):
    if isinstance(x, RatFunc):
        return "ratfunc"
    if isinstance(x, Poly):
        return "poly"
    if isinstance(x, (int, Fraction)):
        return "rational"
    raise TypeError(f"not an exact scalar: {x!r}")


def simplify(x):
    """Smallest representation: constants become Fractions, polynomial quotients Polys."""
    if isinstance(x, RatFunc):
        if x.den.is_constant():
            x = x.num / x.den.constant_value()
        else:
            return x
    if isinstance(x, Poly):
        return x.constant_value() if x.is_constant() else x
    return Fraction(x)


def to_field(x):
    """Promote to a field element: Fraction or RatFunc."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Poly):
        return RatFunc._raw(x, Poly.const(1))
    if isinstance(x, RatFunc):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def evaluate(x, values):
    """Substitute variable values into a scalar, returning a simplified scalar."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Poly):
        return simplify(x.subs(values))
    if isinstance(x, RatFunc):
        den = simplify(x.den.subs(values))
        if den == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes at {values}")
        return simplify(to_field(simplify(x.num.subs(values))) / den)
    raise TypeError(f"not an exact scalar: {x!r}")


def fmt_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt(x):
    """Canonical text for any exact scalar."""
    x = simplify(x) if not isinstance(x, int) else Fraction(x)
    if isinstance(x, Fraction):
        return fmt_rational(x)
    return str(x)


def parse_scalar(text, var="t"):
    """Parse "t", "3", "-7/2" or a polynomial such as "t^2 - 2*t + 1"."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    return _parse_poly(text, var)


def _parse_poly(text, var):
    import re

    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"cannot parse scalar {text!r}")
    out = Poly.const(0)
    x = Poly.var(var)
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        m = re.fullmatch(
            rf"(\d+(?:/\d+)?)?(\*)?({re.escape(var)}(?:\^(\d+))?)?", piece[1:]
        )
        if not m or (m.group(1) is None and m.group(3) is None):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        if m.group(2) and not (m.group(1) and m.group(3)):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        power = 0
        if m.group(3):
            power = int(m.group(4)) if m.group(4) else 1
        out = out + sign * coeff * x ** power
    return out


def rational_roots(p):
    """Rational roots of a nonzero univariate polynomial, with multiplicity.

    Accepts a Poly or a dense coefficient list of rationals.  Returns a dict
    root -> multiplicity, sorted by root.
    """
    coeffs = p.to_dense() if isinstance(p, Poly) else [Fraction(c) for c in utrim(p)]
    coeffs = utrim(coeffs)
    if not coeffs:
        raise ValueError("the zero polynomial has every value as a root")
    roots = {}
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots[Fraction(0)] = k
        coeffs = coeffs[k:]
    while len(coeffs) > 1:
        m = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * m) for c in coeffs]
        g = gcd(*ints)
        ints = [c // g for c in ints]
        found = None
        for num in _divisors(abs(ints[0])):
            for den in _divisors(abs(ints[-1])):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if _horner(ints, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        coeffs = udivmod(coeffs, [-found, Fraction(1)])[0]
    return dict(sorted(roots.items()))


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factor_str(p):
    """Factor a univariate polynomial over its rational roots, e.g. "t^2*(t-1)"."""
    p = simplify(p)
    if isinstance(p, Fraction):
        return fmt_rational(p)
    if not p.is_univariate():
        return f"({p})"
    var = p.vars[0]
    roots = rational_roots(p)
    rest = p.to_dense()
    for r, m in roots.items():
        for _ in range(m):
            rest = udivmod(rest, [-r, Fraction(1)])[0]
    lead = rest[-1]
    rest = [c / lead for c in rest]
    parts = []
    for r, m in roots.items():
        if r == 0:
            base = var
        else:
            sign = "-" if r > 0 else "+"
            base = f"({var}{sign}{fmt_rational(abs(r))})"
        parts.append(base if m == 1 else f"{base}^{m}")
    if len(rest) > 1:
        parts.append(f"({Poly.from_dense(rest, var)})")
    if lead != 1 or not parts:
        if lead == -1 and parts:
            parts[0] = "-" + parts[0]
        else:
            parts.insert(0, fmt_rational(lead))
    return "*".join(parts)
