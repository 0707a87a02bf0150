"""Degree functions: scalars attached to surjections, multiplicative and pullback-stable.

The closed families are

* ``setop``   t^(|B| - |e(A)|) on FinSetOp (e stored as the set injection A -> B),
* ``vect``    t^(dim ker e) on FinVectFq,
* ``length``  product over simple factors s of t_s^(multiplicity of s in ker e);
              on FinVectFq there is a single simple object so this is ``vect``
              with the parameter named after F_q,
* ``trivial`` the constant 1,
* ``table``   user values keyed by (rank source, rank target); only usable
              after validate_degree_axioms passes.
"""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field

from . import fq
from .backend import FinSetOp, FinVectFq
from .config import ContractViolation, SchemaError
from .scalars import T, evaluate, simplify

FAMILIES = ("setop", "vect", "length", "trivial", "table")


@dataclass(frozen=True)
class DegreeFunction:
    family: str
    t: object = T  # the parameter: a Poly (symbolic) or a Fraction
    table: tuple = ()  # sorted ((source rank, target rank), value) pairs for ``table``
    validated: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SchemaError(f"unknown degree family {self.family!r}", "/degree/family")

    @property
    def symbolic(self):
        if self.family == "table":
            return any(not _is_number(v) for _, v in self.table)
        if self.family == "trivial":
            return False
        return not _is_number(self.t)

    def at(self, value):
        """Specialize the symbolic parameter t to a rational value."""
        if self.family == "table":
            vals = tuple((k, evaluate(v, {"t": value})) for k, v in self.table)
            return DegreeFunction("table", self.t, vals, self.validated)
        return DegreeFunction(self.family, evaluate(self.t, {"t": value}))

    def value(self, backend, e):
        if not backend.is_surjective(e):
            raise ContractViolation(f"degree of a non-surjective morphism {e}")
        return self.raw_value(backend, e)

    __call__ = value

    def raw_value(self, backend, e):
        fam = self.family
        if fam == "trivial":
            return simplify(1)
        if fam == "table":
            if not self.validated:
                raise ContractViolation("table degree used before validate_degree_axioms passed")
            key = (backend.rank(e.source), backend.rank(e.target))
            for k, v in self.table:
                if k == key:
                    return v
            raise ContractViolation(f"degree table has no entry for {key}")
        if fam == "setop":
            if not isinstance(backend, FinSetOp):
                raise ContractViolation("setop degree needs the FinSetOp backend")
            missed = e.source - len(set(e.data))
            return simplify(self.t ** missed)
        if fam in ("vect", "length"):
            if not isinstance(backend, FinVectFq):
                raise ContractViolation(f"{fam} degree needs the FinVectFq backend")
            kernel_dim = e.source - fq.rank(e.data, e.source, backend.q)
            return simplify(self.t ** kernel_dim)
        raise AssertionError(fam)


def _is_number(v):
    return isinstance(simplify(v), Fraction)


def table_degree(values, t=T):
    """A user table {(source rank, target rank): value}; must be validated before use.

    Validating up to max_rank evaluates pullbacks, so the table needs entries
    for sources of rank up to 2 * max_rank.
    """
    items = tuple(sorted((tuple(k), simplify(v)) for k, v in values.items()))
    return DegreeFunction("table", t, items)


def natural_degree(backend, t=T):
    return DegreeFunction("setop" if isinstance(backend, FinSetOp) else "vect", t)


@dataclass
class DegreeReport:
    passed: bool
    checked: dict = field(default_factory=dict)  # axiom -> number of instances checked
    failures: list = field(default_factory=list)  # (axiom, description)


def _surjections(backend, x, exhaustive):
    if exhaustive:
        out = []
        for y in range(x + 1):
            out.extend(f for f in backend.morphisms(x, y) if backend.is_surjective(f))
        return out
    return backend.quotients(x)


def validate_degree_axioms(delta, backend, max_rank=3, exhaustive=True, samples=200, seed=0):
    """Check identity degree 1, pullback stability and multiplicativity.

    Exhaustive mode runs every instance with objects of rank <= max_rank;
    otherwise ``samples`` random instances are drawn with a fixed seed.
    """
    rng = random.Random(seed)
    probe = delta if delta.family != "table" else DegreeFunction("table", delta.t, delta.table, True)
    report = DegreeReport(True, {"D1": 0, "D2": 0, "D3": 0})

    def fail(axiom, msg):
        report.passed = False
        report.failures.append((axiom, msg))

    for x in range(max_rank + 1):
        report.checked["D1"] += 1
        try:
            v = probe(backend, backend.identity(x))
        except ContractViolation as exc:
            fail("D1", str(exc))
            continue
        if v != 1:
            fail("D1", f"degree of identity on {backend.describe(x)} is {v}")

    squares = []
    for x in range(max_rank + 1):
        for e in _surjections(backend, x, exhaustive):
            for z in range(max_rank + 1):
                for f in backend.morphisms(z, e.target):
                    squares.append((e, f))
    if not exhaustive and len(squares) > samples:
        squares = rng.sample(squares, samples)
    for e, f in squares:
        report.checked["D2"] += 1
        _, e_bar, _ = backend.pullback(f, e)
        if not backend.is_surjective(e_bar):
            fail("D2", f"pullback of {e} along {f} is not surjective")
            continue
        try:
            a, b = probe(backend, e_bar), probe(backend, e)
        except ContractViolation as exc:
            fail("D2", str(exc))
            continue
        if a != b:
            fail("D2", f"degree {a} of pullback differs from {b} for {e} along {f}")

    chains = []
    for x in range(max_rank + 1):
        for e1 in _surjections(backend, x, exhaustive):
            for e2 in _surjections(backend, e1.target, exhaustive):
                chains.append((e1, e2))
    if not exhaustive and len(chains) > samples:
        chains = rng.sample(chains, samples)
    for e1, e2 in chains:
        report.checked["D3"] += 1
        try:
            a = probe(backend, backend.compose(e2, e1))
            b = probe(backend, e2) * probe(backend, e1)
        except ContractViolation as exc:
            fail("D3", str(exc))
            continue
        if a != b:
            fail("D3", f"degree of composite {a} differs from product {b} for {e1}, {e2}")
    return report


def validated(delta, backend, **kw):
    """Return delta marked usable, or raise ContractViolation with the first failure."""
    report = validate_degree_axioms(delta, backend, **kw)
    if not report.passed:
        axiom, msg = report.failures[0]
        raise ContractViolation(f"degree function fails {axiom}: {msg}")
    if delta.family == "table":
        return DegreeFunction("table", delta.t, delta.table, True)
    return delta


# ----- composition series and the rank / degree correspondence on FinVectFq -----


def composition_factors(backend, x, flag="standard"):
    """Dimensions of the factors of a maximal chain of subspaces of F_q^x.

    Two flags are available (coordinate order and reversed order) so that the
    Jordan-Hoelder multiset can be compared across series.
    """
    if not isinstance(backend, FinVectFq):
        raise ContractViolation("composition series are computed for FinVectFq")
    order = list(range(x)) if flag == "standard" else list(range(x - 1, -1, -1))
    factors = []
    prev = ()
    for k in range(1, x + 1):
        rows = [tuple(1 if j == order[i] else 0 for j in range(x)) for i in range(k)]
        cur, _ = fq.rref(rows, x, backend.q)
        factor_dim = len(cur) - len(prev)
        # the factor is simple: its subspace lattice has exactly two elements
        if len(backend.subobjects(factor_dim)) != 2:
            raise ContractViolation("factor in the series is not simple")
        factors.append(factor_dim)
        prev = cur
    return sorted(factors)


@dataclass(frozen=True)
class RankFunction:
    """A function of objects multiplicative on short exact sequences (here: of dims)."""

    values: tuple  # values[d] for d = 0..max_dim

    def __call__(self, d):
        return self.values[d]


def rank_from_degree(delta, backend, max_dim):
    """rho(x) = delta(x ->> 0)."""
    return RankFunction(tuple(delta(backend, backend.to_terminal(d)) for d in range(max_dim + 1)))


def degree_from_rank(rho, max_dim):
    """delta(e) = rho(ker e), as a table keyed by (dim source, dim target)."""
    vals = {}
    for a in range(max_dim + 1):
        for b in range(a + 1):
            vals[(a, b)] = rho(a - b)
    return table_degree(vals)
