"""Multivariate polynomials over the rationals and Groebner machinery.

Provides monomial orders (lex, graded lex, graded reverse lex), Buchberger's
algorithm with inter-reduction, normal forms, and the finite-dimensional
truncated quotient algebras k[x1..xr]/(ideal + m^n) with their monomial
bases and lazy structure constants.

The ideals handled here are small (a binomial plus one degree slice of the
maximal ideal), so the plain Buchberger loop with the coprime-lead criterion
is entirely adequate; no fraction-free or modular tricks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # exponent vectors, one entry per variable

_ZERO = Fraction(0)
_ONE = Fraction(1)


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mon_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mon_deg(a: Monomial) -> int:
    return sum(a)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree exactly d."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        out.append(tuple(exps))
    return out


class MonomialOrder:
    """Total monomial order: 'lex', 'grlex' or 'grevlex', with an optional
    variable permutation listing the variables from largest to smallest."""

    def __init__(self, kind: str = "grevlex", perm: Sequence[int] | None = None):
        if kind not in ("lex", "grlex", "grevlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.perm = tuple(perm) if perm is not None else None

    def _permuted(self, m: Monomial) -> tuple:
        if self.perm is None:
            return tuple(m)
        return tuple(m[i] for i in self.perm)

    def key(self, m: Monomial):
        """Sort key: larger key = larger monomial."""
        p = self._permuted(m)
        if self.kind == "lex":
            return p
        if self.kind == "grlex":
            return (sum(p), p)
        # grevlex: compare degree, then the *last* differing exponent,
        # smaller exponent wins; encoded by reversing and negating.
        return (sum(p), tuple(-e for e in reversed(p)))


GREVLEX = MonomialOrder("grevlex")


class Polynomial:
    """Immutable-by-convention polynomial: dict of Monomial -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping):
        self.nvars = nvars
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c:
                if len(m) != nvars:
                    raise ValueError("monomial arity mismatch")
                clean[tuple(m)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars, {})

    @staticmethod
    def constant(nvars: int, c) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: c})

    @staticmethod
    def monomial(exps: Monomial, coeff=1) -> "Polynomial":
        return Polynomial(len(exps), {tuple(exps): coeff})

    @staticmethod
    def variable(i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return Polynomial(nvars, {tuple(e): 1})

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            n = out.get(m, _ZERO) + c
            if n:
                out[m] = n
            else:
                out.pop(m, None)
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mon_mul(m1, m2)
                    n = out.get(m, _ZERO) + c1 * c2
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
            return Polynomial(self.nvars, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, {m: c * x for m, x in self.terms.items()})

    def mul_monomial(self, mon: Monomial, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        return Polynomial(self.nvars,
                          {mon_mul(m, mon): coeff * c for m, c in self.terms.items()})

    # -- inspection ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((mon_deg(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {mon_deg(m) for m in self.terms}
        return len(degs) <= 1

    def leading(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[m]
            mon = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                           for i, e in enumerate(m) if e)
            if not mon:
                bits.append(str(c))
            elif c == 1:
                bits.append(mon)
            elif c == -1:
                bits.append(f"-{mon}")
            else:
                bits.append(f"{c}*{mon}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s


def reduce_full(p: Polynomial, gens: Sequence[Polynomial],
                order: MonomialOrder = GREVLEX) -> Polynomial:
    """Full normal form of p modulo gens: no remaining term is divisible by
    any leading monomial of gens.  Terminates because each step replaces a
    term by strictly smaller ones in a well-founded order."""
    prepped = []
    for g in gens:
        if g.is_zero():
            continue
        lm, lc = g.leading(order)
        prepped.append((g, lm, lc))
    work = dict(p.terms)
    out: dict = {}
    while work:
        mon = max(work, key=order.key)
        c = work.pop(mon)
        if not c:
            continue
        for g, lm, lc in prepped:
            q = mon_div(mon, lm)
            if q is None:
                continue
            factor = c / lc
            for m2, c2 in g.terms.items():
                if m2 == lm:
                    continue
                mm = mon_mul(q, m2)
                n = work.get(mm, _ZERO) - factor * c2
                if n:
                    work[mm] = n
                else:
                    work.pop(mm, None)
            break
        else:
            out[mon] = c
    return Polynomial(p.nvars, out)


def spoly(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = mon_lcm(fm, gm)
    return (f.mul_monomial(mon_div(l, fm), Fraction(1, 1) / fc)
            - g.mul_monomial(mon_div(l, gm), Fraction(1, 1) / gc))


class GroebnerBasis:
    """Reduced Groebner basis: monic elements, no term of any element
    divisible by the leading monomial of another."""

    def __init__(self, order: MonomialOrder, elements: Sequence[Polynomial]):
        self.order = order
        self.elements = list(elements)
        self.leads = [g.leading(order)[0] for g in self.elements]

    def normal_form(self, p: Polynomial) -> Polynomial:
        return reduce_full(p, self.elements, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def groebner(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Buchberger with the coprime-lead criterion, then inter-reduction."""
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        raise ValueError("need at least one nonzero generator")
    nvars = basis[0].nvars
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        li = basis[i].leading(order)[0]
        lj = basis[j].leading(order)[0]
        if mon_mul(li, lj) == mon_lcm(li, lj):  # coprime leads: S-poly reduces to 0
            continue
        r = reduce_full(spoly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r)
            k = len(basis) - 1
            pairs.extend((t, k) for t in range(k))
    # inter-reduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [basis[t] for t in range(len(basis)) if t != i and not basis[t].is_zero()]
            r = reduce_full(basis[i], others, order)
            if r.terms != basis[i].terms:
                basis[i] = r
                changed = True
        basis = [g for g in basis if not g.is_zero()]
    monic = []
    for g in basis:
        _, lc = g.leading(order)
        monic.append(g.scale(Fraction(1, 1) / lc))
    monic.sort(key=lambda g: order.key(g.leading(order)[0]))
    return GroebnerBasis(order, monic)


class FiniteAlgebra:
    """Finite-dimensional quotient k[x1..xr]/I with a standard-monomial basis.

    Normal forms of monomials are cached; products of basis elements (the
    structure constants) are therefore computed lazily on first use.
    """

    def __init__(self, nvars: int, gb: GroebnerBasis, level: int | None = None):
        self.nvars = nvars
        self.gb = gb
        self.level = level
        leads = gb.leads
        maxdeg = level if level is not None else self._standard_degree_bound()
        basis = []
        for d in range(maxdeg):
            for m in monomials_of_degree(nvars, d):
                if not any(mon_div(m, lm) is not None for lm in leads):
                    basis.append(m)
        basis.sort(key=gb.order.key)
        self.basis = basis
        self.index = {m: i for i, m in enumerate(basis)}
        self.grading = {m: mon_deg(m) for m in basis}
        self._nf_cache: dict = {}

    def _standard_degree_bound(self) -> int:
        # without an explicit level, require a monomial power bound per variable
        bound = 0
        for i in range(self.nvars):
            pure = [lm[i] for lm in self.gb.leads
                    if all(e == 0 for j, e in enumerate(lm) if j != i)]
            if not pure:
                raise ValueError("quotient not visibly finite-dimensional; pass level")
            bound += min(pure)
        return bound

    @property
    def dim(self) -> int:
        return len(self.basis)

    def nf_mon(self, mon: Monomial) -> dict:
        """Normal form of a monomial as {basis monomial: coefficient}."""
        got = self._nf_cache.get(mon)
        if got is None:
            p = self.gb.normal_form(Polynomial.monomial(mon))
            got = dict(p.terms)
            self._nf_cache[mon] = got
        return got

    def nf_terms(self, terms: Mapping) -> dict:
        """Normal form of a term dict, as {basis monomial: coefficient}."""
        out: dict = {}
        for m, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            for bm, bc in self.nf_mon(m).items():
                n = out.get(bm, _ZERO) + c * bc
                if n:
                    out[bm] = n
                else:
                    out.pop(bm, None)
        return out

    def mult(self, m1: Monomial, m2: Monomial) -> dict:
        """Product of two basis monomials in the algebra."""
        return self.nf_mon(mon_mul(m1, m2))

    def dims_by_degree(self) -> list[int]:
        top = max((mon_deg(m) for m in self.basis), default=-1)
        out = [0] * (top + 1)
        for m in self.basis:
            out[mon_deg(m)] += 1
        return out

    def degree_slice(self, d: int) -> list[Monomial]:
        return [m for m in self.basis if mon_deg(m) == d]

    # structural sanity used by the invariant suite
    def verify_commutative(self) -> bool:
        for m1, m2 in itertools.combinations(self.basis, 2):
            if self.mult(m1, m2) != self.mult(m2, m1):
                return False
        return True

    def verify_associative(self, max_triples: int | None = None) -> bool:
        triples = itertools.combinations_with_replacement(self.basis, 3)
        if max_triples is not None:
            triples = itertools.islice(triples, max_triples)
        for a, b, c in triples:
            left = self.nf_terms({mon_mul(m, c): x for m, x in self.mult(a, b).items()})
            right = self.nf_terms({mon_mul(a, m): x for m, x in self.mult(b, c).items()})
            if left != right:
                return False
        return True


def truncated_quotient(ideal_gens: Sequence[Polynomial], n: int,
                       order: MonomialOrder = GREVLEX,
                       nvars: int | None = None) -> FiniteAlgebra:
    """The algebra k[x1..xr]/(ideal_gens + m^n), m the irrelevant ideal.

    Basis: standard monomials, necessarily of degree < n.  ``nvars`` is only
    needed when ideal_gens is empty (pure truncation of a polynomial ring).
    """
    if n < 1:
        raise ValueError("truncation level must be >= 1")
    if ideal_gens:
        nvars = ideal_gens[0].nvars
    elif nvars is None:
        raise ValueError("empty ideal needs an explicit nvars")
    gens = [g for g in ideal_gens if not g.is_zero()]
    gens.extend(Polynomial.monomial(m) for m in monomials_of_degree(nvars, n))
    gb = groebner(gens, order)
    return FiniteAlgebra(nvars, gb, level=n)


def hilbert_function(alg: FiniteAlgebra) -> list[int]:
    """Basis counts per total degree; requires a homogeneous ideal."""
    if not all(g.is_homogeneous() for g in alg.gb):
        raise ValueError("hilbert_function requires a homogeneous ideal")
    return alg.dims_by_degree()
