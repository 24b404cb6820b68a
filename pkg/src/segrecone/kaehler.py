"""Kahler differentials and de Rham complexes of truncated cone algebras.

For a finite-dimensional quotient S = k[x1..xr]/I the module of m-forms is

    Omega^m_S = Lambda^m(free module on dx_i) (x) S  /  < u * dg ^ eta >

over ideal generators g, standard monomials u and free wedge frames eta.
Basis labels are (monomial, wedge) pairs, so every exactness failure prints
a readable witness.  The de Rham d is computed on monomial lifts; the
construction verifies d(relations) stays inside relations, which is exactly
well-definedness of the induced map on the quotient.

Two models are used downstream, built over the same algebra Q_n:

* the full module Omega^m_{Q_n}: relations from the whole truncation ideal;
* the tensor model Omega^m_Q (x) Q_n: relations from the cone binomial only.

The top wedge (m = 4) of the tensor model is one-dimensional at every level,
spanned by w = dx1 dx2 dx3 dx4 with x_i * w = 0; that class is the
non-vanishing witness carried through the K-theory assembly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import EngineError
from .linalg import (LinearMap, QuotientSpace, VectorSpaceWithBasis,
                     induced_quotient_map, vec_add)
from .monoid import cone_relation
from .polyring import (FiniteAlgebra, Polynomial, mon_deg, mon_mul,
                       truncated_quotient)
from .verdict import Verdict

_ZERO = Fraction(0)


def _partials(g: Polynomial) -> dict:
    """i -> dg/dx_i (nonzero ones only)."""
    out = {}
    for i in range(g.nvars):
        terms = {}
        for m, c in g.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                terms[tuple(mm)] = c * m[i]
        if terms:
            out[i] = Polynomial(g.nvars, terms)
    return out


def _wedge_insert(i: int, wedge: tuple):
    """Sort dx_i into dx_wedge: (sign, new_wedge), sign 0 when i is present."""
    if i in wedge:
        return 0, None
    k = sum(1 for j in wedge if j < i)
    return (-1) ** k, tuple(sorted(wedge + (i,)))


@dataclass(frozen=True)
class AlgebraPresentation:
    """k[x1..x_nvars]/(ideal_gens + m^level): the data Omega is built from."""
    nvars: int
    ideal_gens: tuple
    level: int


class DifferentialModule:
    """Tower Omega^0..Omega^up_to of a finite algebra with exact d maps."""

    def __init__(self, alg: FiniteAlgebra, rel_gens: Sequence[Polynomial],
                 up_to: int = 5, verify: bool = True):
        self.alg = alg
        self.up_to = up_to
        self.rel_gens = [g for g in rel_gens if not g.is_zero()]
        nv = alg.nvars
        self._ambient: list[VectorSpaceWithBasis] = []
        self._rels: list[list] = []
        for m in range(up_to + 1):
            wedges = list(itertools.combinations(range(nv), m))
            labels = [(mon, w) for w in wedges for mon in alg.basis]
            space = VectorSpaceWithBasis(labels)
            self._ambient.append(space)
            self._rels.append(self._relation_vectors(space, m))
        self._quot = [QuotientSpace(self._ambient[m], self._rels[m])
                      for m in range(up_to + 1)]
        if verify:
            self._verify_d_descends()
        self._d = [induced_quotient_map(self._quot[m], self._quot[m + 1],
                                        lambda v, m=m: self.ambient_d(m, v))
                   for m in range(up_to)]

    # -- construction internals ---------------------------------------
    def _relation_vectors(self, space: VectorSpaceWithBasis, m: int) -> list:
        if m == 0:
            return []
        alg = self.alg
        level = alg.level if alg.level is not None else 1 << 30
        etas = list(itertools.combinations(range(alg.nvars), m - 1))
        rels = []
        for g in self.rel_gens:
            parts = _partials(g)
            homogeneous = g.is_homogeneous()
            gdeg = g.total_degree()
            for u in alg.basis:
                if homogeneous and mon_deg(u) + gdeg - 1 >= level:
                    continue  # every coefficient of u*dg is truncated away
                per_i = {}
                for i, pg in parts.items():
                    nf = alg.nf_terms({mon_mul(u, mm): c
                                       for mm, c in pg.terms.items()})
                    if nf:
                        per_i[i] = nf
                if not per_i:
                    continue
                for eta in etas:
                    vec: dict = {}
                    for i, nf in per_i.items():
                        sign, nw = _wedge_insert(i, eta)
                        if not sign:
                            continue
                        for bm, bc in nf.items():
                            idx = space.index[(bm, nw)]
                            n = vec.get(idx, _ZERO) + sign * bc
                            if n:
                                vec[idx] = n
                            else:
                                vec.pop(idx, None)
                    if vec:
                        rels.append(vec)
        return rels

    def _verify_d_descends(self) -> None:
        for m in range(self.up_to):
            target = self._quot[m + 1]
            for r in self._rels[m]:
                if not target.is_zero_class(self.ambient_d(m, r)):
                    raise EngineError(
                        f"de Rham map does not descend on Omega^{m}")

    # -- spaces ---------------------------------------------------------
    def ambient(self, m: int) -> VectorSpaceWithBasis:
        return self._ambient[m]

    def rels(self, m: int) -> list:
        return self._rels[m]

    def quot(self, m: int) -> QuotientSpace:
        return self._quot[m]

    def space(self, m: int) -> VectorSpaceWithBasis:
        return self._quot[m].space()

    def dim(self, m: int) -> int:
        return self._quot[m].dim

    def d(self, m: int) -> LinearMap:
        return self._d[m]

    # -- ambient-level operators ----------------------------------------
    def ambient_d(self, m: int, vec: dict) -> dict:
        """d on Lambda^m (x) S via monomial lifts, as an ambient (m+1)-vector."""
        src = self._ambient[m]
        dst = self._ambient[m + 1]
        out: dict = {}
        for idx, c in vec.items():
            mon, wedge = src.labels[idx]
            for i, e in enumerate(mon):
                if not e:
                    continue
                sign, nw = _wedge_insert(i, wedge)
                if not sign:
                    continue
                mm = list(mon)
                mm[i] -= 1
                j = dst.index[(tuple(mm), nw)]
                n = out.get(j, _ZERO) + c * sign * e
                if n:
                    out[j] = n
                else:
                    out.pop(j, None)
        return out

    def ambient_action(self, m: int, mon: tuple, vec: dict) -> dict:
        """Multiplication by the algebra class of ``mon`` on ambient vectors."""
        src = self._ambient[m]
        out: dict = {}
        for idx, c in vec.items():
            bm, wedge = src.labels[idx]
            for nm, nc in self.alg.nf_mon(mon_mul(mon, bm)).items():
                j = src.index[(nm, wedge)]
                n = out.get(j, _ZERO) + c * nc
                if n:
                    out[j] = n
                else:
                    out.pop(j, None)
        return out

    # -- class-level helpers ---------------------------------------------
    def class_vec(self, m: int, mon: tuple, wedge: tuple) -> dict:
        """Class of the ambient basis element mon (x) dx_wedge, in space(m)."""
        return self._quot[m].class_of(self._ambient[m].basis_vector((mon, wedge)))

    def lift(self, m: int, class_vec: dict) -> dict:
        """Ambient representative of a class vector (coordinate labels lift)."""
        space = self.space(m)
        amb = self._ambient[m]
        out = {}
        for i, c in class_vec.items():
            out[amb.index[space.labels[i]]] = c
        return out

    def class_action(self, m: int, mon: tuple, cvec: dict) -> dict:
        return self._quot[m].class_of(
            self.ambient_action(m, mon, self.lift(m, cvec)))

    # -- structural checks used by the invariant suite -------------------
    def verify_d_squared(self) -> bool:
        return all(self._d[m + 1].compose(self._d[m]).is_zero()
                   for m in range(self.up_to - 1))

    def verify_leibniz(self, max_pairs: int | None = None) -> bool:
        """d(ab) = a db + b da on classes of algebra basis elements."""
        d0 = self._d[0]
        pairs = itertools.combinations_with_replacement(self.alg.basis, 2)
        if max_pairs is not None:
            pairs = itertools.islice(pairs, max_pairs)
        for a, b in pairs:
            prod = self.alg.mult(a, b)
            left: dict = {}
            for mon, c in prod.items():
                img = d0.apply(self.class_vec(0, mon, ()))
                for j, x in img.items():
                    n = left.get(j, _ZERO) + c * x
                    if n:
                        left[j] = n
                    else:
                        left.pop(j, None)
            right = vec_add(self.class_action(1, a, d0.apply(self.class_vec(0, b, ()))),
                            self.class_action(1, b, d0.apply(self.class_vec(0, a, ()))))
            if left != right:
                return False
        return True

    def grading_of_label(self, label) -> int:
        mon, wedge = label
        return mon_deg(mon) + len(wedge)


def build_differential_module(pres: AlgebraPresentation, up_to: int = 5,
                               verify: bool = True) -> DifferentialModule:
    alg = truncated_quotient(list(pres.ideal_gens), pres.level, nvars=pres.nvars)
    return DifferentialModule(alg, list(alg.gb.elements), up_to, verify)


def qn_presentation(n: int) -> AlgebraPresentation:
    return AlgebraPresentation(4, (cone_relation(),), n)


@lru_cache(maxsize=None)
def qn_algebra(n: int) -> FiniteAlgebra:
    return truncated_quotient([cone_relation()], n)


@lru_cache(maxsize=None)
def qn_module(n: int, up_to: int = 5) -> DifferentialModule:
    """Omega^*_{Q_n}: relations from the full truncation ideal."""
    alg = qn_algebra(n)
    return DifferentialModule(alg, list(alg.gb.elements), up_to)


@lru_cache(maxsize=None)
def q_tensor_module(n: int, up_to: int = 5) -> DifferentialModule:
    """Omega^*_Q (x) Q_n: relations from the cone binomial only."""
    return DifferentialModule(qn_algebra(n), [cone_relation()], up_to)


def _truncate_ambient(src: VectorSpaceWithBasis, dst: VectorSpaceWithBasis,
                      vec: dict, level: int) -> dict:
    out = {}
    for i, c in vec.items():
        mon, w = src.labels[i]
        if mon_deg(mon) < level:
            out[dst.index[(mon, w)]] = c
    return out


@lru_cache(maxsize=None)
def omega_transition(m: int, n: int, tensor: bool = False) -> LinearMap:
    """Truncation-induced map Omega^m at level n+1 -> level n."""
    build = q_tensor_module if tensor else qn_module
    src = build(n + 1)
    dst = build(n)
    samb, damb = src.ambient(m), dst.ambient(m)
    apply_amb = lambda v: _truncate_ambient(samb, damb, v, n)
    for r in src.rels(m):  # well-definedness: relations land in relations
        if not dst.quot(m).is_zero_class(apply_amb(r)):
            raise EngineError("truncation does not preserve form relations")
    return induced_quotient_map(src.quot(m), dst.quot(m), apply_amb)


@dataclass
class HodgePiece:
    """Top Hodge piece HC^{(m)}_m = Omega^m / d(Omega^{m-1}) of an algebra."""
    dim: int
    quotient: QuotientSpace
    projection: LinearMap  # from Omega^m classes to the piece


def hodge_quotient(dm: DifferentialModule, m: int) -> QuotientSpace:
    subs = list(dm.rels(m))
    if m >= 1:
        amb = dm.ambient(m - 1)
        subs += [dm.ambient_d(m - 1, amb.basis_vector(lab))
                 for lab in dm.quot(m - 1).coord_labels]
    return QuotientSpace(dm.ambient(m), subs)


def hodge_piece_hc(dm: DifferentialModule, m: int) -> HodgePiece:
    hq = hodge_quotient(dm, m)
    proj = induced_quotient_map(dm.quot(m), hq, lambda v: v)
    return HodgePiece(hq.dim, hq, proj)


@lru_cache(maxsize=None)
def hodge_transition(m: int, n: int) -> LinearMap:
    """Induced map HC^{(m)}_m(Q_{n+1}) -> HC^{(m)}_m(Q_n)."""
    src = qn_module(n + 1)
    dst = qn_module(n)
    hsrc = hodge_quotient(src, m)
    hdst = hodge_quotient(dst, m)
    apply_amb = lambda v: _truncate_ambient(src.ambient(m), dst.ambient(m), v, n)
    return induced_quotient_map(hsrc, hdst, apply_amb)


OMEGA_TOP = ((0, 0, 0, 0), (0, 1, 2, 3))  # the class w = dx1 dx2 dx3 dx4


def omega4_cone_check(nmax: int) -> Verdict:
    """dim(Omega^4_Q (x) Q_n) = 1 with x_i * w = 0 and w fixed by transitions;
    dim Omega^4_{Q_n} = 1 as well once n >= 2 (level 1 is the base field)."""
    details: dict = {"per_level": {}}
    ok = True
    witness = None
    for n in range(1, nmax + 1):
        tm = q_tensor_module(n)
        qm = qn_module(n)
        mon, wedge = OMEGA_TOP
        w_class = tm.class_vec(4, mon, wedge)
        killed = all(not tm.class_action(4, tuple(1 if j == i else 0 for j in range(4)),
                                         w_class)
                     for i in range(4))
        rec = {
            "dim_tensor_omega4": tm.dim(4),
            "dim_omega4": qm.dim(4),
            "w_nonzero": bool(w_class),
            "x_times_w_zero": killed,
        }
        good = (tm.dim(4) == 1 and qm.dim(4) == (1 if n >= 2 else 0)
                and w_class and killed)
        if n < nmax:
            tnext = q_tensor_module(n + 1)
            trans = omega_transition(4, n, tensor=True)
            w_up = tnext.class_vec(4, mon, wedge)
            rec["transition_fixes_w"] = trans.apply(w_up) == w_class
            good = good and rec["transition_fixes_w"]
        details["per_level"][n] = rec
        if good and witness is None:
            witness = {"class": "dx1^dx2^dx3^dx4", "level": n}
        ok = ok and good
    return Verdict(ok, details, witness)


def pro_exterior_power_check(r: int, nmax: int, window: int) -> Verdict:
    """Lambda^r of the levelwise surjection Omega^1_Q (x) Q_n -> Omega^1_{Q_n}
    is a pro-isomorphism within the window."""
    from . import prosys  # local import keeps module layering acyclic

    levels_src = {}
    levels_dst = {}
    comp = {}
    for n in range(1, nmax + 1):
        src = q_tensor_module(n)
        dst = qn_module(n)
        f = induced_quotient_map(src.quot(r), dst.quot(r), lambda v: v)
        if f.rank() != dst.dim(r):
            raise EngineError(f"level {n}: Lambda^{r} comparison not surjective")
        levels_src[n] = src.space(r)
        levels_dst[n] = dst.space(r)
        comp[n] = f
    tr_src = {n: omega_transition(r, n, tensor=True) for n in range(1, nmax)}
    tr_dst = {n: omega_transition(r, n) for n in range(1, nmax)}
    source = prosys.ProVectorSystem(levels_src, tr_src)
    target = prosys.ProVectorSystem(levels_dst, tr_dst)
    fmap = prosys.StrictProMap(source, target, comp)
    verdict = prosys.certify_pro_iso(fmap, window)
    verdict.details["power"] = r
    verdict.details["levelwise_surjective"] = True
    return verdict
