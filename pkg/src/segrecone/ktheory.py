"""Assembly of the finite-level K-theory reductions.

The reduced K-groups of the cone algebra are controlled, weight by weight,
by pro-systems built from truncated de Rham data on the cone and global
sections of form sheaves on thickenings of the exceptional surface.  This
module wires those two sides together through the character map (monomials
pull back to lattice characters) and certifies:

* weight 1: both boundary terms vanish (a levelwise isomorphism and a
  windowed pro-isomorphism certificate),
* weight 4: the top Hodge system with a nonzero compatible witness class,
* weights >= 5: the vanishing inputs,
* weight 3: the kernel system, with its target computed two independent
  ways that must agree exactly.

Every certificate is finite-level; pro-statements carry explicit windows.
The identification of relative K-theory with relative cyclic homology for
the cone and its blow-up is consumed as an external hypothesis and is
recorded verbatim in every report this module emits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import prosys
from .encech import (express_family, global_sections, pullback_section,
                     sections_system, verify_H0_surjection)
from .errors import CrossCheckError, EngineError
from .kaehler import (OMEGA_TOP, hodge_quotient, hodge_transition,
                      omega4_cone_check, omega_transition, qn_algebra,
                      qn_module)
from .linalg import LinearMap, VectorSpaceWithBasis, induced_quotient_map
from .polyring import mon_deg
from .sheaf import filtration_tilde_omega, h_filtered
from .verdict import Verdict

HYPOTHESES = (
    "pro-descent comparison of relative K-theory with relative cyclic "
    "homology for the cone and its blow-up (external input, not recomputed)",
    "all pro-statements are certified on finite windows only; every verdict "
    "records the window and truncation levels used",
)

# the witness class x1 dx2 dx3 dx4, whose differential is the top form
K4_WITNESS = ((1, 0, 0, 0), (1, 2, 3))


# ---------------------------------------------------------------------------
# Pullback plumbing: cone-side quotients -> section spaces on thickenings.


def _pullback_ambient(kind: str, n: int, amb: VectorSpaceWithBasis,
                      vec: dict) -> dict:
    """Per-character flat families of the pullback of an ambient form
    vector (index-keyed over ``amb``)."""
    per_char: dict = {}
    for i, c in vec.items():
        mon, wedge = amb.labels[i]
        u, fam = pullback_section(kind, n, mon, wedge)
        acc = per_char.setdefault(u, {})
        for lab, cf in fam.items():
            x = acc.get(lab, Fraction(0)) + c * cf
            if x:
                acc[lab] = x
            else:
                acc.pop(lab, None)
    return {u: f for u, f in per_char.items() if f}


def _assert_pullback_kills(kind: str, m: int, n: int,
                           amb: VectorSpaceWithBasis, vecs) -> None:
    """Well-definedness on quotients: subspace vectors must pull back into
    the relation span of the target model."""
    for vec in vecs:
        for u, fam in _pullback_ambient(kind, n, amb, vec).items():
            coeffs = express_family(kind, m, n, u, fam)
            if coeffs is None or any(coeffs):
                raise EngineError(
                    "pullback does not kill a cone-side relation")


def _pullback_map(quot, dm, m: int, n: int, kind: str,
                  subspace_vecs) -> LinearMap:
    """Induced map from a quotient of cone m-forms to the flat space of
    global sections of the model, via coordinate-label lifts."""
    amb = dm.ambient(m)
    _assert_pullback_kills(kind, m, n, amb, subspace_vecs)
    gs = global_sections(kind, m, n)
    cod = gs.space()
    dom = quot.space()
    images = []
    for lab in dom.labels:
        mon, wedge = lab
        u, fam = pullback_section(kind, n, mon, wedge)
        coeffs = express_family(kind, m, n, u, fam)
        if coeffs is None:
            raise EngineError("pullback is not a section of the model")
        images.append({cod.index[(u, j)]: cf
                       for j, cf in enumerate(coeffs) if cf})
    return LinearMap(dom, cod, images)


def _hodge_subs(dm, m: int) -> list:
    """The subspace the top Hodge piece quotients by (same construction
    as hodge_quotient)."""
    subs = list(dm.rels(m))
    if m >= 1:
        amb = dm.ambient(m - 1)
        subs += [dm.ambient_d(m - 1, amb.basis_vector(lab))
                 for lab in dm.quot(m - 1).coord_labels]
    return subs


# ---------------------------------------------------------------------------
# Weight 1.


def _ideal_level_iso(n: int) -> Verdict:
    """The augmentation-power quotient maps isomorphically onto the ideal
    sections of the thickening, respecting the character grading."""
    alg = qn_algebra(n)
    mons = [e for e in alg.basis if mon_deg(e) >= 1]
    gs = global_sections("ideal_power", 0, n)
    cod = gs.space()
    dom = VectorSpaceWithBasis(mons)
    images = []
    char_of: dict = {}
    for e in mons:
        u, fam = pullback_section("ideal_power", n, e, ())
        char_of[e] = u
        coeffs = express_family("ideal_power", 0, n, u, fam)
        if coeffs is None:
            raise EngineError("monomial does not define an ideal section")
        images.append({cod.index[(u, j)]: cf
                       for j, cf in enumerate(coeffs) if cf})
    f = LinearMap(dom, cod, images)
    rank = f.rank()
    # grading bookkeeping: degree-j monomials hit (j+1)^2 distinct characters
    deg_counts: dict = {}
    deg_chars: dict = {}
    for e in mons:
        j = mon_deg(e)
        deg_counts[j] = deg_counts.get(j, 0) + 1
        deg_chars.setdefault(j, set()).add(char_of[e])
    grading_ok = all(
        deg_counts[j] == (j + 1) ** 2 and len(deg_chars[j]) == deg_counts[j]
        for j in deg_counts)
    sections_by_deg = gs.dims_by_xdeg()
    ok = (dom.dim == cod.dim == rank and grading_ok
          and sections_by_deg == deg_counts)
    # the defining binomial maps to the literal same family on both sides
    u12, f12 = pullback_section("ideal_power", n, (1, 1, 0, 0), ())
    u34, f34 = pullback_section("ideal_power", n, (0, 0, 1, 1), ())
    if u12 != u34 or f12 != f34:
        raise EngineError("binomial relation broken by the character map")
    return Verdict(ok, {
        "n": n, "dim_mbar_quotient": dom.dim, "dim_ideal_sections": cod.dim,
        "rank": rank, "dims_by_degree": {j: deg_counts[j]
                                         for j in sorted(deg_counts)},
    })


def k1_form_map(n: int) -> LinearMap:
    """Omega^1 of the truncated cone algebra -> sections of the reduced
    1-forms on the thickening."""
    dm = qn_module(n)
    return _pullback_map(dm.quot(1), dm, 1, n, "omega_tilde", dm.rels(1))


def verify_K1(nmax: int, window: int) -> Verdict:
    """Both boundary terms in weight one vanish: the form-side map is a
    pro-isomorphism within the window, and the ideal-side map is a
    levelwise isomorphism."""
    if nmax < 3:
        raise EngineError("need nmax >= 3 in weight one")
    levelwise = {}
    ok_b = True
    for n in range(2, nmax + 1):
        v = _ideal_level_iso(n)
        ok_b = ok_b and v.ok
        levelwise[n] = v.details
    src_levels = {n: qn_module(n).quot(1).space() for n in range(1, nmax + 1)}
    src_tr = {n: omega_transition(1, n) for n in range(1, nmax)}
    source = prosys.ProVectorSystem(src_levels, src_tr)
    target = sections_system("omega_tilde", 1, nmax)
    components = {n: k1_form_map(n) for n in range(1, nmax + 1)}
    fmap = prosys.StrictProMap(source, target, components)
    iso = prosys.certify_pro_iso(fmap, window)
    details = {
        "nmax": nmax, "window": window,
        "form_side_pro_iso": iso.details,
        "ideal_side_levelwise": levelwise,
        "source_dims": source.dims(), "target_dims": target.dims(),
        "hypotheses": list(HYPOTHESES),
    }
    return Verdict(iso.ok and ok_b, details,
                   None if iso.ok else iso.witness)


# ---------------------------------------------------------------------------
# Weight 4.


def _hodge_system(m: int, nmax: int) -> prosys.ProVectorSystem:
    spaces = {n: hodge_quotient(qn_module(n), m).space()
              for n in range(1, nmax + 1)}
    trans = {n: hodge_transition(m, n) for n in range(1, nmax)}
    return prosys.ProVectorSystem(spaces, trans)


def compute_K4(nmax: int):
    """(pro-system of top Hodge pieces in degree 3, non-vanishing verdict).

    The witness is the class of x1 dx2 dx3 dx4: at every level n >= 2 its
    differential is the nonzero top form, and the transitions carry witness
    to witness, so every composite from a level >= 2 stays nonzero.  Level 1
    is the base field, where all the spaces are zero."""
    if nmax < 2:
        raise EngineError("need nmax >= 2 in weight four")
    system = _hodge_system(3, nmax)
    per_level = {}
    ok = True
    witness_classes = {}
    for n in range(1, nmax + 1):
        dm = qn_module(n)
        hq = hodge_quotient(dm, 3)
        w = hq.class_of(dm.ambient(3).basis_vector(K4_WITNESS)
                        if mon_deg(K4_WITNESS[0]) < n else {})
        witness_classes[n] = w
        dmap = _hodge_to_top_form(dm, hq)
        w_img = dmap.apply(w)
        omega_cls = dm.class_vec(4, *OMEGA_TOP)
        rec = {
            "dim": hq.dim,
            "dim_top_form": dm.dim(4),
            "witness_d_image_nonzero": bool(w_img),
            "witness_d_image_is_top_form": w_img == omega_cls,
        }
        if n >= 2:
            ok = ok and bool(w_img) and w_img == omega_cls and dm.dim(4) == 1
        else:
            ok = ok and not w_img and hq.dim == 0
        per_level[n] = rec
    for n in range(1, nmax):
        t = hodge_transition(3, n)
        surj = t.rank() == system.levels[n].dim
        compat = t.apply(witness_classes[n + 1]) == witness_classes[n]
        per_level[n]["transition_surjective"] = surj
        per_level[n]["witness_compatible"] = compat
        ok = ok and surj and compat
    verdict = Verdict(ok, {
        "nmax": nmax, "per_level": per_level,
        "witness": "class of x1 dx2 dx3 dx4",
        "nonzero_from_level": 2,
        "hypotheses": list(HYPOTHESES),
    })
    return system, verdict


def _hodge_to_top_form(dm, hq) -> LinearMap:
    """d descends from the degree-3 Hodge piece to the top forms."""
    return induced_quotient_map(hq, dm.quot(4),
                                lambda v: dm.ambient_d(3, v))


def verify_K5plus_inputs(nmax: int) -> Verdict:
    """d in degree 3 is onto the top forms and degree-5 forms vanish."""
    per_level = {}
    ok = True
    for n in range(1, nmax + 1):
        dm = qn_module(n)
        rank3 = dm.d(3).rank()
        rec = {"rank_d3": rank3, "dim_omega4": dm.dim(4),
               "dim_omega5": dm.dim(5)}
        good = rank3 == dm.dim(4) and dm.dim(5) == 0
        per_level[n] = rec
        ok = ok and good
    return Verdict(ok, {"nmax": nmax, "per_level": per_level})


# ---------------------------------------------------------------------------
# Weight 3.


def _hc_target_dim_two_ways(m: int, n: int) -> int:
    """Sections of the top cyclic quotient sheaf, computed by the chart
    engine and re-derived from the certified line-bundle filtration count
    plus the section-level surjection; disagreement is a hard error."""
    cech = global_sections("hc_top", m, n).dim
    tilde_cech = global_sections("omega_tilde", m, n).dim
    total, certified = h_filtered(filtration_tilde_omega(m, n), 0)
    if certified and total != tilde_cech:
        raise CrossCheckError(
            f"reduced {m}-form sections at level {n}: filtration {total} "
            f"!= chart computation {tilde_cech}")
    surj = verify_H0_surjection(m, n)
    if not surj.ok:
        raise CrossCheckError(
            f"section-level surjection fails at m={m} n={n}")
    alt = surj.details["h0_tilde"] - surj.details["h0_image_d"]
    if alt != cech:
        raise CrossCheckError(
            f"cyclic-top sections at level {n}: quotient count {alt} "
            f"!= chart computation {cech}")
    return cech


def k3_component(n: int) -> LinearMap:
    """Degree-2 Hodge piece of the truncated cone -> sections of the top
    cyclic quotient sheaf."""
    dm = qn_module(n)
    hq = hodge_quotient(dm, 2)
    return _pullback_map(hq, dm, 2, n, "hc_top", _hodge_subs(dm, 2))


def compute_K3(nmax: int) -> prosys.ProVectorSystem:
    """The kernel system in weight three, with the double-computed target."""
    if nmax < 2:
        raise EngineError("need nmax >= 2 in weight three")
    for n in range(1, nmax + 1):
        _hc_target_dim_two_ways(2, n)
    source = _hodge_system(2, nmax)
    target = sections_system("hc_top", 2, nmax)
    components = {n: k3_component(n) for n in range(1, nmax + 1)}
    fmap = prosys.StrictProMap(source, target, components)
    return prosys.pro_kernel(fmap)


# ---------------------------------------------------------------------------
# Boundary data of the two-term reduction.


def report_MT_general(m: int, nmax: int) -> dict:
    """Dims, per level, of the two boundary terms in weight m: the cokernel
    of the map to sheaf sections in degree m, and the kernel one degree
    down.  For m = 2 these bracket the middle group; the extension itself
    is not resolved here."""
    if not 1 <= m <= 4:
        raise EngineError("weight must be in 1..4")
    left = {}
    right = {}
    for n in range(1, nmax + 1):
        dm = qn_module(n)
        hq = hodge_quotient(dm, m)
        f = _pullback_map(hq, dm, m, n, "hc_top", _hodge_subs(dm, m))
        left[n] = f.codomain.dim - f.rank()
        if m == 1:
            alg = qn_algebra(n)
            mons = [e for e in alg.basis if mon_deg(e) >= 1]
            gs = global_sections("ideal_power", 0, n)
            cod = gs.space()
            images = []
            for e in mons:
                u, fam = pullback_section("ideal_power", n, e, ())
                coeffs = express_family("ideal_power", 0, n, u, fam)
                images.append({cod.index[(u, j)]: cf
                               for j, cf in enumerate(coeffs) if cf})
            g = LinearMap(VectorSpaceWithBasis(mons), cod, images)
        else:
            hq_low = hodge_quotient(dm, m - 1)
            g = _pullback_map(hq_low, dm, m - 1, n, "hc_top",
                              _hodge_subs(dm, m - 1))
        right[n] = len(g.kernel())
    return {
        "m": m, "nmax": nmax,
        "left_term_dims": left,
        "right_term_dims": right,
        "hypotheses": list(HYPOTHESES),
    }


# ---------------------------------------------------------------------------
# The assembled report.


@dataclass
class KReport:
    nmax: int
    window: int
    verdicts: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    hypotheses: tuple = HYPOTHESES

    def to_dict(self) -> dict:
        return {
            "nmax": self.nmax,
            "window": self.window,
            "verdicts": {k: {"ok": v.ok, "details": v.details,
                             "witness": v.witness}
                         for k, v in sorted(self.verdicts.items())},
            "tables": self.tables,
            "hypotheses": list(self.hypotheses),
        }


def build_kreport(nmax: int, window: int) -> KReport:
    rep = KReport(nmax, window)
    rep.verdicts["weight1"] = verify_K1(nmax, window)
    k4_system, k4_verdict = compute_K4(nmax)
    rep.verdicts["weight4"] = k4_verdict
    rep.verdicts["weight5plus"] = verify_K5plus_inputs(nmax)
    rep.verdicts["top_form_cone"] = omega4_cone_check(nmax)
    k3_nmax = min(nmax, 4)
    k3_system = compute_K3(k3_nmax)
    dims_q = {n: len(qn_algebra(n).basis) for n in range(1, nmax + 1)}
    omega_dims = {n: {m: qn_module(n).dim(m) for m in range(5)}
                  for n in range(1, nmax + 1)}
    hodge_dims = {n: {m: hodge_quotient(qn_module(n), m).dim
                      for m in range(5)}
                  for n in range(1, nmax + 1)}
    tilde_dims = {n: {m: global_sections("omega_tilde", m, n).dim
                      for m in range(5)}
                  for n in range(1, min(nmax, 5) + 1)}
    rep.tables = {
        "dim_Q": dims_q,
        "dim_omega": omega_dims,
        "dim_hodge_top": hodge_dims,
        "dim_tilde_sections": tilde_dims,
        "k4_system_dims": k4_system.dims(),
        "k4_transition_ranks": {n: k4_system.transitions[n].rank()
                                for n in range(1, nmax)},
        "k3_system_dims": k3_system.dims(),
    }
    return rep
