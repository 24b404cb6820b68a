"""Kaehler differentials of truncated algebras: dimensions, exterior calculus.

Hand oracles used below (all derivable with pencil and paper):

* dim Q_n = sum of (j+1)^2 over j < n (standard monomials per degree).
* Level 2: the degree-1 slice of Omega^m is the cokernel of the Koszul map
  Sym^2 V (x) Wedge^(m-1) V -> V (x) Wedge^m V, so
  dim Omega^m_{Q_2} = C(4,m) + C(4,m+1), giving the row [5,10,10,5,1].
* Level 3, m = 1: slices 4 + 15 + 16 = 35.  Degree 1 removes the single
  relation d(x1x2 - x3x4); degree 2 removes 20 independent vectors (the 16
  differentials of standard cubics plus the four x_i * d(x1x2 - x3x4),
  independent because no standard-monomial combination lies in the ideal).
* Top forms: wedging d(x1x2 - x3x4) with the four 3-wedges yields the
  relations x_i * dx1 dx2 dx3 dx4 = 0, so only the constant-coefficient top
  form survives: dim Omega^4 = 1 for n >= 2 (0 at n = 1, where even the
  constant dies against d of the degree-1 truncation monomials).
* k[x]/(x^3): Omega^1 has basis dx, x dx and relation x^2 dx = 0.
"""
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from segrecone.kaehler import (
    OMEGA_TOP,
    AlgebraPresentation,
    build_differential_module,
    hodge_piece_hc,
    hodge_quotient,
    hodge_transition,
    omega4_cone_check,
    omega_transition,
    pro_exterior_power_check,
    q_tensor_module,
    qn_algebra,
    qn_module,
)
from segrecone.linalg import vec_add

F = Fraction


def test_truncated_cone_algebra_dims():
    assert [qn_algebra(n).dim for n in (1, 2, 3, 4)] == [1, 5, 14, 30]


def test_form_dimensions_level_two():
    dm = qn_module(2)
    assert [dm.dim(m) for m in range(5)] == [5, 10, 10, 5, 1]


def test_form_dimensions_level_three():
    dm = qn_module(3)
    row = [dm.dim(m) for m in range(5)]
    assert row[0] == 14
    assert row[1] == 35
    assert row[4] == 1
    assert row == [14, 35, 35, 14, 1]  # m = 2, 3 pinned as regression values


def test_form_dimension_symmetry_and_unit_euler_sum():
    for n in (2, 3):
        dm = qn_module(n)
        row = [dm.dim(m) for m in range(5)]
        assert row[:4] == row[:4][::-1]  # m <-> 3-m symmetry below the top
        assert row[4] == 1
        assert sum((-1) ** m * row[m] for m in range(5)) == 1


def test_fifth_powers_vanish():
    for n in (2, 3):
        assert qn_module(n).dim(5) == 0
        assert q_tensor_module(n).dim(5) == 0


def test_top_form_dimensions_and_annihilation():
    assert qn_module(1).dim(4) == 0
    assert q_tensor_module(1).dim(4) == 1
    for n in (2, 3):
        for dm in (qn_module(n), q_tensor_module(n)):
            assert dm.dim(4) == 1
            w = dm.class_vec(4, *OMEGA_TOP)
            assert w
            for i in range(4):
                e = tuple(1 if j == i else 0 for j in range(4))
                assert dm.class_action(4, e, w) == {}


def test_exterior_derivative_laws():
    for n in (2, 3):
        dm = qn_module(n)
        assert dm.verify_d_squared()
        assert dm.verify_leibniz()
        assert q_tensor_module(n).verify_d_squared()


def test_ambient_d_hand_example():
    dm = qn_module(3)
    v = dm.ambient(0).basis_vector(((1, 0, 1, 0), ()))
    img = dm.ambient(1).unvector(dm.ambient_d(0, v))
    assert img == {((1, 0, 0, 0), (2,)): F(1), ((0, 0, 1, 0), (0,)): F(1)}


def test_class_lift_roundtrip():
    dm = qn_module(2)
    q = dm.quot(1)
    for lab in dm.space(1).labels[:5]:
        cvec = q.class_of(dm.ambient(1).basis_vector(lab))
        assert q.class_of(dm.lift(1, cvec)) == cvec


@given(st.dictionaries(st.integers(0, 9), st.integers(-3, 3), max_size=4))
def test_class_action_is_linear(coeffs):
    dm = qn_module(2)
    v = {i: F(c) for i, c in coeffs.items() if c}
    mon = (1, 0, 0, 0)
    doubled = dm.class_action(1, mon, vec_add(v, v))
    assert doubled == vec_add(dm.class_action(1, mon, v),
                              dm.class_action(1, mon, v))


def test_grading_of_label():
    dm = qn_module(2)
    assert dm.grading_of_label(((1, 0, 0, 0), (1, 2))) == 3
    assert dm.grading_of_label(((0, 0, 0, 0), ())) == 0


def test_transitions_are_surjective_truncations():
    t = omega_transition(1, 2)
    assert t.rank() == qn_module(2).dim(1) == 10
    t4 = omega_transition(4, 2)
    assert t4.rank() == 1
    # the top form is fixed
    w3 = qn_module(3).class_vec(4, *OMEGA_TOP)
    assert t4.apply(w3) == qn_module(2).class_vec(4, *OMEGA_TOP)


def test_hodge_quotient_dimensions():
    # Omega^1/d(Q_2): d hits the four constant-coefficient dx_i
    assert hodge_quotient(qn_module(2), 1).dim == 10 - 4
    # Omega^3/d(Omega^2): image is exactly the constant 3-wedges
    assert hodge_quotient(qn_module(2), 3).dim == 1
    assert hodge_quotient(qn_module(1), 3).dim == 0


def test_hodge_piece_projection():
    piece = hodge_piece_hc(qn_module(2), 3)
    assert piece.dim == 1
    assert piece.projection.rank() == 1
    piece0 = hodge_piece_hc(qn_module(2), 4)
    assert piece0.dim == 0


def test_hodge_transition_surjective():
    t = hodge_transition(3, 2)
    assert t.rank() == hodge_quotient(qn_module(2), 3).dim == 1


def test_omega4_cone_check():
    v = omega4_cone_check(4)
    assert v.ok
    assert v.witness == {"class": "dx1^dx2^dx3^dx4", "level": 1}
    for n, rec in v.details["per_level"].items():
        assert rec["dim_tensor_omega4"] == 1
        assert rec["w_nonzero"] and rec["x_times_w_zero"]
        assert rec["dim_omega4"] == (1 if n >= 2 else 0)
        if n < 4:
            assert rec["transition_fixes_w"]


def test_pro_exterior_power_comparison():
    assert pro_exterior_power_check(1, 4, 2).ok
    v = pro_exterior_power_check(5, 4, 1)
    assert v.ok  # both towers vanish identically in degree 5
    assert v.details["power"] == 5


def test_one_variable_truncation_module():
    dm = build_differential_module(AlgebraPresentation(1, (), 3), up_to=2)
    assert dm.alg.dim == 3
    assert dm.dim(1) == 2
    assert dm.dim(2) == 0
    assert dm.verify_d_squared() and dm.verify_leibniz()
    # x^2 dx = 0 but x dx is not
    assert dm.class_vec(1, (2,), (0,)) == {}
    assert dm.class_vec(1, (1,), (0,)) != {}
    # d is injective off the constants: HC^1_1 = 0
    assert hodge_quotient(dm, 1).dim == 0
