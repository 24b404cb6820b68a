"""Exact sparse linear algebra: echelon forms, kernels, quotients."""
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from segrecone.linalg import (
    Echelon,
    LinearMap,
    QuotientSpace,
    VectorSpaceWithBasis,
    column_dependencies,
    express_in_span,
    induced_quotient_map,
    mat_rank,
    mat_transpose,
    span_rank,
    vec_add,
    vec_clean,
    vec_scale,
    vec_sub,
)

F = Fraction

fracs = st.fractions(min_value=-4, max_value=4, max_denominator=3)
vecs = st.dictionaries(st.integers(0, 4), fracs, max_size=5).map(vec_clean)
mats = st.lists(vecs, min_size=0, max_size=5)


def combine(coeffs, vectors):
    out = {}
    for c, v in zip(coeffs, vectors):
        out = vec_add(out, vec_scale(c, v))
    return out


# -- plain vector helpers ---------------------------------------------------

def test_vec_clean_drops_zeros():
    assert vec_clean({0: F(0), 1: F(2), 2: 0}) == {1: F(2)}


def test_vec_arithmetic():
    u = {0: F(1), 1: F(2)}
    v = {1: F(-2), 2: F(3)}
    assert vec_add(u, v) == {0: F(1), 2: F(3)}
    assert vec_sub(u, u) == {}
    assert vec_scale(F(1, 2), v) == {1: F(-1), 2: F(3, 2)}
    assert vec_scale(0, v) == {}


# -- echelon accumulator ----------------------------------------------------

def test_rank_of_proportional_rows_is_one():
    assert mat_rank([{0: F(1), 1: F(2)}, {0: F(2), 1: F(4)}]) == 1


def test_echelon_add_reports_rank_growth():
    ech = Echelon()
    assert ech.add({0: F(1), 1: F(1)}) is True
    assert ech.add({0: F(2), 1: F(2)}) is False
    assert ech.rank == 1
    assert ech.add({1: F(1)}) is True
    assert ech.rank == 2


def test_echelon_contains_and_reduce():
    ech = Echelon()
    ech.add({0: F(1), 2: F(1)})
    ech.add({1: F(1), 2: F(-1)})
    assert ech.contains({0: F(3), 1: F(3)})  # 3*(row0) + 3*(row1) hits chars 0,1
    assert not ech.contains({2: F(1)})
    # residual is zero exactly on the span and fixed away from pivots
    assert ech.reduce({0: F(1), 2: F(1)}) == {}
    assert ech.reduce({3: F(5)}) == {3: F(5)}


def test_add_for_dependency_yields_explicit_relation():
    ech = Echelon(track=True)
    rows = {"a": {0: F(1)}, "b": {1: F(1)}, "c": {0: F(2), 1: F(3)}}
    assert ech.add_for_dependency(rows["a"], "a") is None
    assert ech.add_for_dependency(rows["b"], "b") is None
    dep = ech.add_for_dependency(rows["c"], "c")
    assert dep is not None and dep["c"] == 1
    total = {}
    for tag, c in dep.items():
        total = vec_add(total, vec_scale(c, rows[tag]))
    assert total == {}


@given(mats)
def test_reduce_is_idempotent_and_vanishes_on_span(rows):
    ech = Echelon()
    for v in rows:
        ech.add(v)
    for v in rows:
        assert ech.reduce(v) == {}
    for v in rows:
        r = ech.reduce(vec_scale(F(7, 2), v))
        assert ech.reduce(r) == r == {}


@given(mats, vecs)
def test_reduce_is_linear(rows, v):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    twice = vec_add(ech.reduce(v), ech.reduce(v))
    assert ech.reduce(vec_scale(2, v)) == twice


# -- span queries -----------------------------------------------------------

def test_span_rank_counts_independent_vectors():
    e0, e1 = {0: F(1)}, {1: F(1)}
    assert span_rank([e0, e1, vec_add(e0, e1)]) == 2
    assert span_rank([{}, {}]) == 0


def test_express_in_span_recovers_coefficients():
    basis = [{0: F(1)}, {1: F(1)}, {0: F(1), 1: F(1)}]
    target = {0: F(2), 1: F(5)}
    coeffs = express_in_span(basis, target)
    assert coeffs is not None
    assert combine(coeffs, basis) == target


def test_express_in_span_rejects_outside_vectors():
    assert express_in_span([{0: F(1)}], {1: F(1)}) is None


@given(mats, st.lists(fracs, min_size=5, max_size=5))
def test_express_in_span_roundtrip(rows, coeffs):
    target = combine(coeffs, rows)
    got = express_in_span(rows, target)
    assert got is not None
    assert combine(got, rows) == target


def test_column_dependencies_annihilate_columns():
    cols = [{0: F(1)}, {0: F(2)}, {}, {1: F(1)}]
    deps = column_dependencies(cols)
    assert len(deps) == len(cols) - mat_rank(cols)
    for dep in deps:
        total = {}
        for j, c in dep.items():
            total = vec_add(total, vec_scale(c, cols[j]))
        assert total == {}


@given(mats)
def test_column_dependencies_count_matches_rank_nullity(cols):
    deps = column_dependencies(cols)
    assert len(deps) + mat_rank(cols) == len(cols)


@given(mats)
def test_transpose_preserves_rank(rows):
    assert mat_rank(rows) == mat_rank(mat_transpose(rows))


# -- based spaces and maps --------------------------------------------------

def test_based_space_roundtrip():
    sp = VectorSpaceWithBasis(["a", "b", "c"])
    assert sp.dim == 3
    v = sp.vector({"a": 1, "c": F(-2, 3)})
    assert v == {0: F(1), 2: F(-2, 3)}
    assert sp.unvector(v) == {"a": F(1), "c": F(-2, 3)}
    assert sp.basis_vector("b") == {1: F(1)}


def test_linear_map_rank_kernel_image():
    dom = VectorSpaceWithBasis(["a", "b", "c"])
    cod = VectorSpaceWithBasis(["x", "y"])
    f = LinearMap.from_label_images(
        dom, cod, lambda lab: {"a": {"x": 1}, "b": {"x": 1, "y": 1}, "c": {}}[lab])
    assert f.rank() == 2
    ker = f.kernel()
    assert len(ker) == 1
    assert dom.dim == f.rank() + len(ker)
    for v in ker:
        assert f.apply(v) == {}
    assert f.image_echelon().contains({0: F(1)})
    assert f.apply(dom.vector({"a": 1, "b": -1})) == cod.vector({"y": -1})


def test_compose_and_is_zero():
    sp = VectorSpaceWithBasis([0, 1])
    swap = LinearMap(sp, sp, [{1: F(1)}, {0: F(1)}])
    assert swap.compose(swap).apply({0: F(1)}) == {0: F(1)}
    zero = LinearMap(sp, sp, [{}, {}])
    assert zero.is_zero()
    assert zero.compose(swap).is_zero()


@given(st.lists(vecs, min_size=3, max_size=3))
def test_rank_nullity_for_maps(images):
    dom = VectorSpaceWithBasis(["a", "b", "c"])
    cod = VectorSpaceWithBasis(list(range(5)))
    f = LinearMap(dom, cod, images)
    assert f.rank() + len(f.kernel()) == dom.dim


# -- quotient spaces --------------------------------------------------------

def test_quotient_identifies_glued_labels():
    amb = VectorSpaceWithBasis(["a", "b", "c"])
    q = QuotientSpace(amb, [vec_sub(amb.basis_vector("a"), amb.basis_vector("b"))])
    assert q.dim == 2
    assert q.class_of(amb.basis_vector("a")) == q.class_of(amb.basis_vector("b"))
    assert q.is_zero_class(amb.vector({"a": 1, "b": -1}))
    assert not q.is_zero_class(amb.basis_vector("c"))
    assert q.space().dim == 2


def test_quotient_project_is_canonical():
    amb = VectorSpaceWithBasis(["a", "b"])
    q = QuotientSpace(amb, [amb.vector({"a": 1, "b": 1})])
    ra = q.project(amb.basis_vector("a"))
    rb = q.project(vec_scale(-1, amb.basis_vector("b")))
    assert ra == rb  # equal classes share the canonical representative


def test_induced_quotient_map_commutes_with_projection():
    amb_dom = VectorSpaceWithBasis(["a", "b", "c"])
    amb_cod = VectorSpaceWithBasis(["x", "y"])
    glue = [vec_sub(amb_dom.basis_vector("a"), amb_dom.basis_vector("b"))]
    qdom = QuotientSpace(amb_dom, glue)
    qcod = QuotientSpace(amb_cod, [])
    amb_map = LinearMap.from_label_images(
        amb_dom, amb_cod,
        lambda lab: {"a": {"x": 1}, "b": {"x": 1}, "c": {"y": 1}}[lab])
    f = induced_quotient_map(qdom, qcod, amb_map.apply)
    assert f.rank() == 2
    for lab in amb_dom.labels:
        v = amb_dom.basis_vector(lab)
        assert f.apply(qdom.class_of(v)) == qcod.class_of(amb_map.apply(v))
