"""Chart-algebra models for the naive cotangent complex of a blowup chart.

The distinguished chart algebra is An = k[x, y3, y4]/(x^n); the cone
variables map in by x1 -> x, x2 -> x y3 y4, x3 -> x y3, x4 -> x y4.
Two independent presentations of the same objects are compared throughout,
so most verdicts are self-certifying; the hand-derivable facts pinned here
are the one-variable model (x^(n+1))/(x^2n) and the vanishing of the
restriction-kernel tower (multiplication by x kills the conormal classes).
"""
import pytest

from segrecone.charts import (
    CHART_IMAGES,
    beta_kernel_system,
    chart_grade,
    d1_base_report,
    d1_relative_report,
    verify_chart_splitting,
    verify_ker_d_claims,
    verify_relative_forms_collapse,
)
from segrecone.errors import EngineError


def test_chart_images_match_generator_coordinates():
    assert CHART_IMAGES == {0: (1, 0, 0), 1: (1, 1, 1), 2: (1, 1, 0),
                            3: (1, 0, 1)}


def test_chart_grade():
    # x^e y3^by y4^cy with e = (e1, e2, e3, e4) over the cone variables
    assert chart_grade((1, 0, 0, 0)) == (1, 0, 0)
    assert chart_grade((0, 1, 0, 0)) == (1, 1, 1)
    assert chart_grade((0, 0, 1, 1), by=1, cy=2) == (2, 2, 3)


def test_base_cotangent_in_one_variable():
    for n in (2, 3, 4, 5):
        v = d1_base_report(n)
        assert v.ok
        assert v.details["dim_per_y_monomial"] == n - 1
        assert v.details["kernel_exponents"] == list(range(n + 1, 2 * n))
        assert v.details["model"] == f"(x^{n + 1})/(x^{2 * n})"
    assert d1_base_report(1).ok
    assert d1_base_report(1).details["dim_per_y_monomial"] == 0
    with pytest.raises(EngineError):
        d1_base_report(0)


def test_relative_cotangent_ring_vs_model():
    for n in (2, 3):
        v = d1_relative_report(n, ybound=4)
        assert v.ok
        slices = v.details["slices"]
        assert slices  # nonempty: the conormal module is not zero
        for rec in slices.values():
            assert rec["conormal_ring"] == rec["conormal_model"]
            assert rec["d1_ring"] == rec["d1_model"]
        assert any(rec["d1_ring"] > 0 for rec in slices.values())


def test_restriction_kernel_tower_vanishes_at_window_one():
    v = beta_kernel_system(4)
    assert v.ok
    assert v.details["window"] == 1
    assert v.details["kernel_class_dims"] == {2: 0, 3: 0, 4: 0}
    assert v.details["kernel_vectors_checked"] > 0
    with pytest.raises(EngineError):
        beta_kernel_system(1)


def test_chart_splitting():
    v = verify_chart_splitting(2)
    assert v.ok
    assert v.details["mismatches"] == {}
    assert verify_chart_splitting(3, mmax=2, ybound=3).ok


def test_ker_d_claims():
    v = verify_ker_d_claims(2)
    assert v.ok
    assert v.details["mismatches"] == {}
    with pytest.raises(EngineError):
        verify_ker_d_claims(1)


def test_relative_forms_collapse():
    v = verify_relative_forms_collapse(2, ybound=4)
    assert v.ok
    assert v.details["mismatches"] == {}
    assert len(v.details["witnesses"]) == 3
    assert v.details["witnesses"][0] == {
        "relation": "d(y3^0 (x3 - y3 x1))", "hits": "-x1 y3^0 dy3"}
