import pytest

from weierquartic.autgroup import element_order
from weierquartic.catalog import (
    EXCEPTIONAL,
    T0,
    CurveId,
    build_curve,
    classify_parameter,
    parse_parameter,
    pencil,
    pencil_generators,
    phi,
)

from conftest import X, Y, Z


def test_build_curve_named():
    assert build_curve("fermat").allclose(X**4 + Y**4 + Z**4, 0)
    assert build_curve("klein").allclose(X**3 * Y + Y**3 * Z + Z**3 * X, 0)
    assert build_curve("picard").allclose(X**4 + Y**4 + Z**3 * X, 0)
    assert build_curve("c3").allclose(pencil(3), 0)
    with pytest.raises(ValueError):
        build_curve("hyperelliptic")


def test_pencil_zero_is_fermat():
    assert pencil(0).coeffs == build_curve("fermat").coeffs


def test_pencil_monomials():
    assert len(pencil(0).coeffs) == 3
    assert len(pencil(1.5 - 2j).coeffs) == 6
    assert pencil(2).coefficient(2, 0, 2) == 2


def test_curve_id():
    assert str(CurveId.pencil(1)) == "pencil(1+0j)"
    assert str(CurveId.pencil(complex(0.5, -0.25))) == "pencil(0.5-0.25j)"
    assert CurveId.named("c3").pencil_parameter == 3
    assert CurveId.named("klein").pencil_parameter is None
    with pytest.raises(ValueError):
        CurveId.named("nope")


def test_generator_orders():
    a, b = pencil_generators()
    assert element_order(a) == 4
    assert element_order(b) == 2
    assert element_order(phi()) == 4


def test_parse_parameter():
    assert parse_parameter("1.5") == 1.5
    assert parse_parameter("-1", "7") == complex(-1, 7)
    assert parse_parameter("-1.5", "10.5") == T0
    with pytest.raises(ValueError):
        parse_parameter("abc")


@pytest.mark.parametrize("t", EXCEPTIONAL)
def test_classify_singular(t):
    assert classify_parameter(t).verdict == "singular"


@pytest.mark.parametrize("t", [1, 0, 3, 0.5 + 0.5j])
def test_classify_smooth(t):
    assert classify_parameter(t).verdict == "smooth"


def test_classify_near_singular():
    res = classify_parameter(2 + 1e-5)
    assert res.verdict == "near-singular"
    assert str(res).startswith("near-singular(")


def test_near_singular_distance_shrinks():
    d = [classify_parameter(2 + h).distance for h in (1e-2, 1e-3, 1e-4)]
    assert d[0] > d[1] > d[2]
