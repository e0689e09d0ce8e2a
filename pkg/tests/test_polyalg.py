import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from weierquartic.catalog import pencil
from weierquartic.errors import SharedComponent
from weierquartic.polyalg import (
    HomPoly3,
    UniPoly,
    eliminate,
    evaluate,
    hessian_det,
    partial,
    sylvester_matrix,
)

from conftest import X, Y, Z, random_quartic

# Hessian of x^4+y^4+z^4+(x^2y^2+y^2z^2+z^2x^2), expanded with sympy
HESSIAN_C1 = {
    (0, 0, 6): 48, (0, 2, 4): 312, (0, 4, 2): 312, (0, 6, 0): 48, (2, 0, 4): 312,
    (2, 2, 2): 1440, (2, 4, 0): 312, (4, 0, 2): 312, (4, 2, 0): 312, (6, 0, 0): 48,
}


def test_evaluate_examples():
    F = X**4 + Y**4 + Z**4
    assert evaluate(F, [0, 0, 1]) == 1
    for t in (0, 1, -3, 2.5 + 1j):
        assert evaluate(pencil(t), [0, 0, 1]) == 1
    assert abs(evaluate(pencil(2), [1, -1j, 0])) < 1e-15


def test_evaluate_stack():
    F = pencil(1.5)
    pts = np.array([[1, 2, 3], [0, 1j, 1]], dtype=complex)
    assert np.allclose(F(pts), [F(p) for p in pts])


def test_drop_tolerance_removes_tiny_coefficients():
    F = HomPoly3(2, {(2, 0, 0): 1.0, (0, 2, 0): 1e-14})
    assert F.coeffs == {(2, 0, 0): 1.0}
    assert (X - X).is_zero


def test_bad_exponent_rejected():
    with pytest.raises(ValueError):
        HomPoly3(2, {(1, 0, 0): 1.0})


def test_partial_examples():
    assert partial(X**4, "x").allclose(X**3 * 4)
    d = partial(X**4 + Y**4, "z")
    assert d.is_zero and d.degree == 3
    t = 0.7 - 0.2j
    expected = X**3 * 4 + (X * Y**2 * 2 + Z**2 * X * 2) * t
    assert partial(pencil(t), "x").allclose(expected)
    assert partial(HomPoly3(0, {(0, 0, 0): 5}), 0).is_zero


def test_hessian_examples():
    assert hessian_det(X**4 + Y**4 + Z**4).allclose(X**2 * Y**2 * Z**2 * 1728)
    assert hessian_det(X * Y * Z).allclose(X * Y * Z * 2)
    H = hessian_det(pencil(1))
    assert H.degree == 6
    assert H.allclose(HomPoly3(6, HESSIAN_C1), 1e-13)


def test_hessian_against_cofactor_oracle(rng):
    # independent route: sympy differentiation and determinant, 5 random points
    x, y, z = sp.symbols("x y z")
    f = x**4 + y**4 + z**4 + (x**2 * y**2 + y**2 * z**2 + z**2 * x**2)
    M = sp.Matrix(3, 3, lambda i, j: sp.diff(f, [x, y, z][i], [x, y, z][j]))
    det = sp.lambdify((x, y, z), M.det(method="berkowitz"))
    H = hessian_det(pencil(1))
    for _ in range(5):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        assert abs(H(v) - det(*v)) <= 1e-10 * abs(det(*v))


def test_hessian_needs_degree_two():
    with pytest.raises(ValueError):
        hessian_det(X)


coef = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), coef, st.lists(coef, min_size=3, max_size=3))
def test_homogeneity(seed, lam, v):
    F = random_quartic(np.random.default_rng(seed), degree=seed % 5 + 1)
    v = np.array(v)
    lhs = F(lam * v)
    rhs = lam**F.degree * F(v)
    scale = F.magnitude(lam * v) + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_euler_relation(seed):
    F = random_quartic(np.random.default_rng(seed), degree=seed % 4 + 2)
    lhs = X * partial(F, 0) + Y * partial(F, 1) + Z * partial(F, 2)
    assert lhs.allclose(F * F.degree, 1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_hessian_degree_law(seed):
    d = seed % 3 + 2
    F = random_quartic(np.random.default_rng(seed), degree=d)
    H = hessian_det(F)
    assert not H.is_zero and H.degree == 3 * (d - 2)


def test_hessian_covariance(rng):
    F = pencil(0.3 + 1.1j)
    H = hessian_det(F)
    for _ in range(20):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        lhs = hessian_det(F.substitute(A))(v)
        rhs = np.linalg.det(A) ** 2 * H(A @ v)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_substitute_matches_composition(rng):
    F = random_quartic(rng)
    A = rng.normal(size=(3, 3))
    v = rng.normal(size=3)
    assert np.isclose(F.substitute(A)(v), F(A @ v))


# -- elimination --------------------------------------------------------------


def test_sylvester_convention():
    S = sylvester_matrix([-2.0, 1.0], [-5.0, 1.0])
    # Res(y - 2, y - 5) = 2 - 5
    assert np.isclose(np.linalg.det(S), -3.0)


def test_eliminate_two_lines():
    a, b = 2.0, 5.0
    # y - a z and y - b z; eliminating y in the chart z = 1 keeps x
    r = eliminate(Y - Z * a, Y - Z * b, chart=2, kept=0)
    assert r.degree == 0
    assert np.isclose(r.coeffs[0], a - b)


def test_eliminate_parabola():
    r = eliminate(Y**2 - X * Z, Y * Z, chart=2, kept=0)
    assert r.degree == 1
    assert np.allclose(r.coeffs, [0, -1], atol=1e-12)


def test_eliminate_c1_matches_symbolic_sylvester():
    x, y = sp.symbols("x y")
    f = x**4 + y**4 + 1 + (x**2 * y**2 + y**2 + x**2)
    h = sum(c * x**i * y**j for (i, j, k), c in HESSIAN_C1.items())
    exact = sp.Poly(sp.resultant(f, h, y), x).all_coeffs()[::-1]
    exact = np.array([complex(c) for c in exact])
    r = eliminate(pencil(1), hessian_det(pencil(1)), chart=2, kept=0)
    assert r.degree == 24
    ratio = exact[-1] / r.coeffs[-1]
    assert np.allclose(r.coeffs * ratio, exact, rtol=0, atol=1e-9 * np.abs(exact).max())


def test_eliminate_planted_common_root(rng):
    for _ in range(10):
        r0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        P = np.array([r0[0], r0[1], 1.0])
        polys = []
        for d in (2, 3):
            F = random_quartic(rng, degree=d)
            F = F - HomPoly3(d, {(0, 0, d): F(P)})
            polys.append(F)
        assert abs(polys[0](P)) < 1e-12
        r = eliminate(*polys, chart=2, kept=0)
        scale = np.sum(np.abs(r.coeffs) * abs(r0[0]) ** np.arange(r.coeffs.size))
        assert abs(r(r0[0])) <= 1e-9 * scale


def test_eliminate_shared_component():
    L = X + Y * 2 + Z
    with pytest.raises(SharedComponent):
        eliminate(L * (X - Y), L * (Y + Z * 3), chart=2, kept=0)


def test_unipoly_trims_and_flags_zero():
    p = UniPoly([1, 2, 1e-20])
    assert p.degree == 1
    assert UniPoly([0, 0]).is_zero
    assert UniPoly([0, 0]).degree == -1
    assert p.derivative().coeffs.tolist() == [2]
