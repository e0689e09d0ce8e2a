"""
Homogeneous trivariate polynomials with complex coefficients.

Polynomials are stored as a map from exponent triples ``(i, j, k)`` to
coefficients of ``x**i * y**j * z**k``. Everything here is small (quartics,
their Hessian sextics) so the representation favours clarity over speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .errors import ChartDegenerate, SharedComponent

DROP_TOL = 1e-12

AXES = {"x": 0, "y": 1, "z": 2}


def _axis_index(axis) -> int:
    if isinstance(axis, str):
        return AXES[axis]
    if axis not in (0, 1, 2):
        raise ValueError(f"bad axis {axis!r}")
    return int(axis)


def _clean(coeffs: Mapping, drop_tol: float) -> dict:
    items = {tuple(int(e) for e in k): complex(v) for k, v in coeffs.items()}
    if not items:
        return {}
    top = max(abs(v) for v in items.values())
    if top == 0.0:
        return {}
    cut = drop_tol * top
    return {k: v for k, v in sorted(items.items()) if abs(v) > cut}


@dataclass(frozen=True, eq=False)
class HomPoly3:
    """A homogeneous polynomial in x, y, z.

    Coefficients whose modulus falls below ``drop_tol`` times the largest
    one are discarded on construction, so an empty map means the zero
    polynomial.
    """

    degree: int
    coeffs: dict = field(default_factory=dict)
    drop_tol: float = DROP_TOL

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        cleaned = _clean(self.coeffs, self.drop_tol)
        for e in cleaned:
            if len(e) != 3 or min(e) < 0 or sum(e) != self.degree:
                raise ValueError(f"exponent {e} is not of degree {self.degree}")
        object.__setattr__(self, "coeffs", cleaned)
        exps = np.array(list(cleaned), dtype=int).reshape(-1, 3)
        vals = np.array(list(cleaned.values()), dtype=complex)
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "_vals", vals)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "HomPoly3":
        return cls(degree, {})

    @classmethod
    def monomial(cls, i: int, j: int, k: int, c: complex = 1.0) -> "HomPoly3":
        return cls(i + j + k, {(i, j, k): c})

    @classmethod
    def linear(cls, a, b, c) -> "HomPoly3":
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exponents(self) -> np.ndarray:
        return self._exps

    @property
    def values(self) -> np.ndarray:
        return self._vals

    def coefficient(self, i: int, j: int, k: int) -> complex:
        return self.coeffs.get((i, j, k), 0j)

    def norm(self) -> float:
        """Largest coefficient modulus."""
        return float(np.max(np.abs(self._vals))) if self.coeffs else 0.0

    def __repr__(self):
        if self.is_zero:
            return f"HomPoly3(degree={self.degree}, 0)"
        terms = []
        for (i, j, k), c in self.coeffs.items():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip("xyz", (i, j, k)) if e
            )
            terms.append(f"({c:.6g})" + (f"*{mono}" if mono else ""))
        return f"HomPoly3({' + '.join(terms)})"

    # -- evaluation ---------------------------------------------------------

    def __call__(self, v) -> complex | np.ndarray:
        return evaluate(self, v)

    def magnitude(self, v) -> float | np.ndarray:
        """Sum of |c| times max|v_i|**degree, the scale for relative residuals."""
        v = np.asarray(v, dtype=complex)
        top = np.max(np.abs(v), axis=-1)
        return np.sum(np.abs(self._vals)) * top**self.degree

    def residual(self, v) -> float | np.ndarray:
        """|F(v)| relative to the monomial magnitude at v."""
        num = np.abs(evaluate(self, v))
        den = self.magnitude(v)
        return num / np.where(den > 0, den, 1.0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HomPoly3):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add polynomials of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0j) + v
        return HomPoly3(self.degree, _cancel(out, self, other), self.drop_tol)

    def __neg__(self):
        return HomPoly3(self.degree, {k: -v for k, v in self.coeffs.items()}, self.drop_tol)

    def __sub__(self, other):
        if not isinstance(other, HomPoly3):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomPoly3):
            out: dict = {}
            for (a, ca), (b, cb) in product(self.coeffs.items(), other.coeffs.items()):
                key = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
                out[key] = out.get(key, 0j) + ca * cb
            return HomPoly3(self.degree + other.degree, out, self.drop_tol)
        if np.isscalar(other):
            return HomPoly3(self.degree, {k: v * other for k, v in self.coeffs.items()}, self.drop_tol)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = HomPoly3(0, {(0, 0, 0): 1.0})
        for _ in range(n):
            out = out * self
        return out

    def allclose(self, other: "HomPoly3", tol: float = 1e-10) -> bool:
        """Coefficientwise comparison relative to the larger norm."""
        if self.is_zero and other.is_zero:
            return True
        scale = max(self.norm(), other.norm())
        keys = set(self.coeffs) | set(other.coeffs)
        return all(
            abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j)) <= tol * scale
            for k in keys
        )

    # -- calculus -----------------------------------------------------------

    def partial(self, axis) -> "HomPoly3":
        return partial(self, axis)

    def substitute(self, A) -> "HomPoly3":
        """The polynomial ``v -> F(A @ v)`` for a 3x3 matrix ``A``."""
        A = np.asarray(A, dtype=complex)
        rows = [HomPoly3.linear(*A[r]) for r in range(3)]
        powers = [[HomPoly3(0, {(0, 0, 0): 1.0})] for _ in range(3)]
        for r in range(3):
            for _ in range(self.degree):
                powers[r].append(powers[r][-1] * rows[r])
        out = HomPoly3(self.degree, {}, self.drop_tol)
        for (i, j, k), c in self.coeffs.items():
            out = out + (powers[0][i] * powers[1][j] * powers[2][k]) * c
        return out

    def normalized(self) -> "HomPoly3":
        """Scaled so the largest coefficient modulus is 1."""
        n = self.norm()
        return self if n == 0 else self * (1.0 / n)


def _cancel(out: dict, a: HomPoly3, b: HomPoly3) -> dict:
    # drop results of catastrophic cancellation relative to the inputs
    scale = max(a.norm(), b.norm())
    return {k: v for k, v in out.items() if abs(v) > a.drop_tol * scale}


def evaluate(F: HomPoly3, v) -> complex | np.ndarray:
    """Evaluate F at a point or at a stack of points of shape (..., 3)."""
    v = np.asarray(v, dtype=complex)
    if F.is_zero:
        return np.zeros(v.shape[:-1], dtype=complex) if v.ndim > 1 else 0j
    mons = np.prod(v[..., None, :] ** F.exponents, axis=-1)
    out = mons @ F.values
    return complex(out) if v.ndim == 1 else out


def partial(F: HomPoly3, axis) -> HomPoly3:
    """Formal partial derivative. Degree-0 input gives the zero polynomial."""
    a = _axis_index(axis)
    if F.degree == 0:
        return HomPoly3.zero(0)
    out = {}
    for e, c in F.coeffs.items():
        if e[a] == 0:
            continue
        d = list(e)
        d[a] -= 1
        out[tuple(d)] = c * e[a]
    return HomPoly3(F.degree - 1, out, F.drop_tol)


def gradient(F: HomPoly3) -> tuple[HomPoly3, HomPoly3, HomPoly3]:
    return partial(F, 0), partial(F, 1), partial(F, 2)


def hessian_matrix(F: HomPoly3) -> list[list[HomPoly3]]:
    g = gradient(F)
    return [[partial(g[i], j) for j in range(3)] for i in range(3)]


def hessian_det(F: HomPoly3) -> HomPoly3:
    """Determinant of the matrix of second partials, of degree 3*(deg F - 2)."""
    if F.degree < 2:
        raise ValueError("Hessian needs degree >= 2")
    H = hessian_matrix(F)
    d = 3 * (F.degree - 2)

    def mul(*ps):
        out = ps[0]
        for p in ps[1:]:
            out = out * p
        return out

    terms = [
        mul(H[0][0], H[1][1], H[2][2]),
        mul(H[0][1], H[1][2], H[2][0]),
        mul(H[0][2], H[1][0], H[2][1]),
        -mul(H[0][2], H[1][1], H[2][0]),
        -mul(H[0][0], H[1][2], H[2][1]),
        -mul(H[0][1], H[1][0], H[2][2]),
    ]
    acc: dict = {}
    for t in terms:
        if t.degree != d and not t.is_zero:
            raise AssertionError("degree bookkeeping")
        for k, v in t.coeffs.items():
            acc[k] = acc.get(k, 0j) + v
    scale = max((t.norm() for t in terms), default=0.0)
    acc = {k: v for k, v in acc.items() if abs(v) > F.drop_tol * scale}
    return HomPoly3(d, acc, F.drop_tol)


# ---------------------------------------------------------------------------
# univariate polynomials and elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Univariate polynomial, coefficients lowest degree first.

    Trailing coefficients below ``drop_tol`` times the largest modulus are
    trimmed; a polynomial with no surviving coefficient is flagged zero.
    """

    coeffs: np.ndarray
    drop_tol: float = DROP_TOL

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        top = np.max(np.abs(c)) if c.size else 0.0
        if top == 0.0:
            c = np.zeros(1, dtype=complex)
        else:
            keep = np.nonzero(np.abs(c) > self.drop_tol * top)[0]
            c = c[: keep[-1] + 1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else self.coeffs.size - 1

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def derivative(self) -> "UniPoly":
        if self.coeffs.size == 1:
            return UniPoly(np.zeros(1))
        return UniPoly(self.coeffs[1:] * np.arange(1, self.coeffs.size))


def univariate_coeffs(F: HomPoly3, var: int, fixed: dict) -> np.ndarray:
    """Coefficients (lowest first) of F as a polynomial in ``var`` once the
    other two variables are replaced by the numbers in ``fixed``."""
    out = np.zeros(F.degree + 1, dtype=complex)
    others = [a for a in range(3) if a != var]
    for e, c in F.coeffs.items():
        term = c
        for a in others:
            term = term * complex(fixed[a]) ** e[a]
        out[e[var]] += term
    return out


def sylvester_matrix(f: Sequence[complex], g: Sequence[complex]) -> np.ndarray:
    """Sylvester matrix of two univariate polynomials given lowest-first.

    Row layout follows the usual convention: deg g shifted copies of f
    followed by deg f shifted copies of g, highest power in the first column.
    """
    f = np.asarray(f, dtype=complex)[::-1]
    g = np.asarray(g, dtype=complex)[::-1]
    m, n = f.size - 1, g.size - 1
    S = np.zeros((m + n, m + n), dtype=complex)
    for r in range(n):
        S[r, r : r + m + 1] = f
    for r in range(m):
        S[n + r, r : r + n + 1] = g
    return S


def _resultant_by_roots(f: np.ndarray, g: np.ndarray) -> tuple[complex, float]:
    """Res(f, g) from the roots of the lower degree factor, and the smallest
    relative value of the other factor at those roots.

    Equals the Sylvester determinant but avoids its cancellation when the
    coefficients are badly scaled. The second number is near zero exactly
    when f and g share a root.
    """
    m, n = f.size - 1, g.size - 1
    sign = 1.0
    if m > n:
        f, g, m, n = g, f, n, m
        sign = (-1.0) ** (m * n)
    if m == 0:
        return sign * f[0] ** n, 1.0
    alpha = np.roots(f[::-1])
    vals = np.polyval(g[::-1], alpha)
    mags = np.abs(g) @ (np.abs(alpha)[None, :] ** np.arange(n + 1)[:, None])
    rel = float(np.min(np.abs(vals) / np.maximum(mags, 1e-300)))
    return sign * f[-1] ** n * np.prod(vals), rel


def eliminate(
    F: HomPoly3,
    G: HomPoly3,
    chart: int = 2,
    kept: int = 0,
    *,
    radius: float = 2.0,
    center: complex = 0.0,
    extra_nodes: int = 8,
    max_reselect: int = 4,
) -> UniPoly:
    """Resultant of F and G after dehomogenizing in ``chart``.

    The variable that is neither ``chart`` nor ``kept`` is eliminated. The
    resultant is recovered by evaluation and interpolation: values at scaled
    roots of unity, each taken as a product over the roots of one factor,
    inverted with an FFT. The nodes lie on the circle |x - center| = radius
    and the result is a polynomial in x - center; choosing the circle to
    surround the roots keeps the coefficients well conditioned.

    Raises ``ChartDegenerate`` if either polynomial loses its degree in the
    eliminated variable, and ``SharedComponent`` if the resultant vanishes
    identically.
    """
    if chart == kept:
        raise ValueError("chart and kept variable must differ")
    elim = 3 - chart - kept
    degF = max((e[elim] for e in F.coeffs), default=-1)
    degG = max((e[elim] for e in G.coeffs), default=-1)
    if degF < 0 or degG < 0:
        raise ChartDegenerate("a polynomial vanishes in this chart")
    if degF == 0 and degG == 0:
        raise ChartDegenerate("nothing to eliminate")
    bound = F.degree * G.degree
    n = bound + 1 + extra_nodes

    def coeffs_at(P, s):
        return univariate_coeffs(P, elim, {chart: 1.0, kept: s})[: max(e[elim] for e in P.coeffs) + 1]

    for attempt in range(max_reselect):
        offset = attempt * 0.6180339887498949 * 2 * np.pi / n
        nodes = center + radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + offset))
        vals = np.empty(n, dtype=complex)
        closeness = np.empty(n)
        collapsed = False
        for idx, s in enumerate(nodes):
            fc, gc = coeffs_at(F, s), coeffs_at(G, s)
            if abs(fc[-1]) <= 1e-10 * np.max(np.abs(fc)) or abs(gc[-1]) <= 1e-10 * np.max(np.abs(gc)):
                collapsed = True
                break
            vals[idx], closeness[idx] = _resultant_by_roots(fc, gc)
        if not collapsed:
            break
    else:
        raise ChartDegenerate("leading coefficient collapses at every node set")

    if np.all(closeness <= 1e-10):
        raise SharedComponent("resultant vanishes identically")
    raw = np.fft.fft(vals) / n
    # nodes are center + shift * w**j with w = exp(2 pi i / n), so fft(vals)[k] = n c_k shift**k
    k = np.arange(n)
    shift = radius * np.exp(1j * offset)
    coeffs = raw / shift**k
    scaled = np.abs(coeffs) * radius**k
    cut = 1e-10 * np.max(scaled)
    if np.any(scaled[bound + 1 :] > 1e3 * cut):
        raise ChartDegenerate("interpolation aliasing above the Bezout bound")
    coeffs = coeffs[: bound + 1]
    scaled = scaled[: bound + 1]
    keep = np.nonzero(scaled > cut)[0]
    return UniPoly(coeffs[: keep[-1] + 1], drop_tol=0.0)
