"""
Points and lines of the complex projective plane, curve intersection with
multiplicities, smoothness, tangent lines and contact orders.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChartDegenerate,
    ClusterAmbiguity,
    IncompleteIntersection,
    NonConvergence,
    PolishDivergence,
    SharedComponent,
    SingularPointError,
)
from .polyalg import HomPoly3, eliminate, gradient, partial, univariate_coeffs
from .roots import aberth_roots, cluster, polish_pair

log = logging.getLogger(__name__)

TIE_TOL = 1e-9
CERT_TOL = 1e-8
CONTACT_TOL = 1e-7


def normalize(v) -> np.ndarray:
    """Scale so the coordinate of largest modulus is exactly 1.

    Moduli within ``TIE_TOL`` of the maximum count as ties; the last such
    index wins.
    """
    v = np.asarray(v, dtype=complex)
    m = np.abs(v)
    top = m.max()
    if top == 0:
        raise ValueError("the zero vector is not a projective point")
    idx = int(np.nonzero(m >= top * (1 - TIE_TOL))[0][-1])
    out = v / v[idx]
    out[idx] = 1.0
    return out


def chordal(a, b) -> float:
    """Sine of the angle between two lines through the origin of C^3.

    Independent of representatives; computed from the 2x2 minors so that
    nearby points keep full relative precision.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    w = np.array([a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]])
    return float(np.linalg.norm(w))


def chordal_to_many(points, b) -> np.ndarray:
    """``chordal`` from each row of ``points`` to ``b``."""
    A = np.asarray(points, dtype=complex)
    A = A / np.linalg.norm(A, axis=1, keepdims=True)
    b = np.asarray(b, dtype=complex)
    b = b / np.linalg.norm(b)
    w = np.stack([
        A[:, 0] * b[1] - A[:, 1] * b[0],
        A[:, 0] * b[2] - A[:, 2] * b[0],
        A[:, 1] * b[2] - A[:, 2] * b[1],
    ], axis=1)
    return np.linalg.norm(w, axis=1)


@dataclass(frozen=True, eq=False)
class ProjPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = normalize(self.coords)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __iter__(self):
        return iter(self.coords)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def distance(self, other) -> float:
        return chordal(self.coords, np.asarray(other))

    def close_to(self, other, eps: float = 1e-6) -> bool:
        return self.distance(other) <= eps

    def sort_key(self) -> tuple:
        return tuple(v for c in self.coords for v in (round(c.real, 9) + 0.0, round(c.imag, 9) + 0.0))

    def __repr__(self):
        return "[" + " : ".join(f"{c:.6g}" for c in self.coords) + "]"


class ProjLine(ProjPoint):
    """The line a*x + b*y + c*z = 0, stored like a point of the dual plane."""

    def __call__(self, v) -> complex:
        return complex(np.dot(self.coords, np.asarray(v, dtype=complex)))

    def __repr__(self):
        a, b, c = self.coords
        return f"ProjLine({a:.6g}*x + {b:.6g}*y + {c:.6g}*z)"


@dataclass(frozen=True, eq=False)
class IntersectionPoint:
    point: ProjPoint
    multiplicity: int
    residuals: tuple[float, float] = (0.0, 0.0)
    members: int = field(default=1, repr=False)


def generic_frame(seed: int) -> np.ndarray:
    """A deterministic pseudo-random unitary matrix."""
    rng = np.random.default_rng(20_231 + 7919 * seed)
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    Q, R = np.linalg.qr(M)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def _chart_evaluator(P: HomPoly3, grads):
    """(x, y) -> (P, P_x, P_y, scale) on the chart z = 1."""

    def fn(x, y):
        v = np.array([x, y, 1.0], dtype=complex)
        return P(v), grads[0](v), grads[1](v), P.magnitude(v)

    return fn


@dataclass
class _Candidate:
    chart_xy: tuple
    point: np.ndarray  # in original coordinates
    residual: float
    singular: bool


def _eliminant_roots(Fr: HomPoly3, Gr: HomPoly3, expected: int, passes: int = 5) -> np.ndarray:
    """Roots of the eliminant in x, re-centring the interpolation circle on
    the current root estimates.

    Roots bunched in an annulus away from the origin are badly conditioned
    in the monomial basis; expanding around their median and scaling by
    their spread restores accuracy.
    """
    center, radius = 0j, 2.0
    xs = None
    for _ in range(passes):
        try:
            elim = eliminate(Fr, Gr, chart=2, kept=0, center=center, radius=radius)
        except ChartDegenerate:
            # a tight circle around a multiple root loses the values to cancellation
            if xs is None:
                raise
            break
        if elim.degree < expected:
            raise ChartDegenerate(f"eliminant degree {elim.degree} < {expected}: points at infinity")
        if elim.degree == 0:
            return np.empty(0, dtype=complex)
        xs = aberth_roots(elim) + center
        c = complex(np.median(xs.real), np.median(xs.imag))
        r = max(1.5 * float(np.median(np.abs(xs - c))), 0.05 * max(1.0, abs(c)))
        if abs(c - center) <= 0.05 * radius and abs(r - radius) <= 0.2 * radius:
            break
        center, radius = c, r
    return xs


def _candidates_in_frame(F: HomPoly3, G: HomPoly3, U: np.ndarray, *, polish_tol: float):
    """Eliminate, solve, back-substitute and polish in the frame ``U``.

    Returns one candidate per eliminant root (with repetition) plus the
    transformed polynomials.
    """
    Fr, Gr = F.substitute(U).normalized(), G.substitute(U).normalized()
    xs = _eliminant_roots(Fr, Gr, F.degree * G.degree)
    fg, gg = gradient(Fr), gradient(Gr)
    fe, ge = _chart_evaluator(Fr, fg), _chart_evaluator(Gr, gg)
    out = []
    low, high = (Fr, Gr) if Fr.degree <= Gr.degree else (Gr, Fr)
    for x0 in xs:
        yc = univariate_coeffs(low, 1, {0: x0, 2: 1.0})
        ys = aberth_roots(yc)
        pts = np.stack([np.full(ys.shape, x0), ys, np.ones(ys.shape)], axis=1)
        y0 = ys[int(np.argmin(high.residual(pts)))]
        res = polish_pair(fe, ge, (x0, y0), tol=polish_tol)
        x1, y1 = res.point
        if res.singular:
            # members of a multiple point stall about sqrt(eps) apart; deflation
            # pulls each of them onto the multiple point itself
            (x2, y2), good = _refine_multiple(Fr, Gr, (x1, y1))
            if good and abs(x2 - x1) + abs(y2 - y1) <= 1e-3 * max(1.0, abs(x1), abs(y1)):
                x1, y1 = x2, y2
        w = np.array([x1, y1, 1.0])
        out.append(_Candidate((complex(x1), complex(y1)), U @ w, res.residual, res.singular))
    return out, Fr, Gr


def _refine_multiple(Fr: HomPoly3, Gr: HomPoly3, xy, max_iter: int = 30):
    """Refine a multiple intersection by deflation.

    Unknowns (x, y, n1, n2): f = g = 0, J(x, y) n = 0, r . n = 1, solved by
    Gauss-Newton. The augmented system is regular at a double point even
    though (f, g) is not.
    """
    fg, gg = gradient(Fr), gradient(Gr)
    fh = [[partial(fg[i], j) for j in range(2)] for i in range(2)]
    gh = [[partial(gg[i], j) for j in range(2)] for i in range(2)]
    x, y = xy
    v = np.array([x, y, 1.0])
    J = np.array([[fg[0](v), fg[1](v)], [gg[0](v), gg[1](v)]])
    _, _, Vh = np.linalg.svd(J)
    n = Vh[-1].conj()
    r = np.array([0.6 + 0.3j, -0.2 + 0.7j])
    n = n / (r @ n)
    z = np.array([x, y, n[0], n[1]], dtype=complex)
    last = np.inf
    for _ in range(max_iter):
        v = np.array([z[0], z[1], 1.0])
        fx, fy = fg[0](v), fg[1](v)
        gx, gy = gg[0](v), gg[1](v)
        Hf = np.array([[fh[i][j](v) for j in range(2)] for i in range(2)])
        Hg = np.array([[gh[i][j](v) for j in range(2)] for i in range(2)])
        nn = z[2:]
        resid = np.array([
            Fr(v) / max(Fr.magnitude(v), 1e-300),
            Gr(v) / max(Gr.magnitude(v), 1e-300),
            fx * nn[0] + fy * nn[1],
            gx * nn[0] + gy * nn[1],
            r @ nn - 1.0,
        ])
        sf, sg = max(Fr.magnitude(v), 1e-300), max(Gr.magnitude(v), 1e-300)
        Jac = np.zeros((5, 4), dtype=complex)
        Jac[0, :2] = [fx / sf, fy / sf]
        Jac[1, :2] = [gx / sg, gy / sg]
        Jac[2, :2] = Hf @ nn
        Jac[2, 2:] = [fx, fy]
        Jac[3, :2] = Hg @ nn
        Jac[3, 2:] = [gx, gy]
        Jac[4, 2:] = r
        step = np.linalg.lstsq(Jac, resid, rcond=None)[0]
        z = z - step
        size = float(np.linalg.norm(step[:2]))
        if size <= 1e-15 * max(1.0, abs(z[0]), abs(z[1])):
            return (complex(z[0]), complex(z[1])), True
        if size > 2 * last and last < 1e-6:
            break
        last = size
    return (complex(z[0]), complex(z[1])), last < 1e-10


def _phase_mean(members) -> np.ndarray:
    ref = normalize(members[0])
    acc = np.zeros(3, dtype=complex)
    for m in members:
        m = np.asarray(m, dtype=complex)
        a = np.vdot(m, ref)
        acc += m * (a / abs(a)) / np.linalg.norm(m) * np.linalg.norm(ref)
    return normalize(acc / len(members))


def intersect(
    F: HomPoly3,
    G: HomPoly3,
    *,
    eps: float = 1e-6,
    polish_tol: float = 1e-12,
    cert_tol: float = CERT_TOL,
    max_frames: int = 4,
) -> list[IntersectionPoint]:
    """All intersection points of two plane curves with multiplicities.

    The computation runs in a generic unitary frame so that no two points
    share an x coordinate and none lies at infinity; if the Bezout count is
    not met the next frame is tried. Points are returned sorted by their
    normalized coordinates.
    """
    expected = F.degree * G.degree
    if expected == 0:
        return []
    problems = []
    shared = 0
    for seed in range(max_frames):
        U = generic_frame(seed)
        try:
            cands, Fr, Gr = _candidates_in_frame(F, G, U, polish_tol=polish_tol)
        except SharedComponent as exc:
            shared += 1
            problems.append(str(exc))
            continue
        except (ChartDegenerate, NonConvergence, PolishDivergence) as exc:
            problems.append(f"frame {seed}: {exc}")
            continue
        pts = [c.point for c in cands]
        try:
            groups = cluster(pts, eps, metric=chordal, center=_phase_mean)
        except ClusterAmbiguity as exc:
            problems.append(f"frame {seed}: {exc}")
            continue
        out = []
        ok = True
        for grp in groups:
            members = [cands[i] for i in grp.members]
            center = grp.center
            if grp.multiplicity > 1:
                if not any(m.singular for m in members):
                    # regular Jacobian everywhere: distinct seeds fell onto one simple point
                    ok = False
                    problems.append(f"frame {seed}: spurious multiplicity {grp.multiplicity} at {center}")
                    break
                xy = tuple(np.mean([m.chart_xy for m in members], axis=0))
                (x1, y1), good = _refine_multiple(Fr, Gr, xy)
                cand = U @ np.array([x1, y1, 1.0])
                if good and chordal(cand, center) <= max(10 * grp.radius, eps):
                    center = normalize(cand)
            rf, rg = float(F.residual(center)), float(G.residual(center))
            if max(rf, rg) > cert_tol:
                ok = False
                problems.append(f"frame {seed}: residual {max(rf, rg):.2e} at {center}")
                break
            out.append(IntersectionPoint(ProjPoint(center), grp.multiplicity, (rf, rg), len(members)))
        if not ok:
            continue
        total = sum(p.multiplicity for p in out)
        if total != expected:
            problems.append(f"frame {seed}: total multiplicity {total} != {expected}")
            continue
        return sorted(out, key=lambda p: p.point.sort_key())
    if shared == max_frames:
        raise SharedComponent("the curves share a component")
    raise IncompleteIntersection("; ".join(problems))


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessResult:
    smooth: bool
    witness: ProjPoint | None
    min_gradient: float

    def __bool__(self):
        return self.smooth


def gradient_size(F: HomPoly3, v) -> float:
    """|grad F(v)| relative to the coefficient norm, with v normalized."""
    v = normalize(v)
    g = np.array([p(v) for p in gradient(F)])
    return float(np.linalg.norm(g) / (F.degree * F.norm()))


def _line_witness(F: HomPoly3, seed: int = 0) -> np.ndarray:
    """A point of a generic line minimizing |grad F|.

    When the partials share a component, that component meets every line,
    so the best point along the line where one partial vanishes is a
    singular point.
    """
    U = generic_frame(100 + seed)
    p, q = U[:, 0], U[:, 1]
    dF = gradient(F)
    target = max(dF, key=lambda P: P.norm())
    # restrict target to s*p + q
    n = target.degree + 1 + 4
    s = 2.0 * np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.array([target(si * p + q) for si in s])
    coeffs = np.fft.fft(vals) / n / 2.0 ** np.arange(n)
    coeffs = coeffs[: target.degree + 1]
    roots = aberth_roots(coeffs) if np.abs(coeffs[1:]).max() > 1e-12 * np.abs(coeffs).max() else np.empty(0)
    cands = [r * p + q for r in roots] + [p]
    return min(cands, key=lambda v: gradient_size(F, v))


def is_smooth(F: HomPoly3, *, singular_tol: float = 1e-8) -> SmoothnessResult:
    """Decide whether the curve F = 0 is smooth.

    Two partials are intersected and the gradient is tested at every
    intersection point. Pairs of partials sharing a component are skipped;
    if every pair does, the common component is itself singular and a
    witness is found on a generic line.
    """
    if F.degree < 1:
        raise ValueError("degree must be >= 1")
    if F.degree == 1:
        return SmoothnessResult(True, None, gradient_size(F, [1, 0, 0]))
    dF = gradient(F)
    pairs = [(0, 1), (0, 2), (1, 2)]
    for seed in range(3):
        U = generic_frame(50 + seed)
        for a, b in pairs:
            if dF[a].is_zero or dF[b].is_zero:
                continue
            try:
                cands, _, _ = _candidates_in_frame(dF[a], dF[b], U, polish_tol=1e-14)
            except SharedComponent:
                continue
            except (ChartDegenerate, NonConvergence, PolishDivergence):
                break
            if not cands:
                continue
            sizes = [gradient_size(F, c.point) for c in cands]
            i = int(np.argmin(sizes))
            if sizes[i] <= singular_tol:
                return SmoothnessResult(False, ProjPoint(cands[i].point), sizes[i])
            return SmoothnessResult(True, None, sizes[i])
        else:
            w = _line_witness(F)
            return SmoothnessResult(False, ProjPoint(w), gradient_size(F, w))
    raise IncompleteIntersection("smoothness test failed in every frame")


# ---------------------------------------------------------------------------
# tangents and contact
# ---------------------------------------------------------------------------


def on_curve(F: HomPoly3, P, tol: float = CERT_TOL) -> bool:
    return float(F.residual(np.asarray(P, dtype=complex))) <= tol


def tangent_line(F: HomPoly3, P, tol: float = 1e-10) -> ProjLine:
    v = np.asarray(P, dtype=complex)
    if not on_curve(F, v):
        raise ValueError(f"{P} is not on the curve")
    g = np.array([d(normalize(v)) for d in gradient(F)])
    if gradient_size(F, v) <= tol:
        raise SingularPointError(f"gradient vanishes at {P}")
    return ProjLine(g)


def restrict_to_line(F: HomPoly3, P, d) -> np.ndarray:
    """Coefficients (lowest first) of s -> F(P + s d)."""
    P = np.asarray(P, dtype=complex)
    d = np.asarray(d, dtype=complex)
    n = F.degree + 1
    m = 2 * n
    s = np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.array([F(P + si * d) for si in s])
    return (np.fft.fft(vals) / m)[:n]


def contact_order(F: HomPoly3, L: ProjLine, P, tol: float = CONTACT_TOL) -> int:
    """Order of vanishing at P of F restricted to the line L."""
    P = np.asarray(P, dtype=complex)
    P = P / np.linalg.norm(P)
    a = np.asarray(L.coords, dtype=complex)
    # direction on the line orthogonal to P
    basis = np.linalg.svd(a.reshape(1, 3))[2][1:].conj()
    d = basis[0] - np.vdot(P, basis[0]) * P
    if np.linalg.norm(d) < 0.5:
        d = basis[1] - np.vdot(P, basis[1]) * P
    d = d / np.linalg.norm(d)
    c = restrict_to_line(F, P, d)
    top = np.abs(c).max()
    if top <= 1e-10 * F.norm():
        raise SharedComponent("line is a component of the curve")
    negligible = np.abs(c) < tol * top
    order = int(np.argmax(~negligible))
    if order > F.degree:
        raise SharedComponent("line is a component of the curve")
    return order
