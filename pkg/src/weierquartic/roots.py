"""
Univariate root finding, Newton polishing of 2x2 systems, and clustering
of near-coincident roots into multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ClusterAmbiguity, NonConvergence, PolishDivergence
from .polyalg import UniPoly

EPS = np.finfo(float).eps
# fixed irrational rotation of the starting circle
_START_ANGLE = 0.5 * (np.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class RootCluster:
    center: complex | np.ndarray
    multiplicity: int
    radius: float
    residual: float = 0.0
    members: tuple = ()


def _horner(c: np.ndarray, z: np.ndarray):
    """Value, derivative and backward-error scale of p at each z."""
    p = np.full(z.shape, c[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    az = np.abs(z)
    scale = np.full(z.shape, abs(c[-1]))
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
        scale = scale * az + abs(a)
    return p, dp, scale


def aberth_roots(
    p: UniPoly | Sequence[complex],
    tol: float = 1e-12,
    max_iter: int = 500,
    seed: int = 0,
) -> np.ndarray:
    """All roots of ``p`` by the Aberth-Ehrlich simultaneous iteration.

    Parameters
    ----------
    p : UniPoly or coefficient sequence (lowest degree first)
    tol : float
        Relative correction size at which a root is considered converged.
    max_iter : int
    seed : int
        Rotates the starting circle; use a different seed to retry.

    Returns
    -------
    roots : ndarray of complex, length ``deg p``
        Multiple roots appear as near-coincident values.

    Raises
    ------
    NonConvergence
        If the cap is reached; ``exc.best`` holds the last iterates.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(np.asarray(p, dtype=complex), drop_tol=0.0)
    c = np.asarray(p.coeffs, dtype=complex)
    n = p.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    if n == 1:
        return np.array([-c[0] / c[1]])

    # zero roots are split off exactly
    nz = int(np.argmax(np.abs(c) > 0))
    if nz:
        rest = aberth_roots(UniPoly(c[nz:], drop_tol=0.0), tol, max_iter, seed) if n - nz >= 1 else np.empty(0)
        return np.concatenate([np.zeros(nz, dtype=complex), rest])

    # Fujiwara's bound on the root moduli; unlike 1 + max|c_k / c_n| it
    # scales with the roots, so z**n stays finite
    k = np.arange(n)
    radius = 2.0 * float(np.max(np.abs(c[:-1] / c[-1]) ** (1.0 / (n - k))))
    angles = 2 * np.pi * np.arange(n) / n + _START_ANGLE * (1 + seed)
    z = radius * np.exp(1j * angles)
    active = np.ones(n, dtype=bool)

    for _ in range(max_iter):
        val, der, scale = _horner(c, z)
        # stop a root once its backward error is at rounding level
        done = np.abs(val) <= 8 * n * EPS * scale
        active &= ~done
        if not active.any():
            return z
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = val / der
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        w[~active] = 0.0
        z = z - w
        small = np.abs(w) <= tol * np.maximum(np.abs(z), 1.0)
        active &= ~small
        if not active.any():
            return z
    raise NonConvergence(f"Aberth iteration did not converge in {max_iter} steps", best=z)


# ---------------------------------------------------------------------------
# Newton polishing
# ---------------------------------------------------------------------------

BivariateEvaluator = Callable[[complex, complex], tuple]


@dataclass(frozen=True)
class PolishResult:
    point: tuple[complex, complex]
    residual: float
    singular: bool
    converged: bool
    iterations: int


def _evaluate(fn, x, y):
    out = fn(x, y)
    if len(out) == 3:
        v, dx, dy = out
        return complex(v), complex(dx), complex(dy), 1.0
    v, dx, dy, s = out
    return complex(v), complex(dx), complex(dy), float(s) if s > 0 else 1.0


def polish_pair(
    f: BivariateEvaluator,
    g: BivariateEvaluator,
    seed: tuple[complex, complex],
    tol: float = 1e-12,
    max_iter: int = 100,
    singular_ratio: float = 1e-4,
) -> PolishResult:
    """Newton iteration on the system f = g = 0.

    Each evaluator returns ``(value, d/dx, d/dy)`` or, to get relative
    residuals, ``(value, d/dx, d/dy, scale)``. Near a singular Jacobian the
    step is the least-squares (Gauss-Newton) step with backtracking, and the
    iteration keeps going until it stops improving, since a multiple root
    reaches small residuals long before it reaches small errors.

    The returned point is the best iterate seen, so the residual never
    exceeds that of the seed.
    """
    x, y = complex(seed[0]), complex(seed[1])

    def state(x, y):
        fv, fx, fy, fs = _evaluate(f, x, y)
        gv, gx, gy, gs = _evaluate(g, x, y)
        J = np.array([[fx, fy], [gx, gy]])
        r = np.array([fv, gv])
        res = max(abs(fv) / fs, abs(gv) / gs)
        return r, J, res, np.array([fs, gs])

    r, J, res, sc = state(x, y)
    best = (x, y, res)
    growing = 0
    last_step = np.inf
    stalls = 0
    singular = False
    it = 0
    extra = 0
    for it in range(1, max_iter + 1):
        sv = np.linalg.svd(J, compute_uv=False)
        singular = sv[0] == 0 or sv[-1] <= singular_ratio * sv[0]
        if not singular and res < tol:
            # a small relative residual can hide a visible error when the
            # scale is dominated by large coefficients; two more quadratic
            # steps cost little
            if extra >= 2:
                break
            extra += 1
        rs, Js = r / sc, J / sc[:, None]
        if singular:
            step = np.linalg.lstsq(Js, rs, rcond=1e-14)[0]
        else:
            step = np.linalg.solve(Js, rs)
        lam = 1.0
        while True:
            nx, ny = x - lam * step[0], y - lam * step[1]
            nr, nJ, nres, nsc = state(nx, ny)
            if not singular or nres <= res or lam < 1e-3:
                break
            lam *= 0.5
        step_norm = lam * float(np.linalg.norm(step))
        growing = growing + 1 if step_norm > last_step else 0
        if growing >= 5:
            raise PolishDivergence("Newton steps grew for 5 iterations", last=(nx, ny))
        last_step = step_norm
        x, y, r, J, res, sc = nx, ny, nr, nJ, nres, nsc
        if res < best[2]:
            best = (x, y, res)
            stalls = 0
        else:
            stalls += 1
        scale = max(1.0, abs(x), abs(y))
        if step_norm <= 4 * EPS * scale or res == 0.0:
            break
        if singular and stalls >= 3:
            break
    bx, by, bres = best
    _, Jb, _, _ = state(bx, by)
    sv = np.linalg.svd(Jb, compute_uv=False)
    singular = bool(sv[0] == 0 or sv[-1] <= singular_ratio * sv[0])
    return PolishResult((bx, by), bres, singular, bool(bres < tol or singular), it)


# ---------------------------------------------------------------------------
# clustering
# ---------------------------------------------------------------------------


def euclidean(a, b) -> float:
    return float(np.linalg.norm(np.atleast_1d(a) - np.atleast_1d(b)))


def cluster(
    values: Sequence,
    eps: float = 1e-6,
    metric: Callable = euclidean,
    residuals: Sequence[float] | None = None,
    margin: float = 10.0,
    center: Callable | None = None,
) -> list[RootCluster]:
    """Single-linkage grouping at distance ``eps``.

    Multiplicity is the cluster size, ``center`` the mean of the members
    (or whatever ``center(members)`` returns) and ``radius`` the largest
    member distance from it. Raises ``ClusterAmbiguity`` when two clusters
    are closer than ``margin * eps``.
    """
    vals = [np.asarray(v, dtype=complex) for v in values]
    n = len(vals)
    if n == 0:
        return []
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = metric(vals[i], vals[j])
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if D[i, j] <= eps:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    labels = sorted(groups)
    for a_idx, a in enumerate(labels):
        for b in labels[a_idx + 1 :]:
            gap = D[np.ix_(groups[a], groups[b])].min()
            if gap < margin * eps:
                raise ClusterAmbiguity(
                    f"clusters separated by {gap:.3g} < {margin} * eps = {margin * eps:.3g}"
                )
    out = []
    for lab in labels:
        idx = groups[lab]
        members = [vals[i] for i in idx]
        c = center(members) if center else np.mean(members, axis=0)
        rad = max(metric(m, c) for m in members)
        res = max((residuals[i] for i in idx), default=0.0) if residuals is not None else 0.0
        if np.ndim(c) == 0:
            c = complex(c)
        out.append(RootCluster(c, len(idx), float(rad), float(res), tuple(idx)))
    return out
