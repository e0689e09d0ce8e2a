"""
Weierstrass points of smooth plane quartics, their weights and gap
sequences, orbit structure under a group, and the branch signature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .autgroup import GroupTable, fixed_points_on_curve, orbits
from .errors import NumericalInconsistency, SingularCurveError
from .polyalg import HomPoly3, hessian_det
from .projgeom import ProjPoint, contact_order, intersect, is_smooth, tangent_line

HURWITZ_FACTOR = 84

GAPS = {2: (1, 2, 3), 3: (1, 2, 4), 4: (1, 2, 5)}


def genus(F: HomPoly3) -> int:
    d = F.degree
    return (d - 1) * (d - 2) // 2


@dataclass(frozen=True)
class WeierstrassDatum:
    point: ProjPoint
    weight: int
    gap_sequence: tuple
    stabilizer_order: int = 1
    orbit_id: int = 0


@dataclass(frozen=True)
class Signature:
    quotient_genus: int
    periods: tuple

    def __str__(self):
        return f"({self.quotient_genus}; {', '.join(map(str, self.periods))})"


@dataclass
class CurveReport:
    curve_id: str
    smooth: bool
    group_order: int
    wp_count: int
    weight_histogram: dict
    orbit_sizes: list
    transitive: bool
    signature: Signature
    hurwitz_bound_ok: bool
    points: list = field(default_factory=list)


def weierstrass_points(F: HomPoly3, *, eps: float = 1e-6) -> list[tuple[ProjPoint, int]]:
    """Flexes of a smooth quartic with their weights.

    The weight is the intersection multiplicity with the Hessian curve and
    is checked against the contact order of the tangent line minus 2.
    """
    if F.degree != 4:
        raise ValueError("only plane quartics are supported")
    out = []
    for ip in intersect(F, hessian_det(F), eps=eps):
        w = ip.multiplicity
        if w not in (1, 2):
            raise NumericalInconsistency(f"weight {w} at {ip.point} is outside {{1, 2}}")
        m = contact_order(F, tangent_line(F, ip.point), ip.point)
        if m - 2 != w:
            raise NumericalInconsistency(
                f"multiplicity {w} but contact order {m} at {ip.point}"
            )
        out.append((ip.point, w))
    return out


def gap_sequence(F: HomPoly3, P) -> tuple[int, int, int]:
    m = contact_order(F, tangent_line(F, P), P)
    if m not in GAPS:
        raise NumericalInconsistency(f"contact order {m} impossible on a smooth quartic")
    return GAPS[m]


def riemann_hurwitz_genus(g: int, order: int, periods) -> Fraction:
    """Quotient genus solving 2g - 2 = |G| (2h - 2 + sum(1 - 1/m))."""
    branch = sum((1 - Fraction(1, m) for m in periods), Fraction(0))
    return (Fraction(2 * g - 2, order) - branch + 2) / 2


def branch_orbits(G: GroupTable, F: HomPoly3):
    """Every point of F with nontrivial stabilizer, and its orbit partition."""
    pts: list[ProjPoint] = []
    for A in G.elements[1:]:
        for P in fixed_points_on_curve(A, F):
            if all(P.distance(Q) > 1e-6 for Q in pts):
                pts.append(P)
    pts.sort(key=ProjPoint.sort_key)
    return pts, orbits(G, pts)


def signature(G: GroupTable, F: HomPoly3) -> Signature:
    """Signature of the action of G on the smooth curve F = 0.

    One period per orbit of points with nontrivial stabilizer; the quotient
    genus then follows from Riemann-Hurwitz and must be a nonnegative integer.
    """
    g = genus(F)
    if len(G) == 1:
        return Signature(g, ())
    pts, part = branch_orbits(G, F)
    periods = sorted(part.stabilizer_orders[orb[0]] for orb in part.orbits)
    h = riemann_hurwitz_genus(g, len(G), periods)
    if h.denominator != 1 or h < 0:
        raise NumericalInconsistency(f"Riemann-Hurwitz gives genus {h}; branch data incomplete")
    return Signature(int(h), tuple(periods))


def transitivity_report(F: HomPoly3, G: GroupTable, curve_id: str = "", *, eps: float = 1e-6) -> CurveReport:
    """Weierstrass data, orbit structure and signature for one curve."""
    sm = is_smooth(F)
    if not sm.smooth:
        raise SingularCurveError(f"{curve_id or 'curve'} is singular", witness=sm.witness)
    wps = weierstrass_points(F, eps=eps)
    part = orbits(G, [p for p, _ in wps], eps=eps)
    data = []
    for i, (p, w) in enumerate(wps):
        gaps = gap_sequence(F, p)
        if GAPS[w + 2] != gaps:
            raise NumericalInconsistency(f"gap sequence {gaps} does not match weight {w}")
        data.append(WeierstrassDatum(p, w, gaps, part.stabilizer_orders[i], part.orbit_id[i]))
    hist: dict[int, int] = {}
    for d in data:
        hist[d.weight] = hist.get(d.weight, 0) + 1
    total = sum(d.weight for d in data)
    g = genus(F)
    if total != g**3 - g:
        raise NumericalInconsistency(f"weights sum to {total}, expected {g**3 - g}")
    return CurveReport(
        curve_id=curve_id,
        smooth=True,
        group_order=len(G),
        wp_count=len(data),
        weight_histogram=dict(sorted(hist.items())),
        orbit_sizes=part.sizes,
        transitive=part.transitive,
        signature=signature(G, F),
        hurwitz_bound_ok=len(G) <= HURWITZ_FACTOR * (g - 1),
        points=data,
    )
