"""Weierstrass points and automorphism orbits of smooth plane quartics."""

from .autgroup import GroupTable, ProjMap, apply, element_order, fixed_points_on_curve, generate, orbits
from .catalog import CurveId, build_curve, classify_parameter, pencil, pencil_generators, phi
from .polyalg import HomPoly3, UniPoly, eliminate, evaluate, hessian_det, partial
from .projgeom import ProjLine, ProjPoint, contact_order, intersect, is_smooth, tangent_line
from .roots import aberth_roots, cluster, polish_pair
from .weierstrass import CurveReport, Signature, gap_sequence, signature, transitivity_report, weierstrass_points

__version__ = "0.1.0"

__all__ = [
    "GroupTable",
    "ProjMap",
    "apply",
    "element_order",
    "fixed_points_on_curve",
    "generate",
    "orbits",
    "CurveId",
    "build_curve",
    "classify_parameter",
    "pencil",
    "pencil_generators",
    "phi",
    "HomPoly3",
    "UniPoly",
    "eliminate",
    "evaluate",
    "hessian_det",
    "partial",
    "ProjLine",
    "ProjPoint",
    "contact_order",
    "intersect",
    "is_smooth",
    "tangent_line",
    "aberth_roots",
    "cluster",
    "polish_pair",
    "CurveReport",
    "Signature",
    "gap_sequence",
    "signature",
    "transitivity_report",
    "weierstrass_points",
]
