"""Named curves and groups, and the singular-parameter detector for the pencil."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .autgroup import ProjMap
from .polyalg import HomPoly3
from .projgeom import is_smooth

NAMED = ("fermat", "klein", "picard", "c3")

# the Klein member of the pencil; the conjugate value behaves the same way
T0 = 1.5 * (-1 + 7j)
EXCEPTIONAL = (-1.0, 2.0, -2.0)

X = HomPoly3.monomial(1, 0, 0)
Y = HomPoly3.monomial(0, 1, 0)
Z = HomPoly3.monomial(0, 0, 1)


@dataclass(frozen=True)
class CurveId:
    kind: Literal["pencil", "fermat", "klein", "picard", "c3"]
    t: complex = 0j

    @classmethod
    def pencil(cls, t) -> "CurveId":
        return cls("pencil", complex(t))

    @classmethod
    def named(cls, name: str) -> "CurveId":
        if name not in NAMED:
            raise ValueError(f"unknown curve {name!r}; choose from {NAMED}")
        return cls(name)

    @property
    def pencil_parameter(self) -> complex | None:
        """t when the curve is a member of the pencil, else None."""
        if self.kind == "pencil":
            return self.t
        return {"fermat": 0j, "c3": 3 + 0j}.get(self.kind)

    def __str__(self):
        if self.kind != "pencil":
            return self.kind
        t = self.t
        return f"pencil({t.real:.15g}{t.imag:+.15g}j)"


def parse_parameter(re: str, im: str = "0") -> complex:
    """t from two decimal strings, as accepted on the command line."""
    return complex(float(re), float(im))


def pencil(t) -> HomPoly3:
    """x^4 + y^4 + z^4 + t (x^2 y^2 + y^2 z^2 + z^2 x^2)."""
    t = complex(t)
    c = {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}
    if t != 0:
        c.update({(2, 2, 0): t, (0, 2, 2): t, (2, 0, 2): t})
    return HomPoly3(4, c)


def build_curve(cid: CurveId | str) -> HomPoly3:
    if isinstance(cid, str):
        cid = CurveId.named(cid)
    if cid.kind == "pencil":
        return pencil(cid.t)
    if cid.kind == "fermat":
        return X**4 + Y**4 + Z**4
    if cid.kind == "c3":
        return pencil(3)
    if cid.kind == "klein":
        return X**3 * Y + Y**3 * Z + Z**3 * X
    if cid.kind == "picard":
        return X**4 + Y**4 + Z**3 * X
    raise ValueError(cid.kind)


def pencil_generators() -> tuple[ProjMap, ProjMap]:
    """[x:y:z] -> [x:z:-y] and [x:y:z] -> [z:y:x], acting on column vectors."""
    a = ProjMap(np.array([[1, 0, 0], [0, 0, 1], [0, -1, 0]]))
    b = ProjMap(np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    return a, b


def phi() -> ProjMap:
    """[x:y:z] -> [-y:x:z], of order 4."""
    return ProjMap(np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]]))


@dataclass(frozen=True)
class ParameterClass:
    verdict: Literal["smooth", "singular", "near-singular"]
    distance: float

    def __str__(self):
        if self.verdict == "near-singular":
            return f"near-singular({self.distance:.3g})"
        return self.verdict


def classify_parameter(t, near_tol: float = 1e-3) -> ParameterClass:
    """Smoothness verdict for the pencil member at t.

    ``distance`` is the smallest relative gradient found at a candidate
    singular point; it shrinks linearly as t approaches an exceptional value.
    """
    res = is_smooth(pencil(t))
    if not res.smooth:
        return ParameterClass("singular", res.min_gradient)
    if res.min_gradient < near_tol:
        return ParameterClass("near-singular", res.min_gradient)
    return ParameterClass("smooth", res.min_gradient)
