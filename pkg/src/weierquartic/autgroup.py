"""
Finite groups of projective linear maps: closure from generators, orbits,
stabilizers, conjugacy classes and fixed loci on a curve.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import NotClosedWithinCap, SetNotInvariant
from .polyalg import HomPoly3
from .projgeom import CERT_TOL, ProjPoint, chordal_to_many, intersect, on_curve

MAP_EPS = 1e-9


def normalize_matrix(M) -> np.ndarray:
    """Canonical scalar representative of a 3x3 matrix.

    Divides by the first entry (row-major) whose modulus is maximal up to a
    relative tie tolerance, so that entry becomes exactly 1.
    """
    M = np.asarray(M, dtype=complex)
    flat = M.ravel()
    m = np.abs(flat)
    top = m.max()
    if top == 0:
        raise ValueError("zero matrix")
    idx = int(np.nonzero(m >= top * (1 - 1e-9))[0][0])
    out = (flat / flat[idx]).reshape(3, 3)
    out.flat[idx] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class ProjMap:
    matrix: np.ndarray
    label: int = -1

    def __post_init__(self):
        M = normalize_matrix(self.matrix)
        if abs(np.linalg.det(M)) < 1e-10:
            raise ValueError("singular matrix")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        return ProjMap(self.matrix @ other.matrix)

    def __call__(self, P) -> ProjPoint:
        return apply(self, P)

    def inverse(self) -> "ProjMap":
        return ProjMap(np.linalg.inv(self.matrix))

    def close_to(self, other: "ProjMap", eps: float = MAP_EPS) -> bool:
        return float(np.max(np.abs(self.matrix - other.matrix))) <= eps

    def is_identity(self, eps: float = MAP_EPS) -> bool:
        return self.close_to(IDENTITY, eps)

    def __repr__(self):
        rows = "; ".join(" ".join(f"{c:.3g}" for c in r) for r in self.matrix)
        return f"ProjMap([{rows}])"


IDENTITY = ProjMap(np.eye(3))


def apply(A: ProjMap, P) -> ProjPoint:
    return ProjPoint(A.matrix @ np.asarray(P, dtype=complex))


def element_order(A: ProjMap, cap: int = 24, eps: float = MAP_EPS) -> int:
    B = A
    for n in range(1, cap + 1):
        if B.is_identity(eps):
            return n
        B = B @ A
    raise NotClosedWithinCap(f"no power up to {cap} is the identity")


@dataclass(frozen=True, eq=False)
class GroupTable:
    elements: list
    table: np.ndarray
    orders: list
    classes: list
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def inverse_index(self, i: int) -> int:
        return int(np.nonzero(self.table[i] == self.identity)[0][0])

    def class_of(self, i: int) -> int:
        for k, cl in enumerate(self.classes):
            if i in cl:
                return k
        raise KeyError(i)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def _find(elements, M: ProjMap, eps: float) -> int:
    for i, E in enumerate(elements):
        if E.close_to(M, eps):
            return i
    return -1


def generate(gens, cap: int = 48, eps: float = MAP_EPS) -> GroupTable:
    """Breadth-first closure of ``gens`` under composition.

    Builds the product table (``table[i, j]`` is the index of
    ``elements[i] @ elements[j]``), element orders and conjugacy classes.
    """
    elements = [ProjMap(IDENTITY.matrix, 0)]
    queue = deque([0])
    gens = [g if isinstance(g, ProjMap) else ProjMap(g) for g in gens]
    while queue:
        i = queue.popleft()
        for g in gens:
            M = elements[i] @ g
            if _find(elements, M, eps) < 0:
                if len(elements) >= cap:
                    raise NotClosedWithinCap(f"more than {cap} elements")
                elements.append(ProjMap(M.matrix, len(elements)))
                queue.append(len(elements) - 1)
    n = len(elements)
    table = np.empty((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            k = _find(elements, elements[i] @ elements[j], eps)
            if k < 0:
                raise NotClosedWithinCap("product left the element list")
            table[i, j] = k
    ident = 0
    orders = []
    for i in range(n):
        k, m = i, 1
        while k != ident:
            k = table[k, i]
            m += 1
        orders.append(m)
    inv = [int(np.nonzero(table[i] == ident)[0][0]) for i in range(n)]
    seen = set()
    classes = []
    for i in range(n):
        if i in seen:
            continue
        cl = sorted({int(table[table[g, i], inv[g]]) for g in range(n)})
        seen.update(cl)
        classes.append(cl)
    return GroupTable(elements, table, orders, classes, ident)


# ---------------------------------------------------------------------------
# actions on point sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    orbits: list  # lists of point indices
    stabilizer_orders: list  # per point
    orbit_id: list  # per point

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    @property
    def transitive(self) -> bool:
        return len(self.orbits) == 1


def _locate(points, P, eps: float) -> int:
    d = chordal_to_many(points, P)
    i = int(np.argmin(d))
    return i if d[i] <= eps else -1


def orbits(G: GroupTable, S, eps: float = 1e-6) -> OrbitPartition:
    """Partition the G-stable set ``S`` into orbits with stabilizer orders."""
    pts = np.array([np.asarray(p, dtype=complex) for p in S]).reshape(-1, 3)
    n = len(pts)
    images = np.empty((len(G), n), dtype=int)
    for a, A in enumerate(G.elements):
        for i, P in enumerate(pts):
            j = _locate(pts, A.matrix @ P, eps)
            if j < 0:
                raise SetNotInvariant(f"element {a} maps point {i} outside the set")
            images[a, i] = j
    orbit_id = [-1] * n
    orbit_list = []
    for i in range(n):
        if orbit_id[i] >= 0:
            continue
        members = sorted(set(images[:, i].tolist()))
        for m in members:
            orbit_id[m] = len(orbit_list)
        orbit_list.append(members)
    stabs = [int(np.sum(images[:, i] == i)) for i in range(n)]
    for i in range(n):
        if stabs[i] * len(orbit_list[orbit_id[i]]) != len(G):
            raise SetNotInvariant(f"orbit-stabilizer fails at point {i}")
    return OrbitPartition(orbit_list, stabs, orbit_id)


def eigenspaces(A: ProjMap, tol: float = 1e-8) -> list[np.ndarray]:
    """Bases (as rows) of the eigenspaces of the matrix of A.

    Eigenvalues are grouped up to ``tol`` and each eigenspace is read off
    as the numerical null space of (A - lambda I), which stays correct for
    defective matrices.
    """
    M = A.matrix
    lam = np.linalg.eigvals(M)
    groups: list[list[complex]] = []
    for v in lam:
        for grp in groups:
            if abs(grp[0] - v) <= tol * max(1.0, abs(v)) * 1e3:
                grp.append(v)
                break
        else:
            groups.append([v])
    out = []
    for grp in groups:
        mu = complex(np.mean(grp))
        _, s, Vh = np.linalg.svd(M - mu * np.eye(3))
        rank = int(np.sum(s > tol * max(1.0, s[0])))
        out.append(Vh[rank:].conj())
    return out


def fixed_locus(A: ProjMap) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Isolated fixed points and fixed lines (as pairs of spanning points)."""
    pts, lines = [], []
    for basis in eigenspaces(A):
        if basis.shape[0] == 1:
            pts.append(basis[0])
        elif basis.shape[0] == 2:
            lines.append(basis)
        else:
            raise ValueError("scalar matrix fixes every point")
    return pts, lines


def fixed_points_on_curve(A: ProjMap, F: HomPoly3, tol: float = CERT_TOL) -> list[ProjPoint]:
    """Points of F = 0 fixed by A, sorted.

    Isolated eigen-points are kept when they lie on the curve; a pointwise
    fixed line is intersected with the curve.
    """
    if A.is_identity():
        raise ValueError("identity fixes the whole curve")
    iso, lines = fixed_locus(A)
    out = [ProjPoint(p) for p in iso if on_curve(F, p, tol)]
    for basis in lines:
        line = HomPoly3.linear(*np.cross(basis[0], basis[1]))
        for ip in intersect(F, line):
            out.append(ip.point)
    return sorted(out, key=ProjPoint.sort_key)


def preserves(A: ProjMap, F: HomPoly3, tol: float = 1e-9) -> bool:
    """True when F(A v) is a scalar multiple of F."""
    FA = F.substitute(A.matrix)
    k = max(F.coeffs, key=lambda e: abs(F.coeffs[e]))
    ratio = FA.coefficient(*k) / F.coeffs[k]
    if abs(ratio) == 0:
        return False
    return FA.allclose(F * ratio, tol)


def invariant_subgroup(G: GroupTable, F: HomPoly3) -> GroupTable:
    """The elements of G that map the curve F = 0 to itself."""
    keep = [A for A in G.elements[1:] if preserves(A, F)]
    return generate(keep, cap=len(G))
