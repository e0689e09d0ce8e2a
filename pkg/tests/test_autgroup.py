import numpy as np
import pytest

from weierquartic.autgroup import (
    IDENTITY,
    ProjMap,
    apply,
    element_order,
    fixed_points_on_curve,
    generate,
    invariant_subgroup,
    normalize_matrix,
    orbits,
    preserves,
)
from weierquartic.catalog import pencil, pencil_generators, phi
from weierquartic.errors import NotClosedWithinCap, SetNotInvariant
from weierquartic.projgeom import chordal, on_curve

from conftest import X, Y, Z

SIGN_FLIP = ProjMap(np.diag([1, -1, 1]))


def test_normalize_matrix_scale_free():
    M = np.array([[0, 2j, 0], [1, 0, 0], [0, 0, -2j]])
    N = normalize_matrix(M)
    assert N[0, 1] == 1
    assert np.allclose(normalize_matrix(3.5 * M), N)


def test_generate_cyclic():
    G = generate([SIGN_FLIP])
    assert G.order == 2
    assert G.orders == [1, 2]


def test_generate_pencil_group(group):
    assert group.order == 24
    assert sorted(group.class_sizes()) == [1, 3, 6, 6, 8]
    assert sorted(group.orders) == [1] + [2] * 9 + [3] * 8 + [4] * 6


def test_generate_cap():
    rot = ProjMap(np.diag([1, np.exp(2j * np.pi / 60), 1]))
    with pytest.raises(NotClosedWithinCap):
        generate([rot], cap=48)


def test_table_is_latin_square(group):
    n = group.order
    for i in range(n):
        assert sorted(group.table[i]) == list(range(n))
        assert sorted(group.table[:, i]) == list(range(n))


def test_table_matches_products(group):
    E = group.elements
    for i in range(0, 24, 5):
        for j in range(0, 24, 7):
            assert (E[i] @ E[j]).close_to(E[group.table[i, j]])


def test_classes_partition_group(group):
    flat = sorted(i for c in group.classes for i in c)
    assert flat == list(range(group.order))
    for cl in group.classes:
        assert len({group.orders[i] for i in cl}) == 1


def test_apply_examples():
    a, b = pencil_generators()
    assert apply(a, [0, 1, 0]).close_to([0, 0, 1], 1e-15)
    assert apply(b, [1, 2, 3]).close_to([3, 2, 1], 1e-15)
    assert apply(IDENTITY, [1, 1j, 2]).close_to([1, 1j, 2], 1e-15)


@pytest.mark.parametrize("A,expected", [(phi(), 4), (pencil_generators()[0], 4), (pencil_generators()[1], 2)])
def test_element_order(A, expected):
    assert element_order(A) == expected
    # matrix power oracle
    M = A.matrix
    P = np.linalg.matrix_power(M, expected)
    assert np.allclose(P / P[0, 0], np.eye(3))
    for k in range(1, expected):
        Q = np.linalg.matrix_power(M, k)
        assert not np.allclose(Q / Q.flat[np.argmax(np.abs(Q))], np.eye(3))


def test_inverse():
    A = ProjMap(np.array([[1, 2, 0], [0, 1j, 1], [1, 0, 3]]))
    assert (A @ A.inverse()).is_identity()


def test_orbits_of_coordinate_points(group):
    pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    part = orbits(group, pts)
    assert part.transitive
    assert part.stabilizer_orders == [8, 8, 8]


def test_orbits_not_invariant(group):
    with pytest.raises(SetNotInvariant):
        orbits(group, [[1, 0, 0], [0, 1, 0]])


def test_orbits_cyclic_example():
    G = generate([SIGN_FLIP])
    part = orbits(G, [[1, 1, 1], [1, -1, 1], [0, 1, 0]])
    assert part.sizes == [2, 1]
    assert part.stabilizer_orders == [1, 1, 2]


def test_fixed_points_sign_flip_on_fermat():
    F = X**4 + Y**4 + Z**4
    pts = fixed_points_on_curve(SIGN_FLIP, F)
    # [0:1:0] is not on the curve; the fixed line y = 0 meets it in 4 points
    assert len(pts) == 4
    for p in pts:
        assert abs(p.coords[1]) < 1e-12
        assert on_curve(F, p)


def test_fixed_points_phi_empty_on_generic_member():
    assert fixed_points_on_curve(phi(), pencil(1)) == []


def test_fixed_points_phi_at_two():
    pts = fixed_points_on_curve(phi(), pencil(2))
    assert len(pts) == 2
    targets = [[1j, 1, 0], [-1j, 1, 0]]
    for p in pts:
        assert min(chordal(p.coords, t) for t in targets) < 1e-10


def test_fixed_points_of_every_element_are_fixed(group):
    F = pencil(1)
    for A in group.elements[1:]:
        for p in fixed_points_on_curve(A, F):
            assert A(p).close_to(p, 1e-9)


def test_pencil_members_invariant(group):
    for t in (0, 1, 3, 0.5 + 0.5j):
        assert all(preserves(A, pencil(t)) for A in group.elements)


def test_phi_is_conjugate_of_generator(group):
    a, b = pencil_generators()
    assert phi().close_to(b @ a @ b.inverse())
    assert any(phi().close_to(E) for E in group.elements)
    assert preserves(phi(), pencil(1))


def test_preserves_rejects_non_symmetry():
    skew = ProjMap(np.diag([1, 1j, 1]))
    assert not preserves(skew, pencil(1))
    assert preserves(skew, X**4 + Y**4 + Z**4)


def test_invariant_subgroup_klein(group):
    klein = X**3 * Y + Y**3 * Z + Z**3 * X
    assert invariant_subgroup(group, klein).order == 3


def test_no_weierstrass_stabilizer_divisible_by_four(group):
    from weierquartic.weierstrass import weierstrass_points

    F = pencil(0.5 + 0.5j)
    pts = [p for p, _ in weierstrass_points(F)]
    part = orbits(group, pts)
    assert all(s % 4 for s in part.stabilizer_orders)
