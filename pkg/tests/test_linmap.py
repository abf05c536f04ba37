import math

import numpy as np
import pytest

from cstarhom.algebra import (
    Algebra,
    Element,
    adjusted_trace,
    dimension_operator,
    hermitian_eigenvalues,
    matrix_unit,
    one,
    op_transpose,
    tensor,
    tensor_elements,
    trace,
)
from cstarhom.choi import adjusted_choi, diagonal_projection_raw
from cstarhom.errors import AlgebraMismatch, NotUCP
from cstarhom.linmap import (
    LinMap,
    apply_left,
    apply_right,
    compose,
    dagger_adjoint,
    ddagger_adjoint,
    depolarizing,
    is_completely_positive,
    is_trace_preserving,
    is_unital,
    map_distance,
    mult_defect,
    multiplicativity_defects,
    require_ucp,
    tensor_maps,
    tensor_with_identity,
    transpose_conjugate,
)
from cstarhom.randgen import random_element, random_homomorphism, random_ucp

TWO = Algebra((2,))
CC = Algebra((1, 1))


def diagonal_embedding() -> LinMap:
    """phi(a1, a2) = diag(a1, a2), a unital *-homomorphism C^2 -> M_2."""
    img1 = Element(TWO, [np.diag([1.0, 0.0])])
    img2 = Element(TWO, [np.diag([0.0, 1.0])])
    return LinMap.from_images(CC, TWO, [img1, img2])


def test_identity_apply():
    a = Algebra((2, 3))
    ident = LinMap.identity(a)
    x = random_element(a, 0)
    assert (ident(x) - x).norm() == 0.0


def test_embedding_apply():
    phi = diagonal_embedding()
    x = Element(CC, [np.array([[1.0]]), np.array([[0.0]])])
    out = phi(x)
    assert np.array_equal(out.blocks[0], np.diag([1.0, 0.0]))


def test_depolarizing_kills_off_diagonal():
    omega = depolarizing(TWO)
    out = omega(matrix_unit(TWO, 0, 0, 1))
    assert out.norm() == 0.0
    out = omega(matrix_unit(TWO, 0, 0, 0))
    assert (out - 0.5 * one(TWO)).norm() == 0.0


def test_apply_is_linear():
    a, b = Algebra((2, 3)), Algebra((4,))
    phi = random_ucp(a, b, seed=1)
    x, y = random_element(a, 2), random_element(a, 3)
    lhs = phi(2.0 * x + (1 - 1j) * y)
    rhs = 2.0 * phi(x) + (1 - 1j) * phi(y)
    assert (lhs - rhs).norm() < 1e-12


def test_apply_rejects_wrong_algebra():
    phi = diagonal_embedding()
    with pytest.raises(AlgebraMismatch):
        phi(one(TWO))


def test_compose():
    a = Algebra((2,))
    phi = random_ucp(a, a, seed=4)
    ident = LinMap.identity(a)
    assert map_distance(compose(phi, ident), phi) == 0.0
    assert map_distance(compose(ident, phi), phi) == 0.0
    psi = random_ucp(a, a, seed=5)
    x = random_element(a, 6)
    assert (compose(phi, psi)(x) - phi(psi(x))).norm() < 1e-12


def test_tensor_with_identity():
    a, c = Algebra((2,)), Algebra((1, 2))
    ident = LinMap.identity(a)
    assert map_distance(tensor_with_identity(ident, c), LinMap.identity(tensor(a, c))) == 0.0
    phi = random_ucp(a, Algebra((3,)), seed=7)
    lifted = tensor_with_identity(phi, c)
    x, y = random_element(a, 8), random_element(c, 9)
    lhs = lifted(tensor_elements(x, y))
    rhs = tensor_elements(phi(x), y)
    assert (lhs - rhs).norm() < 1e-12


def test_apply_left_right_match_tensor_maps():
    a, b, c = Algebra((2,)), Algebra((3,)), Algebra((1, 2))
    phi = random_ucp(a, b, seed=10)
    x = random_element(tensor(a, c), 11)
    assert (apply_left(phi, x) - tensor_with_identity(phi, c)(x)).norm() < 1e-12
    y = random_element(tensor(c, a), 12)
    assert (apply_right(phi, y) - tensor_maps(LinMap.identity(c), phi)(y)).norm() < 1e-12


# -- adjoints ------------------------------------------------------------------


def test_dagger_defining_identity():
    a, b = Algebra((2, 3)), Algebra((4,))
    phi = random_ucp(a, b, seed=13)
    dag = dagger_adjoint(phi)
    for s in range(10):
        x = random_element(a, 50 + s)
        y = random_element(b, 60 + s)
        lhs = trace(phi(x) * y)
        rhs = trace(x * dag(y))
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_dagger_identity_and_involution():
    a = Algebra((2, 3))
    ident = LinMap.identity(a)
    assert map_distance(dagger_adjoint(ident), ident) == 0.0
    phi = random_ucp(a, Algebra((4,)), seed=14)
    assert map_distance(dagger_adjoint(dagger_adjoint(phi)), phi) == 0.0


def test_dagger_of_depolarizing_is_itself():
    # oracle: tr(omega(a) b) = tr(a) tr(b) / n = tr(a omega(b)) on all basis pairs
    omega = depolarizing(TWO)
    n = 2
    for u in TWO.units():
        for v in TWO.units():
            x = matrix_unit(TWO, *u)
            y = matrix_unit(TWO, *v)
            lhs = trace(omega(x) * y)
            assert lhs == pytest.approx(trace(x) * trace(y) / n)
            assert lhs == pytest.approx(trace(x * omega(y)))
    assert map_distance(dagger_adjoint(omega), omega) < 1e-15


def test_ddagger_identity_map():
    a = Algebra((2, 3))
    ident = LinMap.identity(a)
    assert map_distance(ddagger_adjoint(ident), ident) == 0.0


def test_ddagger_of_depolarizing():
    # oracle: substitute into dagger(b zeta) zeta^{-1} with zeta = 2*1
    omega = depolarizing(TWO)
    ddag = ddagger_adjoint(omega)
    assert map_distance(ddag, omega) < 1e-15


def test_ddagger_of_embedding_solved_on_basis():
    # oracle: solve ttr_B(phi(a) b) = ttr_A(a phi#(b)) on the basis of C^2.
    # With a = (1,0) and a = (0,1) this pins phi#(b) = (2 b11, 2 b22).
    phi = diagonal_embedding()
    ddag = ddagger_adjoint(phi)
    p1 = Element(CC, [np.array([[1.0]]), np.array([[0.0]])])
    p2 = Element(CC, [np.array([[0.0]]), np.array([[1.0]])])
    for s in range(5):
        b = random_element(TWO, 70 + s)
        img = ddag(b)
        for a_elem, slot in ((p1, 0), (p2, 1)):
            want = adjusted_trace(phi(a_elem) * b)
            got = adjusted_trace(a_elem * img)
            assert got == pytest.approx(want)
        assert img.blocks[0][0, 0] == pytest.approx(2 * b.blocks[0][0, 0])
        assert img.blocks[1][0, 0] == pytest.approx(2 * b.blocks[0][1, 1])


def test_ddagger_defining_identity_random():
    a, b = Algebra((2, 3)), Algebra((2, 2))
    phi = random_ucp(a, b, seed=15)
    ddag = ddagger_adjoint(phi)
    for s in range(10):
        x = random_element(a, 80 + s)
        y = random_element(b, 90 + s)
        lhs = adjusted_trace(phi(x) * y)
        rhs = adjusted_trace(x * ddag(y))
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_ddagger_involution_and_composition_law():
    a, b = Algebra((2,)), Algebra((4,))
    phi = random_ucp(a, b, seed=16)
    psi = random_ucp(b, a, seed=17)
    assert map_distance(ddagger_adjoint(ddagger_adjoint(phi)), phi) < 1e-13
    lhs = ddagger_adjoint(compose(phi, psi))
    rhs = compose(ddagger_adjoint(psi), ddagger_adjoint(phi))
    assert map_distance(lhs, rhs) < 1e-12


def test_ddagger_tensor_law():
    a, b = Algebra((2,)), Algebra((2,))
    phi = random_ucp(a, b, seed=18)
    psi = random_ucp(a, b, seed=19)
    lhs = ddagger_adjoint(tensor_maps(phi, psi))
    rhs = tensor_maps(ddagger_adjoint(phi), ddagger_adjoint(psi))
    assert map_distance(lhs, rhs) < 1e-12


def test_dagger_of_cp_is_cp():
    phi = random_ucp(Algebra((2, 3)), Algebra((4,)), seed=20)
    ok, defect = is_completely_positive(dagger_adjoint(phi))
    assert ok, defect


def test_transpose_conjugate():
    a, b = Algebra((2,)), Algebra((3,))
    phi = random_ucp(a, b, seed=21)
    tc = transpose_conjugate(phi)
    x = random_element(a, 22)
    assert (tc(x) - op_transpose(phi(op_transpose(x)))).norm() < 1e-13


# -- structural checks ----------------------------------------------------------


def test_is_unital():
    ident = LinMap.identity(TWO)
    ok, defect = is_unital(ident)
    assert ok and defect == 0.0
    doubling = LinMap(TWO, TWO, 2.0 * np.eye(4))
    ok, defect = is_unital(doubling)
    assert not ok
    assert defect == pytest.approx(math.sqrt(2))


def test_is_trace_preserving():
    omega = depolarizing(TWO)
    assert is_unital(omega)[0]
    assert is_trace_preserving(omega)[0]
    phi = diagonal_embedding()
    assert is_unital(phi)[0]


def test_is_completely_positive():
    assert is_completely_positive(LinMap.identity(TWO))[0]
    transpose_map = LinMap.from_function(TWO, TWO, op_transpose)
    ok, defect = is_completely_positive(transpose_map)
    assert not ok
    # adjusted Choi of the transpose map is half the swap: eigenvalue -1/2
    assert defect == pytest.approx(0.5)
    evs = np.concatenate(
        [np.linalg.eigvalsh(blk) for blk in adjusted_choi(transpose_map).blocks]
    )
    assert evs.min() == pytest.approx(-0.5)


def test_random_homomorphisms_are_cp():
    for s in range(5):
        phi = random_homomorphism(Algebra((2,)), Algebra((4,)), s)
        assert is_completely_positive(phi)[0]


def test_require_ucp_raises():
    transpose_map = LinMap.from_function(TWO, TWO, op_transpose)
    with pytest.raises(NotUCP):
        require_ucp(transpose_map)


# -- the direct oracle -----------------------------------------------------------


def test_mult_defect_identity_and_embedding():
    assert mult_defect(LinMap.identity(Algebra((2, 3)))) == 0.0
    assert mult_defect(diagonal_embedding()) < 1e-15


def test_mult_defect_depolarizing_witness():
    # witness pair (e11, e11): ||omega(e11 e11) - omega(e11)^2||
    #   = ||(1/2) 1 - (1/4) 1|| = sqrt(2)/4
    omega = depolarizing(TWO)
    e11 = matrix_unit(TWO, 0, 0, 0)
    witness = (omega(e11 * e11) - omega(e11) * omega(e11)).norm()
    assert witness == pytest.approx(math.sqrt(2) / 4)
    assert mult_defect(omega) >= witness - 1e-15


def test_multiplicativity_defects_reports_star_separately():
    a = Algebra((2,))
    # a Hermitian-breaking linear map: scale e12 image only
    matrix = np.eye(4, dtype=complex)
    matrix[1, 1] = 2.0
    phi = LinMap(a, a, matrix)
    mult, star = multiplicativity_defects(phi)
    assert star > 0


def test_ddagger_domination_on_homomorphisms():
    # round trip through the adjusted adjoint dominates positive elements
    for s in range(10):
        a, b = Algebra((2,)), Algebra((6,))
        phi = random_homomorphism(a, b, s)
        g = random_element(b, 300 + s)
        pos = g * g.adjoint()
        gap = phi(ddagger_adjoint(phi)(pos)) - pos
        lam_min = min(float(v.min()) for v in hermitian_eigenvalues(gap))
        assert lam_min >= -1e-9


def test_diagonal_transport_identity():
    # the adjusted adjoint moves the codomain diagonal onto the image of the
    # domain diagonal, comparing raw stored coefficients entrywise
    a, b = Algebra((2, 3)), Algebra((6,))
    for s in range(10):
        phi = random_ucp(a, b, seed=400 + s)
        lhs = apply_left(ddagger_adjoint(phi), diagonal_projection_raw(b))
        rhs = apply_right(phi, diagonal_projection_raw(a))
        assert (lhs - rhs).norm() < 1e-9
