import numpy
import pytest

from homconnections.algrep import RightModule, regular_module
from homconnections.calculus import universal_calculus, validate_calculus, zero_calculus
from homconnections.exactlin import QQ, eye, is_zero, kron, zeros
from homconnections.homconn import HomConnection, homology, solve_homconnections
from homconnections.induce import (curvature_transfer_check, dga_bimodule,
                                   dualize_left_connection, identity_bimodule, identity_map,
                                   induce_via_bimodule, induce_via_dga_map,
                                   left_connection_as_bimodule, left_connection_curvature,
                                   left_connection_from_d, left_curvature, quotient_map, tilde,
                                   theorem_steps_check, universal_map, validate_dga_map,
                                   validate_differentiable_bimodule, validate_left_connection)
from homconnections.zoo import ground_field, group_algebra, matrix_algebra, product_field


def k_module():
    return RightModule(ground_field(), (eye(QQ, 1),), "k")


def dual_d(O):
    L = left_connection_from_d(O)
    return dualize_left_connection(L, regular_module(L.M.right_algebra))


def kill_e2_e1(O):
    A = O.algebra
    g = O.meta["ambient"][1].coords(kron(A.basis(1), A.basis(0)))
    return quotient_map(O, [(1, g)])


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2)], ids=lambda A: A.name)
def test_identity_bimodule_and_map(A):
    O = universal_calculus(A, 3)
    assert validate_dga_map(identity_map(O)).ok
    DB = identity_bimodule(O)
    assert validate_differentiable_bimodule(DB).ok
    for nabla in solve_homconnections(O, regular_module(A)).all_generators():
        assert theorem_steps_check(DB, nabla).ok
        viaE = induce_via_bimodule(DB, nabla)
        viaT = induce_via_dga_map(identity_map(O), nabla)
        assert viaE.leibniz_report().ok and viaT.leibniz_report().ok
        assert (viaE.nabla0 == viaT.nabla0).all()
        assert (induce_via_bimodule(dga_bimodule(identity_map(O)), nabla).nabla0 == viaT.nabla0).all()


def test_identity_map_recovers_connection():
    A = product_field(2)
    O = universal_calculus(A, 2)
    for nabla in solve_homconnections(O, regular_module(A)).all_generators():
        ind = induce_via_dga_map(identity_map(O), nabla)
        N = ind.hom_E
        ev = lambda v: N.element(v).dot(A.unit)
        for j, g in enumerate(ind.H1.basis):
            lhs = ev(ind.nabla0[:, j])
            rhs = nabla.nabla0.dot(nabla.H1.coords(tilde(N, g, A.unit)))
            assert (lhs == rhs).all()
        assert curvature_transfer_check(identity_map(O), nabla, ind).ok


def test_zero_target_calculus():
    A = product_field(2)
    O = universal_calculus(A, 2)
    Z = zero_calculus(A, 2)
    th = quotient_map(O, [(1, eye(QQ, 2)[:, 0]), (1, eye(QQ, 2)[:, 1])])[1]
    assert th.target.dims() == Z.dims()
    nabla = solve_homconnections(O, regular_module(A)).any()
    ind = induce_via_dga_map(th, nabla)
    assert ind.nabla0.shape == (2, 0)


def test_quotient_maps_on_product_field():
    A = product_field(2)
    O = universal_calculus(A, 3)
    Q, th = kill_e2_e1(O)
    assert Q.dims() == [2, 1, 0, 0]
    assert validate_calculus(Q).ok and validate_dga_map(th).ok
    g2 = O.meta["ambient"][2].coords(kron(A.basis(0), A.basis(1), A.basis(0)))
    Q2, th2 = quotient_map(O, [(2, g2)])
    assert Q2.dims() == [2, 2, 1, 0]
    assert validate_calculus(Q2).ok and validate_dga_map(th2).ok
    for t in (th, th2):
        for nabla in solve_homconnections(O, regular_module(A)).all_generators():
            ind = induce_via_dga_map(t, nabla)
            assert ind.leibniz_report().ok
            assert curvature_transfer_check(t, nabla, ind).ok


def test_flat_in_flat_out():
    A = product_field(2)
    O = universal_calculus(A, 3)
    nabla = dual_d(O)
    assert nabla.is_flat()
    g2 = O.meta["ambient"][2].coords(kron(A.basis(0), A.basis(1), A.basis(0)))
    for t in (identity_map(O), kill_e2_e1(O)[1], quotient_map(O, [(2, g2)])[1]):
        ind = induce_via_dga_map(t, nabla)
        assert ind.is_flat()


def test_universal_map_into_matrices():
    A, B = product_field(2), matrix_algebra(2)
    OA, OB = universal_calculus(A, 2), universal_calculus(B, 2)
    phi = zeros(QQ, 4, 2)
    phi[0, 0] = phi[3, 1] = QQ.one
    th = universal_map(phi, OA, OB)
    assert validate_dga_map(th).ok
    nabla = solve_homconnections(OA, regular_module(A)).any()
    ind = induce_via_dga_map(th, nabla)
    assert ind.leibniz_report().ok
    assert curvature_transfer_check(th, nabla, ind).ok


def test_broken_map_is_rejected():
    O = universal_calculus(product_field(2), 2)
    th = identity_map(O)
    bad = type(th)(O, O, (th.theta[0], th.theta[1] * 2, th.theta[2]), "bad")
    assert not validate_dga_map(bad).ok
    with pytest.raises(ValueError):
        induce_via_dga_map(bad, solve_homconnections(O, regular_module(O.algebra)).any())


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2), product_field(3)],
                         ids=lambda A: A.name)
def test_dual_of_d(A):
    O = universal_calculus(A, 3 if A.dim < 3 else 2)
    L = left_connection_from_d(O)
    assert validate_left_connection(L).ok
    assert is_zero(left_curvature(L))
    N = k_module()
    nabla = dualize_left_connection(L, N)
    assert nabla.leibniz_report().ok
    assert nabla.is_flat()
    assert left_connection_curvature(L, N, nabla).ok
    # the same connection from the general induction with sigma = 0
    zc = HomConnection(zero_calculus(ground_field(), O.truncation), N, zeros(QQ, 1, 0))
    viaE = induce_via_bimodule(left_connection_as_bimodule(L), zc)
    assert (viaE.nabla0 == nabla.nabla0).all()


def test_dual_of_d_formula():
    # nabla0(f)(a) = -f(da) on Hom_k(A, k)
    A = product_field(2)
    O = universal_calculus(A, 2)
    nabla = dual_d(O)
    HM = nabla.hom_E
    for j, f in enumerate(nabla.H1.basis):
        val = HM.element(nabla.nabla0[:, j])
        for a in range(A.dim):
            fa = f.dot(O.d[0][:, a])              # f(da) in Hom_k(A, k)
            assert (val.dot(A.basis(a)) == -HM.element(fa).dot(A.unit)).all()


def test_dual_of_d_homology():
    O = universal_calculus(product_field(2), 3)
    assert [homology(dual_d(O), n).dim for n in range(3)] == [1, 0, 0]
