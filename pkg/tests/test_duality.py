import numpy
import pytest

from homconnections.algrep import regular_module
from homconnections.calculus import (find_separability, is_separability_element,
                                     universal_calculus, validate_calculus, zero_calculus)
from homconnections.duality import (build_duality_data, comodule_connection_to_homconn,
                                    comodule_identity_check, contramodule_checks,
                                    contramodule_to_homconn, coring_to_dga, cosplit_check,
                                    dual_coalgebra, duality_checks, grouplike_coring,
                                    grouplike_element, homconn_to_comodule_connection,
                                    homconn_to_contramodule, sweedler_coring,
                                    sweedler_identification, trivial_coring, validate_coalgebra,
                                    validate_coring)
from homconnections.exactlin import QQ, eye, inverse, is_zero, kron
from homconnections.homconn import homology, inner_homconnection, solve_homconnections
from homconnections.zoo import (dual_numbers, ground_field, group_algebra, matrix_algebra,
                                product_field)

import oracles


def test_dual_coalgebras():
    C = dual_coalgebra(ground_field())
    assert C.dim == 1 and validate_coalgebra(C).ok
    C = dual_coalgebra(product_field(2))
    # e^i -> e^i (x) e^i
    expect = numpy.zeros((4, 2), dtype=object)
    expect[0, 0] = expect[3, 1] = 1
    assert (C.coproduct == expect).all()
    assert validate_coalgebra(dual_coalgebra(matrix_algebra(2))).ok


def test_duality_data_zero_calculus():
    O = zero_calculus(product_field(2), 1)
    data = build_duality_data(O, regular_module(O.algebra))
    assert data.cotensor.dim == 0
    assert data.upsilon.shape == (0, 0)
    nabla = solve_homconnections(O, regular_module(O.algebra)).any()
    nbar = homconn_to_comodule_connection(nabla, data)
    assert nbar.shape == (2, 0)
    assert comodule_connection_to_homconn(data, nbar).nabla0.shape == (2, 0)


def test_cotensor_dimension_two_ways():
    A = product_field(2)
    O = universal_calculus(A, 1)
    M = regular_module(A)
    data = build_duality_data(O, M)
    assert data.cotensor.dim == 2
    assert data.cotensor.dim == oracles.hom_dim(O.component(1).right_action, M.action)


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2), dual_numbers()],
                         ids=lambda A: A.name)
def test_correspondence_round_trips(A):
    O = universal_calculus(A, 1)
    M = regular_module(A)
    data = build_duality_data(O, M)
    assert duality_checks(data).ok
    for nabla in solve_homconnections(O, M).all_generators():
        nbar = homconn_to_comodule_connection(nabla, data)
        assert comodule_identity_check(data, nbar).ok
        back = comodule_connection_to_homconn(data, nbar)
        assert (back.nabla0 == nabla.nabla0).all()
        assert (homconn_to_comodule_connection(back, data) == nbar).all()


def test_unsigned_inverse_fails_leibniz():
    # without the sign the inverse map does not produce hom-connections
    A = product_field(2)
    O = universal_calculus(A, 1)
    M = regular_module(A)
    data = build_duality_data(O, M)
    nabla = solve_homconnections(O, M).any()
    nbar = homconn_to_comodule_connection(nabla, data)
    wrong = type(nabla)(O, M, nbar.dot(data.upsilon_inv), data.H1)
    assert not wrong.leibniz_report().ok


def test_trivial_coring():
    A = product_field(2)
    cor = trivial_coring(A)
    assert validate_coring(cor).ok
    O = coring_to_dga(cor, 2)
    assert O.dims() == [2, 0, 0]
    M = regular_module(A)
    nabla = solve_homconnections(O, M).any()
    cm = homconn_to_contramodule(nabla)
    # phi(f) = f(x) with x = 1
    for j, g in enumerate(cm.hom.basis):
        assert (cm.phi[:, j] == g.dot(A.unit)).all()
    assert contramodule_checks(cm).ok
    back = contramodule_to_homconn(cm, O)
    assert back.nabla0.shape == (2, 0)
    assert [homology(nabla, n).dim for n in range(2)] == [2, 0]
    res = cosplit_check(cor, O)
    assert res is not None and is_zero(res.xi) and res.xi.shape == (0,)


@pytest.mark.parametrize("A", [ground_field(), product_field(2), group_algebra(2),
                               dual_numbers(), matrix_algebra(2)], ids=lambda A: A.name)
def test_sweedler_reproduces_universal(A):
    cor = sweedler_coring(A)
    assert validate_coring(cor).ok
    R = coring_to_dga(cor, 2)
    U = universal_calculus(A, 2)
    assert R.dims() == U.dims()
    Phi = sweedler_identification(R, U)
    for n in range(3):
        if Phi[n].shape[0]:
            inverse(Phi[n])
    for n in range(2):
        assert (Phi[n + 1].dot(R.d[n]) == U.d[n].dot(Phi[n])).all()


def test_sweedler_calculus_validates():
    R = coring_to_dga(sweedler_coring(product_field(2)), 3)
    assert R.dims() == [2, 2, 2, 2]
    assert validate_calculus(R).ok


def test_cosplit_sweedler():
    for A in (product_field(2), group_algebra(2)):
        cor = sweedler_coring(A)
        O = coring_to_dga(cor, 2)
        res = cosplit_check(cor, O)
        assert res is not None and res.report.ok
        assert is_separability_element(A, res.iota)
        assert (O.meta["kernel"].combine(res.xi) == res.iota - kron(A.unit, A.unit)).all()
    assert cosplit_check(sweedler_coring(dual_numbers())) is None


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2)], ids=lambda A: A.name)
def test_contramodule_round_trip_and_pentagon(A):
    cor = sweedler_coring(A)
    O = coring_to_dga(cor, 2)
    M = regular_module(A)
    for nabla in solve_homconnections(O, M).all_generators():
        cm = homconn_to_contramodule(nabla)
        rep = contramodule_checks(cm)
        assert [l for l in rep.labels() if l != "pentagon"] == []
        assert ("pentagon" not in rep.labels()) == nabla.is_flat()
        assert (contramodule_to_homconn(cm, O).nabla0 == nabla.nabla0).all()


def test_grouplike_coring_flat_and_nonflat():
    A = product_field(2)
    cor = grouplike_coring(A, 2)
    assert validate_coring(cor).ok
    O = coring_to_dga(cor, 2)
    M = regular_module(A)
    g1, g2 = grouplike_element(cor, 0), grouplike_element(cor, 1)
    flat = cosplit_check(cor, O, g2)
    nabla = inner_homconnection(O, M, flat.xi)
    assert flat.grouplike and nabla.is_flat()
    assert "pentagon" not in contramodule_checks(homconn_to_contramodule(nabla)).labels()
    assert [homology(nabla, n).dim for n in range(2)] == [0, 0]
    half = cosplit_check(cor, O, (g1 + g2) * QQ("1/2"))
    bent = inner_homconnection(O, M, half.xi)
    assert not half.grouplike and not bent.is_flat()
    assert "pentagon" in contramodule_checks(homconn_to_contramodule(bent)).labels()


def test_coring_without_grouplike_refused():
    cor = sweedler_coring(product_field(2))
    bare = type(cor)(cor.algebra, cor.bimodule, cor.tensor, cor.coproduct, cor.counit, None)
    with pytest.raises(ValueError):
        coring_to_dga(bare)


def test_broken_counit_detected():
    cor = sweedler_coring(product_field(2))
    bad = type(cor)(cor.algebra, cor.bimodule, cor.tensor, cor.coproduct, cor.counit * 2,
                    cor.grouplike)
    assert not validate_coring(bad).ok
    assert find_separability(product_field(2)) is not None
    assert eye(QQ, 1).shape == (1, 1)
