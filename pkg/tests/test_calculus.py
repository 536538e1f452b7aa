import dataclasses

import numpy
import pytest

from homconnections.calculus import (GradedCalculus, cohomology, find_inner_form,
                                     find_separability, is_inner_form,
                                     is_separability_element, quotient_calculus,
                                     universal_calculus, validate_calculus, zero_calculus)
from homconnections.exactlin import GF, QQ, kron, vector
from homconnections.zoo import (dual_numbers, ground_field, group_algebra, matrix_algebra,
                                product_field)

import oracles


def xi_of_iota(O, iota):
    """Xi = iota - 1 (x) 1 in Omega^1 coordinates of the universal calculus."""
    u = O.algebra.unit
    return O.meta["ambient"][1].coords(iota - kron(u, u))


def test_zero_calculus_valid():
    for A in (ground_field(), matrix_algebra(2)):
        O = zero_calculus(A, 3)
        assert O.dims() == [A.dim, 0, 0, 0]
        assert validate_calculus(O).ok


def test_universal_product_field_d2():
    O = universal_calculus(product_field(2), 2)
    assert O.dims() == [2, 2, 2]
    assert validate_calculus(O).ok


def test_negated_differential_breaks_leibniz():
    O = universal_calculus(product_field(2), 2)
    d0 = O.d[0].copy()
    d0[:, 0] = -d0[:, 0]
    bad = dataclasses.replace(O, d=(d0,) + O.d[1:], _cache={})
    rep = validate_calculus(bad)
    assert not rep.ok
    assert "graded Leibniz" in rep.labels()


def test_ground_field_has_no_forms():
    assert universal_calculus(ground_field(), 2).dims() == [1, 0, 0]


@pytest.mark.parametrize("A", [product_field(3), group_algebra(2), dual_numbers(),
                               matrix_algebra(2)], ids=lambda A: A.name)
def test_universal_dims_closed_form(A):
    D = 2 if A.dim == 4 else 3
    O = universal_calculus(A, D)
    assert O.dims() == oracles.universal_dims(A.dim, D)
    assert O.dim(1) == oracles.universal_omega1_rank(A)


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2), dual_numbers()],
                         ids=lambda A: A.name)
def test_universal_calculus_validates(A):
    assert validate_calculus(universal_calculus(A, 3)).ok


def test_universal_d0_is_commutator_with_unit_tensor():
    A = group_algebra(2)
    O = universal_calculus(A, 1)
    amb = O.meta["ambient"][1]
    u = A.unit
    for a in range(A.dim):
        e = A.basis(a)
        assert (amb.combine(O.d[0][:, a]) == kron(u, e) - kron(e, u)).all()


def test_inner_form_of_zero_calculus():
    xi = find_inner_form(zero_calculus(product_field(2), 2))
    assert xi is not None and xi.xi.shape == (0,)


@pytest.mark.parametrize("A", [product_field(2), group_algebra(2), matrix_algebra(2)],
                         ids=lambda A: A.name)
def test_separable_gives_inner_universal(A):
    sep = find_separability(A)
    assert sep is not None
    O = universal_calculus(A, 1)
    assert find_inner_form(O) is not None
    assert is_inner_form(O, xi_of_iota(O, sep.iota))


def test_separability_examples():
    assert list(find_separability(ground_field()).iota) == [1]
    A = product_field(2)
    e1, e2 = A.basis(0), A.basis(1)
    assert is_separability_element(A, kron(e1, e1) + kron(e2, e2))
    assert find_separability(dual_numbers()) is None
    assert find_separability(dual_numbers(GF(2))) is None
    assert find_inner_form(universal_calculus(dual_numbers(), 1)) is None


def test_group_algebra_separability_element():
    A = group_algebra(2)
    g0, g1 = A.basis(0), A.basis(1)
    iota = (kron(g0, g0) + kron(g1, g1)) * QQ("1/2")
    assert is_separability_element(A, iota)


def test_cohomology_examples():
    Z = zero_calculus(matrix_algebra(2), 2)
    assert cohomology(Z, 0).dim == 4
    assert cohomology(Z, 1).dim == 0
    O = universal_calculus(product_field(2), 3)
    H0 = cohomology(O, 0)
    assert H0.dim == 1
    assert H0.cycles.contains(O.algebra.unit)
    # the universal calculus is acyclic above degree 0
    assert cohomology(O, 1).dim == 0
    assert cohomology(O, 2).dim == 0


def test_quotient_calculus_is_a_calculus():
    O = universal_calculus(product_field(2), 3)
    Q, P = quotient_calculus(O, [(1, vector(QQ, [0, 1]))])
    assert validate_calculus(Q).ok
    assert Q.dims() == [2, 1, 0, 0]
    Q2, _ = quotient_calculus(O, [(2, vector(QQ, [1, 0]))])
    assert validate_calculus(Q2).ok
    assert Q2.dims()[1] == 2


def test_calculus_over_prime_field():
    O = universal_calculus(group_algebra(3, GF(5)), 2)
    assert O.dims() == [3, 6, 12]
    assert validate_calculus(O).ok


def test_graded_calculus_degree_checks():
    O = universal_calculus(product_field(2), 2)
    with pytest.raises(IndexError):
        O.dim(3)
    with pytest.raises(IndexError):
        O.diff(2)
    assert isinstance(O, GradedCalculus)
    assert numpy.asarray(O.d[0]).shape == (2, 2)
