import numpy
import pytest
from hypothesis import given, strategies as st

from homconnections.exactlin import (GF, QQ, FieldMismatch, balanced_tensor, inverse, is_zero,
                                     kernel, kron, kron_apply, matrix, quotient, rank, rref,
                                     solve_affine, span, tensor_over_algebra, vector)
from homconnections.zoo import product_field

import oracles


def test_scalar_division():
    sol = solve_affine(matrix(QQ, [[2]]), vector(QQ, [4]), QQ)
    assert sol.solvable
    assert list(sol.particular) == [2]
    assert sol.homogeneous.dim == 0


def test_rank_one_kernel_is_rref_normalised():
    sol = solve_affine(matrix(QQ, [[1, 1]]), vector(QQ, [0]), QQ)
    assert list(sol.particular) == [0, 0]
    # same span as [-1, 1], written with leading entry 1
    assert sol.homogeneous == span(QQ, 2, [vector(QQ, [-1, 1])])
    assert [list(v) for v in sol.homogeneous.vectors()] == [[1, -1]]


def test_inconsistent_system():
    sol = solve_affine(matrix(QQ, [[1], [1]]), vector(QQ, [1, 2]), QQ)
    assert not sol.solvable


def test_kernel_examples():
    assert kernel(numpy.identity(3, dtype=object) * QQ.one, QQ).dim == 0
    assert kernel(matrix(QQ, [[0, 0, 0], [0, 0, 0]]), QQ).dim == 3
    m = matrix(QQ, [[1, 2, 3]])
    K = kernel(m, QQ)
    assert K.dim == 2
    for v in K.vectors():
        assert is_zero(m.dot(v))


def test_quotient_examples():
    P, S = quotient(2, span(QQ, 2, [vector(QQ, [1, 0])]))
    assert P.shape == (1, 2)
    assert is_zero(P.dot(vector(QQ, [1, 0])))
    P, S = quotient(3, span(QQ, 3, []))
    assert (P == numpy.identity(3, dtype=object)).all()
    P, S = quotient(3, span(QQ, 3, [vector(QQ, [1, 1, 0])]))
    assert P.shape == (2, 3)
    assert (P.dot(S) == numpy.identity(2, dtype=object)).all()
    assert is_zero(P.dot(vector(QQ, [1, 1, 0])))


def test_tensor_over_algebra_examples():
    A = product_field(2)
    T = tensor_over_algebra(A.right_mats, A.left_mats, QQ)
    assert T.dim == 2
    # over k the tensor is the plain one
    V = [numpy.identity(3, dtype=object) * QQ.one]
    W = [numpy.identity(2, dtype=object) * QQ.one]
    assert tensor_over_algebra(V, W, QQ).dim == 6


def test_balanced_tensor_matches_oracle_rank():
    A = product_field(3)
    T = balanced_tensor(QQ, (3, 3), [A.right_mats], [A.left_mats])
    # relations v a (x) w - v (x) a w, counted independently
    rows = []
    for R, L in zip(A.right_mats, A.left_mats):
        rel = kron(R, numpy.identity(3, dtype=object)) - kron(numpy.identity(3, dtype=object), L)
        rows.extend(oracles.to_rows(rel.T))
    assert T.dim == 9 - oracles.rank(rows)


def test_field_mismatch_is_reported():
    F = GF(5)
    with pytest.raises(FieldMismatch):
        QQ(F(2))
    with pytest.raises(FieldMismatch):
        GF(7)(F(1))


def test_inverse_and_singular():
    m = matrix(QQ, [[2, 1], [1, 1]])
    assert (inverse(m).dot(m) == numpy.identity(2, dtype=object)).all()
    with pytest.raises(ZeroDivisionError):
        inverse(matrix(QQ, [[1, 2], [2, 4]]))


def test_kron_apply_agrees_with_kron():
    a = matrix(QQ, [[1, 2], [3, 4], [5, 6]])
    b = matrix(QQ, [["1/2", 0], [1, -1]])
    X = matrix(QQ, [[i * 4 + j for j in range(3)] for i in range(4)])
    assert (kron_apply([a, b], X) == kron(a, b).dot(X)).all()
    I2 = numpy.identity(2, dtype=object) * QQ.one
    assert (kron_apply([2, b], X) == kron(I2, b).dot(X)).all()


small = st.integers(-4, 4)


@st.composite
def qmatrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    den = draw(st.integers(1, 3))
    return matrix(QQ, [["%d/%d" % (x, den) for x in row] for row in rows])


@given(qmatrices())
def test_rank_agrees_with_fraction_oracle(m):
    assert rank(m, QQ) == oracles.rank(oracles.to_rows(m))


@given(qmatrices())
def test_rref_is_reduced(m):
    R, piv = rref(m, QQ)
    for i, p in enumerate(piv):
        assert R[i, p] == 1
        assert all(R[k, p] == 0 for k in range(R.shape[0]) if k != i)
        assert all(R[i, j] == 0 for j in range(p))
    assert list(piv) == sorted(piv)


@given(qmatrices())
def test_kernel_vectors_are_killed_and_complete(m):
    K = kernel(m, QQ)
    assert K.dim == m.shape[1] - oracles.rank(oracles.to_rows(m))
    for v in K.vectors():
        assert is_zero(m.dot(v))


@given(qmatrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_affine_particular_solves(m, x):
    b = m.dot(vector(QQ, x[:m.shape[1]]))
    sol = solve_affine(m, b, QQ)
    assert sol.solvable
    assert (m.dot(sol.particular) == b).all()


@given(qmatrices())
def test_span_is_basis_independent(m):
    rows = [m[i] for i in range(m.shape[0])]
    assert span(QQ, m.shape[1], rows) == span(QQ, m.shape[1], rows[::-1] + [rows[0] * 2])


primes = st.sampled_from([2, 3, 5, 7, 13])


@given(primes, st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x + (-x) == F.zero
    if x != 0:
        assert x * (F.one / x) == F.one


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_rational_field_roundtrip(a, b, c, d):
    x = QQ("%d/%d" % (a, b))
    y = QQ("%d/%d" % (c, d))
    assert QQ(QQ.fmt(x)) == x
    assert (x + y) - y == x
