"""Built-in example algebras, calculi and corings."""

import numpy

from .exactlin import QQ, zeros, unit_vector
from .algrep import FinAlgebra

__all__ = ["ground_field", "product_field", "matrix_algebra", "group_algebra",
           "dual_numbers", "algebra_by_name"]


def ground_field(field=QQ):
    mult = zeros(field, 1, 1, 1)
    mult[0, 0, 0] = field.one
    return FinAlgebra(field, mult, unit_vector(field, 1, 0), "k")


def product_field(m, field=QQ):
    """k x ... x k (m copies) with orthogonal idempotent basis."""
    if m < 1:
        raise ValueError("product-field needs m >= 1")
    mult = zeros(field, m, m, m)
    for i in range(m):
        mult[i, i, i] = field.one
    unit = numpy.array([field.one] * m, dtype=object)
    return FinAlgebra(field, mult, unit, "k^%d" % m if m > 1 else "k")


def matrix_algebra(n, field=QQ):
    """M_n(k) with matrix units e_ij at index i*n + j."""
    if n < 1:
        raise ValueError("matrix-algebra needs n >= 1")
    d = n * n
    mult = zeros(field, d, d, d)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[i * n + j, j * n + l, i * n + l] = field.one
    unit = zeros(field, d)
    for i in range(n):
        unit[i * n + i] = field.one
    return FinAlgebra(field, mult, unit, "M%d" % n)


def group_algebra(n, field=QQ):
    """k[Z/n] with basis g^0, ..., g^(n-1)."""
    if n < 1:
        raise ValueError("group-algebra needs n >= 1")
    mult = zeros(field, n, n, n)
    for i in range(n):
        for j in range(n):
            mult[i, j, (i + j) % n] = field.one
    return FinAlgebra(field, mult, unit_vector(field, n, 0), "k[Z/%d]" % n)


def dual_numbers(field=QQ):
    """k[t]/(t^2) with basis 1, t."""
    mult = zeros(field, 2, 2, 2)
    mult[0, 0, 0] = field.one
    mult[0, 1, 1] = field.one
    mult[1, 0, 1] = field.one
    return FinAlgebra(field, mult, unit_vector(field, 2, 0), "k[t]/t^2")


def algebra_by_name(ident, field=QQ):
    """Parse ids such as 'product-field-2', 'matrix-algebra 2', 'group-algebra Z/2'."""
    s = ident.strip().replace("Z/", "").replace(" ", "-")
    parts = s.split("-")
    if s in ("k", "field", "ground-field"):
        return ground_field(field)
    if s == "dual-numbers":
        return dual_numbers(field)
    head, arg = "-".join(parts[:-1]), parts[-1]
    try:
        n = int(arg)
    except ValueError:
        raise KeyError("unknown algebra %r" % ident)
    makers = {"product-field": product_field, "matrix-algebra": matrix_algebra,
              "group-algebra": group_algebra}
    if head not in makers:
        raise KeyError("unknown algebra %r" % ident)
    return makers[head](n, field)
