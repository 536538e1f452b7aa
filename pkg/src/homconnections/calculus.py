"""
Truncated differential graded algebras over a finite-dimensional algebra.

A :class:`GradedCalculus` stores the components Omega^1..Omega^D as
A-bimodules, the differentials d_0..d_{D-1} as matrices, and the products
Omega^m x Omega^n -> Omega^{m+n} (m, n >= 1) as 3-index tensors.  Products
involving degree 0 are never stored; they come from the bimodule actions.
"""

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy

from .algrep import Bimodule, FinAlgebra, regular_bimodule
from .exactlin import (Subspace, eye, is_zero, kernel, kron, quotient, solve_affine,
                       span, unit_vector, zeros)
from .report import Report

__all__ = [
    "GradedCalculus", "InnerForm", "SeparabilityElement", "zero_calculus",
    "universal_calculus", "validate_calculus", "find_inner_form", "find_separability",
    "is_inner_form", "is_separability_element", "cohomology", "Cohomology", "subquotient", "Subquotient",
    "quotient_calculus", "DEFAULT_TRUNCATION",
]

DEFAULT_TRUNCATION = 3


@dataclass(frozen=True, eq=False)
class GradedCalculus:
    algebra: FinAlgebra
    truncation: int
    components: tuple      # Bimodule for degrees 1..D
    d: tuple               # d_0 .. d_{D-1}
    products: dict         # (m, n) -> tensor (dim_m, dim_n, dim_{m+n}), m, n >= 1
    name: str = "Omega"
    meta: dict = dc_field(default_factory=dict, repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.algebra.field

    def dim(self, n):
        if n == 0:
            return self.algebra.dim
        self._check_degree(n)
        return self.components[n - 1].dim

    def dims(self):
        return [self.dim(n) for n in range(self.truncation + 1)]

    def _check_degree(self, n):
        if not 0 <= n <= self.truncation:
            raise IndexError("degree %d outside stored range 0..%d" % (n, self.truncation))

    def component(self, n):
        if n == 0:
            return regular_bimodule(self.algebra)
        self._check_degree(n)
        return self.components[n - 1]

    def basis(self, n, i):
        return unit_vector(self.field, self.dim(n), i)

    def diff(self, n):
        if not 0 <= n < self.truncation:
            raise IndexError("d_%d needs degree %d <= truncation %d" % (n, n + 1, self.truncation))
        return self.d[n]

    def tensor(self, m, n):
        """T with e_i e_j = sum_k T[i, j, k] e_k for e_i in Omega^m, e_j in Omega^n."""
        key = ("T", m, n)
        if key in self._cache:
            return self._cache[key]
        if m + n > self.truncation:
            raise IndexError("product of degrees %d and %d exceeds truncation %d"
                             % (m, n, self.truncation))
        if m == 0 and n == 0:
            T = self.algebra.mult
        elif m == 0:
            lam = self.component(n).left_action
            T = numpy.array([L.T for L in lam], dtype=object).reshape(
                self.algebra.dim, self.dim(n), self.dim(n))
        elif n == 0:
            rho = self.component(m).right_action
            T = numpy.array([R.T for R in rho], dtype=object).reshape(
                self.algebra.dim, self.dim(m), self.dim(m)).transpose(1, 0, 2)
        else:
            T = self.products[(m, n)]
        self._cache[key] = T
        return T

    def mul(self, omega, m, eta, n):
        T = self.tensor(m, n)
        if T.size == 0:
            return zeros(self.field, self.dim(m + n))
        return numpy.tensordot(numpy.tensordot(omega, T, axes=(0, 0)), eta, axes=(0, 0))

    def left_mult(self, omega, m, n):
        """Matrix Omega^n -> Omega^{m+n} of eta -> omega eta."""
        T = self.tensor(m, n)
        if T.size == 0:
            return zeros(self.field, self.dim(m + n), self.dim(n))
        return numpy.tensordot(omega, T, axes=(0, 0)).T.copy()

    def right_mult(self, eta, n, m):
        """Matrix Omega^m -> Omega^{m+n} of omega -> omega eta (eta of degree n)."""
        T = self.tensor(m, n)
        if T.size == 0:
            return zeros(self.field, self.dim(m + n), self.dim(m))
        return numpy.tensordot(T, eta, axes=(1, 0)).T.copy()

    def left_mult_basis(self, m, i, n):
        key = ("L", m, i, n)
        if key not in self._cache:
            self._cache[key] = self.left_mult(self.basis(m, i), m, n)
        return self._cache[key]

    def __repr__(self):
        return "GradedCalculus(%s over %s, dims=%s)" % (self.name, self.algebra.name, self.dims())


class InnerForm(NamedTuple):
    xi: numpy.ndarray


class SeparabilityElement(NamedTuple):
    iota: numpy.ndarray


def _zero_bimodule(A):
    empty = tuple(zeros(A.field, 0, 0) for _ in range(A.dim))
    return Bimodule(A, A, empty, empty, "0")


def zero_calculus(A, D=DEFAULT_TRUNCATION):
    if D < 1:
        raise ValueError("truncation must be >= 1")
    comps = tuple(_zero_bimodule(A) for _ in range(D))
    d = (zeros(A.field, 0, A.dim),) + tuple(zeros(A.field, 0, 0) for _ in range(D - 1))
    prods = {(m, n): zeros(A.field, 0, 0, 0) for m in range(1, D) for n in range(1, D - m + 1)}
    return GradedCalculus(A, D, comps, d, prods, "zero")


# ---------------------------------------------------------------------------
# the universal calculus inside tensor powers of A

def _digits(idx, N, length):
    out = [0] * length
    for p in range(length - 1, -1, -1):
        idx, out[p] = divmod(idx, N)
    return out


def _index(digits, N):
    idx = 0
    for x in digits:
        idx = idx * N + x
    return idx


def _sparse(v):
    return {i: x for i, x in enumerate(v) if x != 0}


def _add(acc, key, val):
    nv = acc.get(key, 0) + val
    if nv == 0:
        acc.pop(key, None)
    else:
        acc[key] = nv


def _coords_from(sub, dct, field):
    return numpy.array([dct.get(p, field.zero) for p in sub.pivots], dtype=object)


def _mult_sparse(A):
    c = A.mult
    N = A.dim
    table = {}
    for i in range(N):
        for j in range(N):
            table[i, j] = [(k, c[i, j, k]) for k in range(N) if c[i, j, k] != 0]
    return table


def universal_calculus(A, D=DEFAULT_TRUNCATION):
    """Omega^n = intersection of ker(mu at position i) inside A^{(x)(n+1)}.

    Products concatenate tensors multiplying the two middle factors and
    d(a_0 (x) ... (x) a_n) = sum_i (-1)^i (1 inserted at position i).
    ``meta['ambient']`` holds the Subspace of each Omega^n.
    """
    if D < 1:
        raise ValueError("truncation must be >= 1")
    field = A.field
    N = A.dim
    mtab = _mult_sparse(A)
    unit = [(k, x) for k, x in enumerate(A.unit) if x != 0]
    I = eye(field, N)

    subs = [Subspace.full(field, N)]
    for n in range(1, D + 1):
        blocks = []
        for i in range(n):
            blocks.append(kron(eye(field, N ** i), A.mu, eye(field, N ** (n - 1 - i))))
        subs.append(kernel(numpy.concatenate(blocks, axis=0), field))
    vecs = [[_sparse(v) for v in s.vectors()] for s in subs]

    def act_left(j, dct, length):
        out = {}
        for idx, x in dct.items():
            dg = _digits(idx, N, length)
            for k, y in mtab[j, dg[0]]:
                _add(out, _index([k] + dg[1:], N), x * y)
        return out

    def act_right(j, dct, length):
        out = {}
        for idx, x in dct.items():
            dg = _digits(idx, N, length)
            for k, y in mtab[dg[-1], j]:
                _add(out, _index(dg[:-1] + [k], N), x * y)
        return out

    comps = []
    for n in range(1, D + 1):
        sub = subs[n]
        left, right = [], []
        for j in range(N):
            L = zeros(field, sub.dim, sub.dim)
            R = zeros(field, sub.dim, sub.dim)
            for col, v in enumerate(vecs[n]):
                L[:, col] = _coords_from(sub, act_left(j, v, n + 1), field)
                R[:, col] = _coords_from(sub, act_right(j, v, n + 1), field)
            left.append(L)
            right.append(R)
        comps.append(Bimodule(A, A, tuple(left), tuple(right), "Omega^%d" % n))

    def diff_sparse(dct, length):
        out = {}
        for idx, x in dct.items():
            dg = _digits(idx, N, length)
            for pos in range(length + 1):
                sign = -x if pos % 2 else x
                for k, y in unit:
                    _add(out, _index(dg[:pos] + [k] + dg[pos:], N), sign * y)
        return out

    ds = []
    for n in range(D):
        dn = zeros(field, subs[n + 1].dim, subs[n].dim)
        for col, v in enumerate(vecs[n]):
            dn[:, col] = _coords_from(subs[n + 1], diff_sparse(v, n + 1), field)
        ds.append(dn)

    prods = {}
    for m in range(1, D):
        for n in range(1, D - m + 1):
            T = zeros(field, subs[m].dim, subs[n].dim, subs[m + n].dim)
            tail = N ** n
            for i, u in enumerate(vecs[m]):
                for j, v in enumerate(vecs[n]):
                    out = {}
                    for iu, x in u.items():
                        pre, last = divmod(iu, N)
                        for iv, y in v.items():
                            first, rest = divmod(iv, tail)
                            for k, z in mtab[last, first]:
                                _add(out, ((pre * N + k) * tail) + rest, x * y * z)
                    T[i, j] = _coords_from(subs[m + n], out, field)
            prods[(m, n)] = T
    return GradedCalculus(A, D, tuple(comps), tuple(ds), prods, "universal",
                          {"ambient": subs})


# ---------------------------------------------------------------------------
# validation

def _eq(x, y):
    return all(a == b for a, b in zip(numpy.asarray(x).flat, numpy.asarray(y).flat))


def _tensor_columns_differ(X, Y):
    """Index tuples where two equally shaped arrays differ (last axis compared)."""
    bad = []
    for idx in numpy.ndindex(*X.shape[:-1]):
        if not _eq(X[idx], Y[idx]):
            bad.append(idx)
    return bad


def validate_calculus(O):
    """Check d^2 = 0, graded Leibniz, associativity and bimodule laws on bases."""
    from .algrep import validate_bimodule
    rep = Report("calculus %s" % O.name)
    D = O.truncation
    A = O.algebra
    rep.check(len(O.components) == D, "component count")
    rep.check(len(O.d) == D, "differential count")
    for n in range(1, D + 1):
        rep.extend(validate_bimodule(O.component(n)), prefix="Omega^%d" % n)
    for n in range(D):
        rep.check(O.d[n].shape == (O.dim(n + 1), O.dim(n)), "d_%d shape" % n)
    for n in range(D - 1):
        dd = O.d[n + 1].dot(O.d[n])
        for col in range(O.dim(n)):
            rep.check(is_zero(dd[:, col]), "d∘d = 0", degree=n, basis=col)
    # graded Leibniz: d(w e) = (dw) e + (-1)^m w (de)
    for m in range(D):
        for n in range(D - m):
            if m + n + 1 > D:
                continue
            T = O.tensor(m, n)
            dm, dn = O.dim(m), O.dim(n)
            lhs = numpy.tensordot(T, O.d[m + n], axes=([2], [1])) if T.size else \
                zeros(O.field, dm, dn, O.dim(m + n + 1))
            T1 = O.tensor(m + 1, n)
            T2 = O.tensor(m, n + 1)
            dw = numpy.tensordot(O.d[m], T1, axes=([0], [0])) if T1.size else \
                zeros(O.field, dm, dn, O.dim(m + n + 1))
            de = numpy.tensordot(O.d[n], T2, axes=([0], [1])).transpose(1, 0, 2) if T2.size else \
                zeros(O.field, dm, dn, O.dim(m + n + 1))
            sign = -1 if m % 2 else 1
            rhs = dw + sign * de
            for idx in _tensor_columns_differ(lhs, rhs):
                rep.violations.append(("graded Leibniz", {"degrees": (m, n), "pair": idx}))
            rep.checked += dm * dn
    # associativity over all degree triples (degree 0 included)
    for l in range(D + 1):
        for m in range(D + 1 - l):
            for n in range(D + 1 - l - m):
                if l + m + n == 0:
                    continue
                X = _triple(O, l, m, n, left_first=True)
                Y = _triple(O, l, m, n, left_first=False)
                for idx in _tensor_columns_differ(X, Y):
                    rep.violations.append(("associativity", {"degrees": (l, m, n), "triple": idx}))
                rep.checked += max(1, X.size // max(1, X.shape[-1]))
    return rep


def _triple(O, l, m, n, left_first):
    shape = (O.dim(l), O.dim(m), O.dim(n), O.dim(l + m + n))
    if 0 in shape:
        return zeros(O.field, *shape)
    if left_first:
        return numpy.tensordot(O.tensor(l, m), O.tensor(l + m, n), axes=([2], [0]))
    return numpy.tensordot(O.tensor(m, n), O.tensor(l, m + n), axes=([2], [1])).transpose(2, 0, 1, 3)


# ---------------------------------------------------------------------------
# inner forms and separability

def _stack(blocks, field, ncols):
    if not blocks:
        return zeros(field, 0, ncols)
    return numpy.concatenate(blocks, axis=0)


def is_inner_form(O, xi):
    A = O.algebra
    Om = O.component(1)
    for j in range(A.dim):
        lhs = Om.left_action[j].dot(xi) - Om.right_action[j].dot(xi)
        if not _eq(lhs, O.d[0][:, j]):
            return False
    return True


def find_inner_form(O):
    """Solve a Xi - Xi a = da for Xi in Omega^1; canonical solution or None."""
    A = O.algebra
    Om = O.component(1)
    n1 = O.dim(1)
    blocks = [Om.left_action[j] - Om.right_action[j] for j in range(A.dim)]
    rhs = numpy.concatenate([O.d[0][:, j] for j in range(A.dim)]) if n1 else zeros(O.field, 0)
    sol = solve_affine(_stack(blocks, O.field, n1), rhs, O.field)
    if not sol.solvable:
        return None
    return InnerForm(sol.particular)


def separability_system(A):
    field = A.field
    n = A.dim
    I = eye(field, n)
    blocks = [kron(A.left_mats[j], I) - kron(I, A.right_mats[j]) for j in range(n)]
    blocks.append(A.mu)
    rhs = numpy.concatenate([zeros(field, n * n * n), A.unit])
    return numpy.concatenate(blocks, axis=0), rhs


def find_separability(A):
    """Solve a iota = iota a, mu(iota) = 1 for iota in A (x) A."""
    M, rhs = separability_system(A)
    sol = solve_affine(M, rhs, A.field)
    if not sol.solvable:
        return None
    return SeparabilityElement(sol.particular)


def is_separability_element(A, iota):
    M, rhs = separability_system(A)
    return _eq(M.dot(iota), rhs)


# ---------------------------------------------------------------------------
# subquotients and cohomology

class Subquotient(NamedTuple):
    dim: int
    representatives: list      # ambient vectors projecting to a basis of Z/B
    cycles: Subspace
    boundaries: Subspace
    projection: numpy.ndarray  # cycle coordinates -> class coordinates

    def class_of(self, v):
        """Class coordinates of an ambient vector lying in the cycles."""
        return self.projection.dot(self.cycles.coords(v))

    def is_boundary(self, v):
        return self.boundaries.contains(v)


def subquotient(Z, B):
    """Z / B for subspaces B <= Z of the same ambient space."""
    field = Z.field
    if not Z.contains_subspace(B):
        raise ValueError("boundaries are not contained in cycles")
    inner = span(field, Z.dim, [Z.coords(v) for v in B.vectors()])
    P, S = quotient(Z.dim, inner)
    reps = [Z.combine(S[:, i]) for i in range(S.shape[1])]
    return Subquotient(len(reps), reps, Z, B, P)


def _image(field, m, n_out):
    m = numpy.asarray(m, dtype=object)
    if m.shape[1] == 0:
        return Subspace.zero(field, n_out)
    return span(field, n_out, [m[:, j] for j in range(m.shape[1])])


Cohomology = Subquotient


def cohomology(O, n):
    """H^n of the stored complex: ker d_n / im d_{n-1}, with H^0 = ker d_0."""
    if n < 0 or n >= O.truncation:
        raise IndexError("H^%d needs d_%d, truncation is %d" % (n, n, O.truncation))
    Z = kernel(O.d[n], O.field)
    if n == 0:
        B = Subspace.zero(O.field, O.dim(0))
    else:
        B = _image(O.field, O.d[n - 1], O.dim(n))
    return subquotient(Z, B)


# ---------------------------------------------------------------------------
# quotient calculi

def quotient_calculus(O, generators):
    """Quotient of O by the differential ideal generated by homogeneous elements.

    ``generators`` is a list of (degree, vector).  Returns (quotient calculus,
    list of projection matrices Omega^n -> quotient degree n), the latter being
    a DGA map in every degree including the identity in degree 0.
    """
    D = O.truncation
    field = O.field
    A = O.algebra
    ideal = {n: [] for n in range(1, D + 1)}
    for deg, v in generators:
        if not 1 <= deg <= D:
            raise ValueError("generators must have degree 1..%d" % D)
        ideal[deg].append(numpy.asarray(v, dtype=object))
    subs = {}
    # saturate degree by degree: two-sided products and d
    for n in range(1, D + 1):
        vecs = list(ideal[n])
        for m in range(1, n):
            for w in subs[m].vectors():
                for k in range(O.dim(n - m)):
                    e = O.basis(n - m, k)
                    vecs.append(O.mul(w, m, e, n - m))
                    vecs.append(O.mul(e, n - m, w, m))
        if n >= 2:
            for w in subs[n - 1].vectors():
                vecs.append(O.d[n - 1].dot(w))
        # close under the bimodule actions
        sub = span(field, O.dim(n), vecs)
        while True:
            more = list(sub.vectors())
            comp = O.component(n)
            for w in sub.vectors():
                for j in range(A.dim):
                    more.append(comp.left_action[j].dot(w))
                    more.append(comp.right_action[j].dot(w))
            new = span(field, O.dim(n), more)
            if new.dim == sub.dim:
                break
            sub = new
        subs[n] = sub
    projections = [eye(field, A.dim)]
    sections = [eye(field, A.dim)]
    for n in range(1, D + 1):
        P, S = quotient(O.dim(n), subs[n])
        projections.append(P)
        sections.append(S)
    comps = []
    for n in range(1, D + 1):
        c = O.component(n)
        P, S = projections[n], sections[n]
        comps.append(Bimodule(A, A, tuple(P.dot(L).dot(S) for L in c.left_action),
                              tuple(P.dot(R).dot(S) for R in c.right_action), "Omega^%d" % n))
    ds = tuple(projections[n + 1].dot(O.d[n]).dot(sections[n]) for n in range(D))
    prods = {}
    for (m, n), T in O.products.items():
        Tm = numpy.tensordot(sections[m], T, axes=([0], [0])) if T.size else T
        Tm = numpy.tensordot(sections[n], Tm, axes=([0], [1])).transpose(1, 0, 2) if T.size else T
        Tm = numpy.tensordot(Tm, projections[m + n], axes=([2], [1])) if T.size else \
            zeros(field, projections[m].shape[0], projections[n].shape[0], projections[m + n].shape[0])
        prods[(m, n)] = Tm
    Q = GradedCalculus(A, D, tuple(comps), ds, prods, O.name + "/I")
    return Q, projections
