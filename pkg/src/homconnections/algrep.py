"""
Finite-dimensional algebras, modules and bimodules by structure constants,
and spaces of module maps between them.

Conventions: elements are coordinate vectors; a linear map is the matrix
acting on column vectors.  A right action stores rho[j] with
``v . e_j = rho[j] @ v``, so ``rho(ab) = rho(b) rho(a)``; a left action stores
lam[j] with ``e_j . v = lam[j] @ v``.  Hom_A always means right A-linear maps.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy

from .exactlin import (Subspace, _kernel_sparse, eye, field_of, kron, zeros,
                       unit_vector)
from .report import Report

__all__ = [
    "FinAlgebra", "RightModule", "Bimodule", "HomSpace", "validate_algebra",
    "validate_module", "validate_bimodule", "hom_space", "dual_module",
    "regular_bimodule", "regular_module", "linearity_rows",
]


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    """Associative unital algebra: e_i e_j = sum_k mult[i, j, k] e_k."""

    field: object
    mult: numpy.ndarray
    unit: numpy.ndarray
    name: str = "A"

    @property
    def dim(self):
        return self.mult.shape[0]

    def basis(self, i):
        return unit_vector(self.field, self.dim, i)

    def mul(self, x, y):
        return numpy.tensordot(numpy.tensordot(x, self.mult, axes=(0, 0)), y, axes=(0, 0))

    def left_matrix(self, x):
        """Matrix of y -> x y."""
        return numpy.tensordot(x, self.mult, axes=(0, 0)).T.copy()

    def right_matrix(self, y):
        """Matrix of x -> x y."""
        return numpy.tensordot(self.mult, y, axes=(1, 0)).T.copy()

    @cached_property
    def left_mats(self):
        return tuple(self.left_matrix(self.basis(i)) for i in range(self.dim))

    @cached_property
    def right_mats(self):
        return tuple(self.right_matrix(self.basis(i)) for i in range(self.dim))

    @cached_property
    def mu(self):
        """Multiplication A (x) A -> A as a dim x dim^2 matrix."""
        n = self.dim
        return self.mult.reshape(n * n, n).T.copy()

    def opposite(self):
        return FinAlgebra(self.field, self.mult.transpose(1, 0, 2).copy(), self.unit,
                          self.name + "^op")

    def __repr__(self):
        return "FinAlgebra(%s, dim=%d, %r)" % (self.name, self.dim, self.field)


@dataclass(frozen=True, eq=False)
class RightModule:
    algebra: FinAlgebra
    action: tuple
    name: str = "M"

    @property
    def dim(self):
        return self.action[0].shape[0]

    @property
    def field(self):
        return self.algebra.field

    def action_matrix(self, a):
        out = zeros(self.field, self.dim, self.dim)
        for j, x in enumerate(a):
            if x != 0:
                out = out + x * self.action[j]
        return out

    def act(self, v, a):
        return self.action_matrix(a).dot(v)

    @property
    def right_action(self):
        return self.action

    def __repr__(self):
        return "RightModule(%s, dim=%d over %s)" % (self.name, self.dim, self.algebra.name)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A (B, A)-bimodule: left action of ``left_algebra`` B, right action of A."""

    left_algebra: FinAlgebra
    right_algebra: FinAlgebra
    left_action: tuple
    right_action: tuple
    name: str = "E"

    @property
    def dim(self):
        return self.right_action[0].shape[0]

    @property
    def field(self):
        return self.right_algebra.field

    @property
    def algebra(self):
        return self.right_algebra

    @property
    def action(self):
        return self.right_action

    def left_matrix(self, b):
        out = zeros(self.field, self.dim, self.dim)
        for j, x in enumerate(b):
            if x != 0:
                out = out + x * self.left_action[j]
        return out

    def right_matrix(self, a):
        out = zeros(self.field, self.dim, self.dim)
        for j, x in enumerate(a):
            if x != 0:
                out = out + x * self.right_action[j]
        return out

    def as_right_module(self):
        return RightModule(self.right_algebra, self.right_action, self.name)

    def __repr__(self):
        return "Bimodule(%s, dim=%d, %s-%s)" % (self.name, self.dim, self.left_algebra.name,
                                                self.right_algebra.name)


def regular_bimodule(A):
    return Bimodule(A, A, A.left_mats, A.right_mats, A.name)


def regular_module(A):
    return RightModule(A, A.right_mats, A.name)


# ---------------------------------------------------------------------------
# validation

def _eq(x, y):
    return all(a == b for a, b in zip(numpy.asarray(x).flat, numpy.asarray(y).flat))


def validate_algebra(A):
    rep = Report("algebra %s" % A.name)
    n = A.dim
    c = A.mult
    # (e_i e_j) e_l vs e_i (e_j e_l)
    lhs = numpy.tensordot(c, c, axes=([2], [0]))                       # i j l t
    rhs = numpy.tensordot(c, c, axes=([2], [1])).transpose(2, 0, 1, 3)  # i j l t
    for i in range(n):
        for j in range(n):
            for l in range(n):
                rep.check(_eq(lhs[i, j, l], rhs[i, j, l]), "associativity", triple=(i, j, l))
    u = A.unit
    for i in range(n):
        e = A.basis(i)
        rep.check(_eq(A.mul(u, e), e), "left unit", index=i)
        rep.check(_eq(A.mul(e, u), e), "right unit", index=i)
    return rep


def validate_module(M):
    A = M.algebra
    rep = Report("right module %s" % M.name)
    rep.check(len(M.action) == A.dim, "action count", expected=A.dim, got=len(M.action))
    I = eye(A.field, M.dim)
    rep.check(_eq(M.action_matrix(A.unit), I), "unit acts as identity")
    for i in range(A.dim):
        for j in range(A.dim):
            prod = M.action_matrix(A.mul(A.basis(i), A.basis(j)))
            rep.check(_eq(prod, M.action[j].dot(M.action[i])), "right action law", pair=(i, j))
    return rep


def validate_bimodule(E):
    rep = Report("bimodule %s" % E.name)
    B, A = E.left_algebra, E.right_algebra
    rep.extend(validate_module(E.as_right_module()))
    I = eye(A.field, E.dim)
    rep.check(_eq(E.left_matrix(B.unit), I), "left unit acts as identity")
    for i in range(B.dim):
        for j in range(B.dim):
            prod = E.left_matrix(B.mul(B.basis(i), B.basis(j)))
            rep.check(_eq(prod, E.left_action[i].dot(E.left_action[j])), "left action law",
                      pair=(i, j))
    for i in range(B.dim):
        for j in range(A.dim):
            rep.check(_eq(E.left_action[i].dot(E.right_action[j]),
                          E.right_action[j].dot(E.left_action[i])), "actions commute",
                      pair=(i, j))
    return rep


# ---------------------------------------------------------------------------
# hom spaces

def _sparse_cols(m):
    return [{i: x for i, x in enumerate(m[:, j]) if x != 0} for j in range(m.shape[1])]


def _sparse_rows_of(m):
    return [{j: x for j, x in enumerate(m[i]) if x != 0} for i in range(m.shape[0])]


def linearity_rows(src_actions, tgt_actions, dv, dm):
    """Sparse rows of the system L rho_V(a) - rho_M(a) L = 0 in vec(L) (row-major).

    Row order is (a, r, c): one row per algebra basis element and entry of the
    dm x dv product.
    """
    rows = []
    for rv, rm in zip(src_actions, tgt_actions):
        vcols = _sparse_cols(numpy.asarray(rv, dtype=object))
        mrows = _sparse_rows_of(numpy.asarray(rm, dtype=object))
        for r in range(dm):
            for c in range(dv):
                row = {}
                for k, x in vcols[c].items():
                    row[r * dv + k] = row.get(r * dv + k, 0) + x
                for k, x in mrows[r].items():
                    row[k * dv + c] = row.get(k * dv + c, 0) - x
                rows.append({i: x for i, x in row.items() if x != 0})
    return rows


@dataclass(frozen=True, eq=False)
class HomSpace:
    """Hom_A(V, M) with basis matrices (dim M x dim V) from an RREF subspace."""

    source: object
    target: object
    subspace: Subspace
    right_action: tuple = None
    acting_algebra: FinAlgebra = None

    @property
    def dim(self):
        return self.subspace.dim

    @property
    def field(self):
        return self.subspace.field

    @property
    def shape(self):
        return (self.target.dim, self.source.dim)

    def element(self, coords):
        return self.subspace.combine(coords).reshape(self.shape)

    def coords(self, mat, check=True):
        return self.subspace.coords(numpy.asarray(mat, dtype=object).reshape(-1), check=check)

    def contains(self, mat):
        return self.subspace.contains(numpy.asarray(mat, dtype=object).reshape(-1))

    @cached_property
    def basis(self):
        return [v.reshape(self.shape) for v in self.subspace.vectors()]

    @property
    def module(self):
        if self.right_action is None:
            raise ValueError("hom space has no induced right action (source is not a bimodule)")
        return RightModule(self.acting_algebra, self.right_action, "Hom")

    def coords_matrix(self, maps):
        """Stack coordinates of several maps as columns."""
        return _columns(self.field, self.dim, [self.coords(m) for m in maps])

    def __repr__(self):
        return "HomSpace(dim=%d, %d -> %d)" % (self.dim, self.source.dim, self.target.dim)


def hom_space(V, M):
    """Right-linear maps V -> M; if V is a bimodule, with (f b)(v) = f(b v)."""
    src = V.right_action
    if V.algebra.dim != M.algebra.dim:
        raise ValueError("modules over different algebras")
    field = M.field
    dv, dm = V.dim, M.dim
    rows = linearity_rows(src, M.action, dv, dm)
    sub = _kernel_sparse(rows, dv * dm, field)
    hs = HomSpace(V, M, sub)
    if isinstance(V, Bimodule):
        action = []
        for lam in V.left_action:
            cols = [hs.coords(f.dot(lam)) for f in hs.basis]
            action.append(_columns(field, hs.dim, cols))
        hs = HomSpace(V, M, sub, tuple(action), V.left_algebra)
    return hs


def _columns(field, n, cols):
    out = zeros(field, n, len(cols))
    for j, c in enumerate(cols):
        out[:, j] = c
    return out


def dual_module(V, with_hom=False):
    """Hom_A(V, A) as an (A, B)-bimodule with (a xi b)(w) = a xi(b w).

    With ``with_hom`` the underlying HomSpace (whose basis gives the
    bimodule coordinates) is returned as well.
    """
    A = V.right_algebra
    hs = hom_space(V, regular_module(A))
    field = A.field
    left = []
    for La in A.left_mats:
        left.append(_columns(field, hs.dim, [hs.coords(La.dot(f)) for f in hs.basis]))
    right = hs.right_action
    dual = Bimodule(A, V.left_algebra, tuple(left), right, V.name + "*")
    return (dual, hs) if with_hom else dual
