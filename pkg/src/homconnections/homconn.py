"""
Hom-connections Hom_A(Omega^1, M) -> M and everything built from them.

Hom spaces H_n = Hom_A(Omega^n, M) are coordinatised by their RREF bases
(see :class:`~homconnections.algrep.HomSpace`); H_0 = Hom_A(A, M) is tied to
M by evaluation at 1.  The right action of forms on hom spaces is
(f w)(w') = f(w w').
"""

from dataclasses import dataclass

import numpy

from .algrep import HomSpace, RightModule, hom_space, linearity_rows, regular_module
from .calculus import is_inner_form, subquotient, _image
from .exactlin import (AffineSolutionSet, Subspace, _solve_sparse, eye, is_zero, kernel,
                       zeros)
from .report import Report

__all__ = [
    "HomConnection", "HomConnectionSpace", "Curvature", "NonFlatError",
    "solve_homconnections", "inner_homconnection", "extend", "curvature",
    "theta_factorization_check", "lemma_leibniz_check", "curvature_linearity_check",
    "homology", "cohomology_action", "xi_family", "xi_family_check", "inner_curvature_check",
]


class NonFlatError(ValueError):
    """Raised when homology is requested for a connection with nonzero curvature."""

    def __init__(self, curvature):
        super().__init__("hom-connection is not flat; the maps do not form a complex")
        self.curvature = curvature


def _eq(x, y):
    return all(a == b for a, b in zip(numpy.asarray(x).flat, numpy.asarray(y).flat))


def _columns(field, nrows, cols):
    out = zeros(field, nrows, len(cols))
    for j, c in enumerate(cols):
        out[:, j] = c
    return out


class HomConnection:
    """A hom-connection (M, nabla_0) over a graded calculus.

    ``nabla0`` is the matrix H_1 -> M in the basis of ``H1``.  Higher maps
    nabla_n : H_{n+1} -> H_n are materialised lazily by :meth:`extend`.
    """

    def __init__(self, calculus, module, nabla0, H1=None):
        self.calculus = calculus
        self.module = module
        self.field = calculus.field
        self._homs = {}
        if H1 is None:
            H1 = hom_space(calculus.component(1), module)
        self._homs[1] = H1
        nabla0 = numpy.asarray(nabla0, dtype=object)
        if nabla0.shape != (module.dim, H1.dim):
            raise ValueError("nabla0 must be %dx%d, got %s" % (module.dim, H1.dim, nabla0.shape))
        self.nabla0 = nabla0
        self._ext = {}

    @property
    def H1(self):
        return self._homs[1]

    def __repr__(self):
        return "HomConnection(M dim %d, H1 dim %d over %s)" % (
            self.module.dim, self.H1.dim, self.calculus.name)

    def hom(self, n):
        """H_n = Hom_A(Omega^n, M) with its right A-action."""
        if n not in self._homs:
            self._homs[n] = hom_space(self.calculus.component(n), self.module)
        return self._homs[n]

    @property
    def ev(self):
        """Evaluation at 1 as a matrix H_0 -> M."""
        H0 = self.hom(0)
        u = self.calculus.algebra.unit
        return _columns(self.field, self.module.dim, [f.dot(u) for f in H0.basis])

    @property
    def ev_inverse(self):
        """M -> H_0, m -> (a -> m a)."""
        H0 = self.hom(0)
        M = self.module
        cols = []
        for i in range(M.dim):
            m = numpy.array([self.field.one if k == i else self.field.zero
                             for k in range(M.dim)], dtype=object)
            g = _columns(self.field, M.dim, [R.dot(m) for R in M.action])
            cols.append(H0.coords(g))
        return _columns(self.field, H0.dim, cols)

    def times_form(self, f, deg_f, omega, m):
        """The map f w in Hom(Omega^{deg_f - m}, M) as a matrix (w of degree m)."""
        O = self.calculus
        return numpy.asarray(f, dtype=object).dot(O.left_mult(omega, m, deg_f - m))

    def leibniz_report(self):
        """nabla0(f a) - nabla0(f) a - f(da) on all basis pairs."""
        rep = Report("hom-connection Leibniz")
        O = self.calculus
        A = O.algebra
        H1 = self.H1
        for j, f in enumerate(H1.basis):
            for a in range(A.dim):
                lhs = self.nabla0.dot(H1.right_action[a][:, j])
                rhs = self.module.action[a].dot(self.nabla0[:, j]) + f.dot(O.d[0][:, a])
                rep.check(_eq(lhs, rhs), "Leibniz", f=j, a=a)
        return rep

    def extend(self, n):
        """nabla_n : H_{n+1} -> H_n, with (nabla_n f)(w) = nabla0(f w) + (-1)^(n+1) f(dw)."""
        O = self.calculus
        if not 0 <= n < O.truncation:
            raise IndexError("nabla_%d needs Omega^%d; truncation is %d" % (n, n + 1, O.truncation))
        if n in self._ext:
            return self._ext[n]
        Hn1, Hn, H1 = self.hom(n + 1), self.hom(n), self.H1
        sign = 1 if (n + 1) % 2 == 0 else -1
        dn = O.d[n]
        lefts = [O.left_mult_basis(n, i, 1) for i in range(O.dim(n))]
        cols = []
        for f in Hn1.basis:
            g = _columns(self.field, self.module.dim,
                         [self.nabla0.dot(H1.coords(f.dot(L))) for L in lefts])
            g = g + sign * f.dot(dn)
            cols.append(Hn.coords(g))
        mat = _columns(self.field, Hn.dim, cols)
        self._ext[n] = mat
        return mat

    def chain(self, n):
        """Boundary map of the complex with H_0 identified with M."""
        if n == 0:
            return self.nabla0
        return self.extend(n)

    def curvature(self):
        return curvature(self)

    def is_flat(self):
        return is_zero(self.curvature().F)


@dataclass(frozen=True, eq=False)
class Curvature:
    F: numpy.ndarray   # H_2 -> M
    hom: HomSpace      # H_2

    @property
    def is_zero(self):
        return is_zero(self.F)


@dataclass(frozen=True, eq=False)
class HomConnectionSpace:
    calculus: object
    module: RightModule
    H1: HomSpace
    solutions: AffineSolutionSet

    @property
    def solvable(self):
        return self.solutions.solvable

    @property
    def dimension(self):
        return self.solutions.homogeneous.dim

    def connection(self, vec):
        M = self.module
        mat = numpy.asarray(vec, dtype=object).reshape(M.dim, self.H1.dim)
        return HomConnection(self.calculus, M, mat, self.H1)

    def any(self):
        if not self.solvable:
            raise ValueError("the module admits no hom-connection")
        return self.connection(self.solutions.particular)

    def all_generators(self):
        """Particular solution and particular + each homogeneous basis vector."""
        return [self.connection(v) for v in self.solutions.solutions()]

    def homogeneous_hom(self):
        """Hom_A(H_1, M) computed directly, for comparison with the homogeneous part."""
        return hom_space(self.H1.module, self.module)

    def contains(self, nabla):
        return self.solutions.contains(numpy.asarray(nabla.nabla0, dtype=object).reshape(-1))


def solve_homconnections(O, M):
    """All hom-connections on M as an affine space of nabla0 matrices (row-major)."""
    H1 = hom_space(O.component(1), M)
    field = O.field
    A = O.algebra
    dv, dm = H1.dim, M.dim
    rows = linearity_rows(H1.right_action, M.action, dv, dm)
    rhs = []
    for a in range(A.dim):
        G = _columns(field, dm, [f.dot(O.d[0][:, a]) for f in H1.basis])
        for r in range(dm):
            for c in range(dv):
                rhs.append(G[r, c])
    sol = _solve_sparse(rows, rhs, dv * dm, field)
    return HomConnectionSpace(O, M, H1, sol)


def inner_homconnection(O, M, xi):
    """nabla0^Xi(f) = f(Xi) for an inner calculus with generating form Xi."""
    xi = numpy.asarray(getattr(xi, "xi", xi), dtype=object)
    if not is_inner_form(O, xi):
        raise ValueError("Xi does not satisfy da = a Xi - Xi a")
    H1 = hom_space(O.component(1), M)
    mat = _columns(O.field, M.dim, [f.dot(xi) for f in H1.basis])
    return HomConnection(O, M, mat, H1)


def extend(nabla, n):
    return nabla.extend(n)


def curvature(nabla):
    """F = ev . nabla_0 . nabla_1 : H_2 -> M."""
    O = nabla.calculus
    if O.truncation < 2:
        raise ValueError("curvature needs truncation >= 2")
    F = nabla.ev.dot(nabla.extend(0)).dot(nabla.extend(1))
    return Curvature(F, nabla.hom(2))


def curvature_linearity_check(nabla):
    """F(f a) = F(f) a, and nabla_{n-1} nabla_n right A-linear for every stored n."""
    rep = Report("curvature right-linearity")
    O = nabla.calculus
    A = O.algebra
    F = curvature(nabla).F
    H2 = nabla.hom(2)
    for a in range(A.dim):
        rep.check(_eq(F.dot(H2.right_action[a]), nabla.module.action[a].dot(F)),
                  "F(fa) = F(f)a", a=a)
    for n in range(1, O.truncation):
        C = nabla.extend(n - 1).dot(nabla.extend(n))
        src, tgt = nabla.hom(n + 1), nabla.hom(n - 1)
        for a in range(A.dim):
            rep.check(_eq(C.dot(src.right_action[a]), tgt.right_action[a].dot(C)),
                      "nabla_{n-1} nabla_n right linear", n=n, a=a)
    return rep


def lemma_leibniz_check(nabla):
    """nabla_n(f w) = nabla_{m+n}(f) w + (-1)^{m+n} f dw for all stored m, n."""
    rep = Report("higher Leibniz rule")
    O = nabla.calculus
    D = O.truncation
    for m in range(D):
        for n in range(D - m):
            top = m + n + 1
            if top > D:
                continue
            Htop, Hn1, Hn = nabla.hom(top), nabla.hom(n + 1), nabla.hom(n)
            ext_n = nabla.extend(n)
            ext_mn = nabla.extend(m + n)
            Hmn = nabla.hom(m + n)
            sign = 1 if (m + n) % 2 == 0 else -1
            # f w = f . L_w, so the multiplication matrices are shared by all f
            mults = []
            for i in range(O.dim(m)):
                w = O.basis(m, i)
                mults.append((O.left_mult_basis(m, i, n + 1), O.left_mult_basis(m, i, n),
                              O.left_mult(O.d[m].dot(w), m + 1, n)))
            for j, f in enumerate(Htop.basis):
                g = Hmn.element(ext_mn[:, j])
                for i, (Lw, Lw_low, Ldw) in enumerate(mults):
                    lhs = ext_n.dot(Hn1.coords(f.dot(Lw)))
                    rhs_map = g.dot(Lw_low) + sign * f.dot(Ldw)
                    rep.check(_eq(lhs, Hn.coords(rhs_map)), "Leibniz", m=m, n=n, f=j, w=i)
    return rep


def theta_factorization_check(nabla, n):
    """nabla_{n-1} nabla_n = Hom_A(Omega^{n-1}, F) . Theta_n as matrices."""
    O = nabla.calculus
    if not (1 <= n and n + 1 <= O.truncation):
        raise IndexError("need 1 <= n and n + 1 <= truncation")
    rep = Report("Theta factorisation n=%d" % n)
    H2 = nabla.hom(2)
    Hsrc, Htgt = nabla.hom(n + 1), nabla.hom(n - 1)
    F_M = curvature(nabla).F
    inner = hom_space(O.component(n - 1), H2.module)       # Hom_A(Omega^{n-1}, H_2)
    theta_cols = []
    for f in Hsrc.basis:
        G = _columns(nabla.field, H2.dim,
                     [H2.coords(nabla.times_form(f, n + 1, O.basis(n - 1, i), n - 1))
                      for i in range(O.dim(n - 1))])
        theta_cols.append(inner.coords(G))
    Theta = _columns(nabla.field, inner.dim, theta_cols)
    post_cols = [Htgt.coords(F_M.dot(G)) for G in inner.basis]
    HomF = _columns(nabla.field, Htgt.dim, post_cols)
    lhs = nabla.extend(n - 1).dot(nabla.extend(n))
    rhs = HomF.dot(Theta)
    rep.data.update(lhs=lhs, rhs=rhs)
    for j in range(Hsrc.dim):
        rep.check(_eq(lhs[:, j], rhs[:, j]), "diagram commutes", f=j)
    return rep


def inner_curvature_check(nabla, xi):
    """For nabla = nabla^Xi: F(f) = f(dXi + Xi^2) on every basis f of H_2."""
    O = nabla.calculus
    rep = Report("inner curvature")
    form = O.d[1].dot(xi) + O.mul(xi, 1, xi, 1)
    F = curvature(nabla).F
    for j, f in enumerate(nabla.hom(2).basis):
        rep.check(_eq(F[:, j], f.dot(form)), "F(f) = f(dXi + Xi^2)", f=j)
    rep.data["dXi+Xi^2"] = form
    rep.data["form_is_zero"] = is_zero(form)
    return rep


def homology(nabla, n):
    """H_n(A; M, nabla): M / im nabla_0 for n = 0, ker nabla_{n-1} / im nabla_n otherwise."""
    O = nabla.calculus
    if O.truncation < 2:
        raise ValueError("flatness cannot be decided below truncation 2")
    if not 0 <= n < O.truncation:
        raise IndexError("H_%d needs nabla_%d; truncation is %d" % (n, n, O.truncation))
    curv = curvature(nabla)
    if not curv.is_zero:
        raise NonFlatError(curv)
    field = nabla.field
    out_dim = nabla.module.dim if n == 0 else nabla.hom(n).dim
    if n == 0:
        Z = Subspace.full(field, out_dim)
    else:
        prev = nabla.chain(n - 1)
        comp = prev.dot(nabla.chain(n))
        if not is_zero(comp):
            raise AssertionError("flat connection with nabla_{n-1} nabla_n != 0")
        Z = kernel(prev, field)
    B = _image(field, nabla.chain(n), out_dim)
    return subquotient(Z, B)


def cohomology_action(nabla, cocycle, m, cycle, n):
    """Class of f w in H_{n-m} for a closed m-form w and an n-cycle f.

    ``cycle`` is a vector in M when n = 0 and coordinates in H_n otherwise.
    Returns (class coordinates, representative vector).
    """
    O = nabla.calculus
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if m >= O.truncation:
        raise IndexError("closedness of a degree-%d form is not decidable at truncation %d"
                         % (m, O.truncation))
    w = numpy.asarray(cocycle, dtype=object)
    if not is_zero(O.d[m].dot(w)):
        raise ValueError("form is not closed")
    f = numpy.asarray(cycle, dtype=object)
    if n >= 1 and not is_zero(nabla.chain(n - 1).dot(f)):
        raise ValueError("element is not a cycle")
    H = homology(nabla, n - m)
    if n == 0:
        rep = nabla.module.act(f, w)
    else:
        fm = nabla.hom(n).element(f)
        g = nabla.times_form(fm, n, w, m)
        if n - m == 0:
            rep = g.dot(O.algebra.unit)
        else:
            rep = nabla.hom(n - m).coords(g)
    return H.class_of(rep), rep


def _dual_hom(O):
    return hom_space(O.component(1), regular_module(O.algebra))


def xi_family(nabla, xi):
    """nabla0^xi : M -> M, m -> nabla0(w -> m xi(w)), for xi in Hom_A(Omega^1, A)."""
    O = nabla.calculus
    M = nabla.module
    xi = numpy.asarray(xi, dtype=object)
    A = O.algebra
    for a in range(A.dim):
        if not _eq(xi.dot(O.component(1).right_action[a]), A.right_mats[a].dot(xi)):
            raise ValueError("xi is not right A-linear")
    cols = []
    for i in range(M.dim):
        m = numpy.array([nabla.field.one if k == i else nabla.field.zero
                         for k in range(M.dim)], dtype=object)
        h = _columns(nabla.field, M.dim,
                     [M.act(m, xi[:, t]) for t in range(O.dim(1))])
        cols.append(nabla.nabla0.dot(nabla.H1.coords(h)))
    return _columns(nabla.field, M.dim, cols)


def xi_family_check(nabla):
    """nabla^{a xi}(m) = nabla^xi(m a) and nabla^{xi a}(m) = nabla^xi(m) a + m xi(da)."""
    O = nabla.calculus
    A = O.algebra
    M = nabla.module
    rep = Report("xi-family identities")
    dual = _dual_hom(O)
    Om = O.component(1)
    for s, xi in enumerate(dual.basis):
        X = xi_family(nabla, xi)
        for a in range(A.dim):
            aX = xi_family(nabla, A.left_mats[a].dot(xi))
            rep.check(_eq(aX, X.dot(M.action[a])), "a xi", xi=s, a=a)
            Xa = xi_family(nabla, xi.dot(Om.left_action[a]))
            corr = M.action_matrix(xi.dot(O.d[0][:, a]))
            rep.check(_eq(Xa, M.action[a].dot(X) + corr), "xi a", xi=s, a=a)
    return rep
