"""
Inducing hom-connections: along differentiable bimodules, along maps of
differential graded algebras, and by dualising left connections.

Every adjunction isomorphism such as
Hom_B(Omega^1 B, Hom_A(E, M)) = Hom_A(Omega^1 B (x)_B E, M)
is materialised as an explicit matrix between canonical hom-space bases.
"""

from dataclasses import dataclass

import numpy

from .algrep import Bimodule, RightModule, hom_space
from .calculus import GradedCalculus, quotient_calculus, zero_calculus
from .exactlin import (BalancedTensor, balanced_tensor, eye, inverse, is_zero, kron, kron_apply,
                       zeros)
from .homconn import HomConnection, _columns, _eq, curvature
from .report import Report
from .zoo import ground_field

__all__ = [
    "DGAMap", "validate_dga_map", "identity_map", "universal_map", "quotient_map",
    "DifferentiableBimodule", "differentiable_bimodule", "validate_differentiable_bimodule",
    "identity_bimodule", "dga_bimodule", "theorem_steps_check", "induce_via_bimodule",
    "induce_via_dga_map", "tilde", "curvature_transfer_check",
    "LeftConnection", "left_connection", "left_connection_from_d", "validate_left_connection",
    "left_connection_higher", "left_curvature", "left_connection_as_bimodule",
    "dualize_left_connection", "left_connection_curvature",
]


def _mult_matrix(O, m, n):
    """Omega^m (x) Omega^n -> Omega^{m+n} as a matrix on kron coordinates."""
    T = O.tensor(m, n)
    return T.reshape(O.dim(m) * O.dim(n), O.dim(m + n)).T.copy()


# ---------------------------------------------------------------------------
# maps of differential graded algebras

@dataclass(frozen=True, eq=False)
class DGAMap:
    source: GradedCalculus
    target: GradedCalculus
    theta: tuple            # theta[n] : Omega^n A -> Omega^n B
    name: str = "theta"

    @property
    def truncation(self):
        return len(self.theta) - 1

    def __repr__(self):
        return "DGAMap(%s: %s -> %s)" % (self.name, self.source.name, self.target.name)


def validate_dga_map(th):
    rep = Report("DGA map %s" % th.name)
    S, T = th.source, th.target
    D = th.truncation
    if D > min(S.truncation, T.truncation):
        rep.check(False, "truncation", stored=D)
        return rep
    for n in range(D + 1):
        rep.check(th.theta[n].shape == (T.dim(n), S.dim(n)), "shape", degree=n)
    if not rep.ok:
        return rep
    rep.check(_eq(th.theta[0].dot(S.algebra.unit), T.algebra.unit), "unital")
    for n in range(D):
        rep.check(_eq(th.theta[n + 1].dot(S.d[n]), T.d[n].dot(th.theta[n])), "commutes with d",
                  degree=n)
    for m in range(D + 1):
        for n in range(D + 1 - m):
            Ms = _mult_matrix(S, m, n)
            Mt = _mult_matrix(T, m, n)
            lhs = th.theta[m + n].dot(Ms)
            rhs = Mt.dot(kron(th.theta[m], th.theta[n]))
            rep.check(_eq(lhs, rhs), "multiplicative", degrees=(m, n))
    return rep


def identity_map(O):
    return DGAMap(O, O, tuple(eye(O.field, O.dim(n)) for n in range(O.truncation + 1)), "id")


def universal_map(phi, OA, OB):
    """The DGA map of universal calculi induced by an algebra map phi : A -> B."""
    phi = numpy.asarray(phi, dtype=object)
    ambA, ambB = OA.meta["ambient"], OB.meta["ambient"]
    D = min(OA.truncation, OB.truncation)
    thetas = []
    for n in range(D + 1):
        img = kron_apply([phi] * (n + 1), ambA[n].columns())
        thetas.append(_columns(OA.field, ambB[n].dim,
                               [ambB[n].coords(img[:, j]) for j in range(img.shape[1])]))
    return DGAMap(OA, OB, tuple(thetas), "universal")


def quotient_map(O, generators):
    """(quotient calculus, projection DGA map) for the ideal generated by ``generators``."""
    Q, projections = quotient_calculus(O, generators)
    return Q, DGAMap(O, Q, tuple(projections), "quotient")


# ---------------------------------------------------------------------------
# differentiable bimodules

@dataclass(frozen=True, eq=False)
class DifferentiableBimodule:
    """A (B, A)-bimodule E with nabla^0 : E -> Omega^1 B (x)_B E and a twist sigma.

    ``sigma`` is the matrix E (x) Omega^1 A -> Omega^1 B (x)_B E on plain kron
    coordinates (column e * dim Omega^1 A + w); it must vanish on the
    balancing relations.
    """
    E: Bimodule
    target: GradedCalculus   # Omega B (left side)
    source: GradedCalculus   # Omega A (right side)
    nabla_up: numpy.ndarray  # T.dim x dim E
    sigma: numpy.ndarray     # T.dim x (dim E * dim Omega^1 A)
    T: BalancedTensor        # Omega^1 B (x)_B E

    def sigma_at(self, j):
        """sigma_e for the j-th basis vector e, as a matrix Omega^1 A -> T."""
        n1 = self.source.dim(1)
        return self.sigma[:, j * n1:(j + 1) * n1]

    def T_left(self, b):
        return self.T.project_columns(kron_apply([self.target.component(1).left_action[b],
                                                  self.E.dim], self.T.section))

    def T_right(self, a):
        n1 = self.target.dim(1)
        return self.T.project_columns(kron_apply([n1, self.E.right_action[a]], self.T.section))


def _left_tensor(O, E):
    Om = O.component(1)
    return balanced_tensor(O.field, (Om.dim, E.dim), [Om.right_action], [E.left_action])


def differentiable_bimodule(OB, OA, E, nabla_up, sigma):
    T = _left_tensor(OB, E)
    return DifferentiableBimodule(E, OB, OA, numpy.asarray(nabla_up, dtype=object),
                                  numpy.asarray(sigma, dtype=object), T)


def validate_differentiable_bimodule(DB):
    rep = Report("differentiable bimodule")
    E, OB, OA, T = DB.E, DB.target, DB.source, DB.T
    f = OB.field
    B, A = OB.algebra, OA.algebra
    nA1 = OA.dim(1)
    rep.check(DB.nabla_up.shape == (T.dim, E.dim), "nabla_up shape")
    rep.check(DB.sigma.shape == (T.dim, E.dim * nA1), "sigma shape")
    if not rep.ok:
        return rep
    OmA = OA.component(1)
    Ie = eye(f, E.dim)
    for b in range(B.dim):
        lhs = DB.nabla_up.dot(E.left_action[b])
        rhs = T.project_columns(kron(OB.d[0][:, b].reshape(-1, 1), Ie)) + DB.T_left(b).dot(DB.nabla_up)
        rep.check(_eq(lhs, rhs), "left Leibniz", b=b)
        rep.check(_eq(DB.sigma.dot(kron(E.left_action[b], eye(f, nA1))), DB.T_left(b).dot(DB.sigma)),
                  "sigma left B-linear", b=b)
    for a in range(A.dim):
        lhs = DB.nabla_up.dot(E.right_action[a])
        rhs = DB.T_right(a).dot(DB.nabla_up) + DB.sigma.dot(kron(Ie, OA.d[0][:, a].reshape(-1, 1)))
        rep.check(_eq(lhs, rhs), "compatibility with sigma", a=a)
        rep.check(_eq(DB.sigma.dot(kron(Ie, OmA.right_action[a])), DB.T_right(a).dot(DB.sigma)),
                  "sigma right A-linear", a=a)
        rep.check(_eq(DB.sigma.dot(kron(E.right_action[a], eye(f, nA1))),
                      DB.sigma.dot(kron(Ie, OmA.left_action[a]))), "sigma balanced", a=a)
    return rep


def identity_bimodule(O):
    """E = A over itself with nabla^0 = d and sigma(e (x) w) = e w."""
    from .algrep import regular_bimodule
    A = O.algebra
    E = regular_bimodule(A)
    T = _left_tensor(O, E)
    Om = O.component(1)
    up = _columns(O.field, T.dim, [T.pure(O.d[0][:, a], A.unit) for a in range(A.dim)])
    cols = []
    for j in range(A.dim):
        for k in range(O.dim(1)):
            cols.append(T.pure(Om.left_action[j][:, k], A.unit))
    return DifferentiableBimodule(E, O, O, up, _columns(O.field, T.dim, cols), T)


def _theta_bimodule(th):
    """B as a (B, A)-bimodule, A acting through theta_0."""
    A, B = th.source.algebra, th.target.algebra
    right = tuple(B.right_matrix(th.theta[0][:, a]) for a in range(A.dim))
    return Bimodule(B, A, B.left_mats, right, "B")


def dga_bimodule(th):
    """The differentiable bimodule behind induction along a DGA map."""
    OA, OB = th.source, th.target
    B = OB.algebra
    E = _theta_bimodule(th)
    T = _left_tensor(OB, E)
    OmB = OB.component(1)
    up = _columns(OB.field, T.dim, [T.pure(OB.d[0][:, b], B.unit) for b in range(B.dim)])
    cols = []
    for j in range(B.dim):
        for k in range(OA.dim(1)):
            cols.append(T.pure(OmB.left_action[j].dot(th.theta[1][:, k]), B.unit))
    return DifferentiableBimodule(E, OB, OA, up, _columns(OB.field, T.dim, cols), T)


def _adjunction(DB, M):
    """(N = Hom_A(E, M), K = Hom_A(T, M), H1B, Phi : K -> H1B)."""
    E, OB, T = DB.E, DB.target, DB.T
    f = OB.field
    A = DB.source.algebra
    N = hom_space(E, M)
    H1B = hom_space(OB.component(1), N.module)
    Tmod = RightModule(A, tuple(DB.T_right(a) for a in range(A.dim)), "T")
    K = hom_space(Tmod, M)
    Ie = eye(f, E.dim)
    n1 = OB.dim(1)
    slices = [T.project_columns(kron(eye(f, n1)[:, i].reshape(-1, 1), Ie)) for i in range(n1)]
    cols = []
    for g in K.basis:
        G = _columns(f, N.dim, [N.coords(g.dot(sl)) for sl in slices])
        cols.append(H1B.coords(G))
    Phi = _columns(f, H1B.dim, cols)
    return N, K, H1B, Phi


def _sigma_of(DB, e):
    """sigma_e for an arbitrary vector e of E."""
    acc = zeros(DB.E.field, DB.T.dim, DB.source.dim(1))
    for i, x in enumerate(e):
        if x != 0:
            acc = acc + x * DB.sigma_at(i)
    return acc


def theorem_steps_check(DB, nabla):
    """(f sigma_e) a = f sigma_{ea} and (f b) sigma_e = f sigma_{be} on all bases."""
    rep = Report("induction identities")
    A, B = DB.source.algebra, DB.target.algebra
    E = DB.E
    _, K, _, _ = _adjunction(DB, nabla.module)
    H1A = nabla.H1
    for k, g in enumerate(K.basis):
        for j in range(E.dim):
            base = H1A.coords(g.dot(DB.sigma_at(j)))
            for a in range(A.dim):
                rhs = H1A.coords(g.dot(_sigma_of(DB, E.right_action[a][:, j])))
                rep.check(_eq(H1A.right_action[a].dot(base), rhs), "(f sigma_e) a = f sigma_ea",
                          f=k, e=j, a=a)
            for b in range(B.dim):
                lhs = g.dot(DB.T_left(b)).dot(DB.sigma_at(j))
                rep.check(_eq(lhs, g.dot(_sigma_of(DB, E.left_action[b][:, j]))),
                          "f b sigma_e = f sigma_be", f=k, e=j, b=b)
    return rep


def induce_via_bimodule(DB, nabla):
    """nabla0^E(f)(e) = nabla0(f . sigma_e) - f(nabla^0(e)) on Hom_A(E, M)."""
    if nabla.calculus.algebra.dim != DB.source.algebra.dim or nabla.calculus.dim(1) != DB.source.dim(1):
        raise ValueError("hom-connection lives over a different calculus")
    rep = validate_differentiable_bimodule(DB)
    if not rep.ok:
        raise ValueError("differentiable bimodule invalid: %s" % rep.labels()[:3])
    M = nabla.module
    f = M.field
    N, K, H1B, Phi = _adjunction(DB, M)
    if Phi.shape[0] != Phi.shape[1]:
        raise AssertionError("adjunction is not bijective")
    Psi = inverse(Phi, f) if Phi.shape[0] else Phi
    E = DB.E
    cols = []
    for h in range(H1B.dim):
        g = K.element(Psi[:, h])
        val = _columns(f, M.dim, [nabla.nabla0.dot(nabla.H1.coords(g.dot(DB.sigma_at(j))))
                                  - g.dot(DB.nabla_up[:, j]) for j in range(E.dim)])
        cols.append(N.coords(val))
    out = HomConnection(DB.target, N.module, _columns(f, N.dim, cols), H1B)
    out.hom_E = N
    return out


def tilde(N, f, unit):
    """Hom_B(Omega^n B, Hom_A(B, M)) -> Hom_A(Omega^n B, M), f -> ev_1 . f."""
    f = numpy.asarray(f, dtype=object)
    return _columns(N.field, N.target.dim, [N.element(f[:, i]).dot(unit) for i in range(f.shape[1])])


def induce_via_dga_map(th, nabla):
    """nabla0^theta(f)(b) = nabla0(f . l_b . theta) - f(db) on Hom_A(B, M)."""
    rep = validate_dga_map(th)
    if not rep.ok:
        raise ValueError("invalid DGA map: %s" % rep.labels()[:3])
    OA, OB = th.source, th.target
    M = nabla.module
    f = M.field
    B = OB.algebra
    N = hom_space(_theta_bimodule(th), M)
    H1B = hom_space(OB.component(1), N.module)
    cols = []
    for h in H1B.basis:
        ft = tilde(N, h, B.unit)
        val = _columns(f, M.dim, [
            nabla.nabla0.dot(nabla.H1.coords(ft.dot(OB.component(1).left_action[j]).dot(th.theta[1])))
            - ft.dot(OB.d[0][:, j]) for j in range(B.dim)])
        cols.append(N.coords(val))
    out = HomConnection(OB, N.module, _columns(f, N.dim, cols), H1B)
    out.hom_E = N
    return out


def curvature_transfer_check(th, nabla, induced=None):
    """F^theta(f)(b) = F(f b . theta), (eq.*), (eq.**), and flatness transfer."""
    OA, OB = th.source, th.target
    if min(OA.truncation, OB.truncation) < 2:
        raise ValueError("curvature transfer needs truncation >= 2 on both sides")
    rep = Report("curvature transfer")
    nt = induced if induced is not None else induce_via_dga_map(th, nabla)
    N = nt.hom_E
    B = OB.algebra
    u = B.unit
    F = curvature(nabla).F
    Ft = curvature(nt).F
    H2A, H1A = nabla.hom(2), nabla.H1
    H2B, H1B = nt.hom(2), nt.H1
    ext1t = nt.extend(1)
    ext1 = nabla.extend(1)
    for k, h in enumerate(H2B.basis):
        ft = tilde(N, h, u)
        Fk = N.element(Ft[:, k])
        for j in range(B.dim):
            rhs = F.dot(H2A.coords(ft.dot(OB.component(2).left_action[j]).dot(th.theta[2])))
            rep.check(_eq(Fk[:, j], rhs), "F^theta(f)(b) = F(f b theta)", f=k, b=j)
        g = tilde(N, H1B.element(ext1t[:, k]), u)
        for i in range(OB.dim(1)):
            w = OB.basis(1, i)
            rhs = nabla.nabla0.dot(H1A.coords(ft.dot(OB.left_mult(w, 1, 1)).dot(th.theta[1]))) \
                + ft.dot(OB.d[1][:, i])
            rep.check(_eq(g[:, i], rhs), "eq.*", f=k, w=i)
        lhs = g.dot(th.theta[1])
        rhs = H1A.element(ext1.dot(H2A.coords(ft.dot(th.theta[2]))))
        rep.check(_eq(lhs, rhs), "eq.**", f=k)
    if is_zero(F):
        rep.check(is_zero(Ft), "flat input gives flat output")
    rep.data.update(F=F, F_theta=Ft)
    return rep


# ---------------------------------------------------------------------------
# left connections and their duals

@dataclass(frozen=True, eq=False)
class LeftConnection:
    """nabla^0 : M -> Omega^1 (x)_A M on an (A, B)-bimodule M."""
    calculus: GradedCalculus
    M: Bimodule
    nabla_up: numpy.ndarray
    tensors: tuple          # tensors[n] = Omega^n (x)_A M for n >= 1 (index 0 unused)

    def T_right(self, n, b):
        Tn = self.tensors[n]
        return Tn.project_columns(kron_apply([self.calculus.dim(n), self.M.right_action[b]],
                                             Tn.section))


def left_connection(O, M, nabla_up):
    tensors = [None] + [balanced_tensor(O.field, (O.dim(n), M.dim),
                                        [O.component(n).right_action], [M.left_action])
                        for n in range(1, O.truncation + 1)]
    return LeftConnection(O, M, numpy.asarray(nabla_up, dtype=object), tuple(tensors))


def left_connection_from_d(O, B=None):
    """M = A as an (A, B)-bimodule (B = k by default) with nabla^0(a) = da (x) 1."""
    A = O.algebra
    if B is None:
        B = ground_field(O.field)
    if B.dim != 1:
        raise ValueError("only B = k is built in; pass a LeftConnection for other B")
    M = Bimodule(A, B, A.left_mats, (eye(O.field, A.dim),), "A")
    L = left_connection(O, M, zeros(O.field, 0, 0))
    T1 = L.tensors[1]
    up = _columns(O.field, T1.dim, [T1.pure(O.d[0][:, a], A.unit) for a in range(A.dim)])
    return LeftConnection(O, M, up, L.tensors)


def validate_left_connection(L):
    rep = Report("left connection")
    O, M = L.calculus, L.M
    A, B = M.left_algebra, M.right_algebra
    T1 = L.tensors[1]
    Om = O.component(1)
    f = O.field
    rep.check(L.nabla_up.shape == (T1.dim, M.dim), "shape")
    if not rep.ok:
        return rep
    Im = eye(f, M.dim)
    for a in range(A.dim):
        lhs = L.nabla_up.dot(M.left_action[a])
        lam = T1.project_columns(kron_apply([Om.left_action[a], M.dim], T1.section))
        rhs = T1.project_columns(kron(O.d[0][:, a].reshape(-1, 1), Im)) + lam.dot(L.nabla_up)
        rep.check(_eq(lhs, rhs), "left Leibniz", a=a)
    for b in range(B.dim):
        rep.check(_eq(L.nabla_up.dot(M.right_action[b]), L.T_right(1, b).dot(L.nabla_up)),
                  "right B-linear", b=b)
    return rep


def left_connection_higher(L, n):
    """nabla^n : Omega^n (x)_A M -> Omega^{n+1} (x)_A M (n = 0 gives nabla^0)."""
    O = L.calculus
    if not 0 <= n < O.truncation:
        raise IndexError("nabla^%d needs degree %d" % (n, n + 1))
    if n == 0:
        return L.nabla_up
    dm = L.M.dim
    Tn, Tn1, T1 = L.tensors[n], L.tensors[n + 1], L.tensors[1]
    S = Tn.section
    up = T1.section.dot(L.nabla_up)                    # M -> Omega^1 (x) M plain
    first = kron_apply([O.d[n], dm], S)
    second = kron_apply([_mult_matrix(O, n, 1), dm], kron_apply([O.dim(n), up], S))
    total = first + second if n % 2 == 0 else first - second
    return Tn1.project_columns(total)


def left_curvature(L):
    """Fbar = nabla^1 nabla^0 : M -> Omega^2 (x)_A M."""
    return left_connection_higher(L, 1).dot(L.nabla_up)


def left_connection_as_bimodule(L, D=None):
    """L as a differentiable bimodule from the zero calculus of B (sigma = 0)."""
    O = L.calculus
    B = L.M.right_algebra
    D = O.truncation if D is None else D
    Z = zero_calculus(B, D)
    T = L.tensors[1]
    return DifferentiableBimodule(L.M, O, Z, L.nabla_up, zeros(O.field, T.dim, 0), T)


def _tau(L, HM, n, f):
    """Hom_A(Omega^n, Hom_B(M, N)) -> Hom_B(Omega^n (x)_A M, N) as an unreduced matrix."""
    O = L.calculus
    dm = L.M.dim
    f = numpy.asarray(f, dtype=object)
    cols = []
    for i in range(O.dim(n)):
        v = HM.element(f[:, i])
        for j in range(dm):
            cols.append(v[:, j])
    plain = _columns(HM.field, HM.target.dim, cols)
    return plain.dot(L.tensors[n].section)


def dualize_left_connection(L, N):
    """nabla0 = -Hom_B(nabla^0, N) on Hom_B(M, N)."""
    rep = validate_left_connection(L)
    if not rep.ok:
        raise ValueError("left connection invalid: %s" % rep.labels()[:3])
    O = L.calculus
    HM = hom_space(L.M, N)
    H1 = hom_space(O.component(1), HM.module)
    cols = [HM.coords(-_tau(L, HM, 1, f).dot(L.nabla_up)) for f in H1.basis]
    out = HomConnection(O, HM.module, _columns(O.field, HM.dim, cols), H1)
    out.hom_E = HM
    return out


def left_connection_curvature(L, N, nabla=None):
    """nabla_n = (-1)^{n+1} Hom_B(nabla^n, N) and F = -Hom_B(Fbar, N) as matrices."""
    O = L.calculus
    if O.truncation < 2:
        raise ValueError("needs truncation >= 2")
    rep = Report("left connection transport")
    nabla = nabla if nabla is not None else dualize_left_connection(L, N)
    HM = nabla.hom_E
    B = L.M.right_algebra
    Ks = {}

    def K(n):
        if n not in Ks:
            Tmod = RightModule(B, tuple(L.T_right(n, b) for b in range(B.dim)), "T%d" % n)
            Ks[n] = hom_space(Tmod, N)
        return Ks[n]

    for n in range(O.truncation):
        src = nabla.hom(n + 1)
        up = left_connection_higher(L, n)
        sign = 1 if (n + 1) % 2 == 0 else -1
        for k, f in enumerate(src.basis):
            g = _tau(L, HM, n + 1, f)
            rhs = sign * g.dot(up)
            if n == 0:
                lhs = HM.element(nabla.nabla0[:, k])
            else:
                lhs = _tau(L, HM, n, nabla.hom(n).element(nabla.extend(n)[:, k]))
                rep.check(K(n + 1).contains(g), "tau lands in Hom_B", n=n + 1, f=k)
            rep.check(_eq(lhs, rhs), "nabla_n = (-1)^(n+1) transport", n=n, f=k)
    Fbar = left_curvature(L)
    F = curvature(nabla).F
    for k, f in enumerate(nabla.hom(2).basis):
        rhs = -_tau(L, HM, 2, f).dot(Fbar)
        rep.check(_eq(HM.element(F[:, k]), rhs), "F = -transport(Fbar)", f=k)
    rep.data.update(Fbar=Fbar, F=F, left_flat=is_zero(Fbar))
    if is_zero(Fbar):
        rep.check(is_zero(F), "flat left connection gives flat hom-connection")
    return rep
