"""
Dual pictures of hom-connections.

* Over the dual coalgebra C = A*: hom-connections on M correspond to
  connections L [] M -> M in the comodule M, where L = (Omega^1)* and
  Upsilon : L [] M -> Hom_A(Omega^1, M) is the evaluation isomorphism.
* Over a coring C with group-like x: the semi-free calculus with
  Omega^1 = ker(eps), and hom-connections correspond to maps
  phi : Hom_A(C, M) -> M; flat ones are exactly the contramodules.
"""

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy

from .algrep import Bimodule, FinAlgebra, RightModule, hom_space, regular_bimodule
from .calculus import GradedCalculus
from .exactlin import (BalancedTensor, Subspace, balanced_tensor, eye, inverse, is_zero,
                       kernel, kron, kron_apply, solve_affine, zeros)
from .homconn import HomConnection, _columns, _eq
from .report import Report

__all__ = [
    "Coalgebra", "dual_coalgebra", "validate_coalgebra", "Bicomodule", "validate_bicomodule",
    "DualityData", "build_duality_data", "duality_checks", "comodule_identity_check",
    "homconn_to_comodule_connection", "comodule_connection_to_homconn",
    "Coring", "validate_coring", "sweedler_coring", "trivial_coring", "grouplike_coring",
    "coring_to_dga", "sweedler_identification", "Contramodule", "homconn_to_contramodule",
    "contramodule_to_homconn", "contramodule_checks", "cosplit_check", "CosplitResult",
    "grouplike_element",
]


# ---------------------------------------------------------------------------
# coalgebras and bicomodules

@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: object
    coproduct: numpy.ndarray   # n^2 x n, kron ordering
    counit: numpy.ndarray      # length n

    @property
    def dim(self):
        return self.coproduct.shape[1]


def dual_coalgebra(A):
    """C = Hom_k(A, k) in the dual basis: coproduct is the transposed product."""
    return Coalgebra(A.field, A.mu.T.copy(), A.unit.copy())


def validate_coalgebra(C):
    rep = Report("coalgebra")
    n = C.dim
    I = eye(C.field, n)
    D = C.coproduct
    eps = C.counit.reshape(1, n)
    rep.check(_eq(kron(D, I).dot(D), kron(I, D).dot(D)), "coassociativity")
    rep.check(_eq(kron(eps, I).dot(D), I), "left counit")
    rep.check(_eq(kron(I, eps).dot(D), I), "right counit")
    return rep


@dataclass(frozen=True, eq=False)
class Bicomodule:
    coalgebra: Coalgebra
    left_coaction: numpy.ndarray    # (dim C * dim L) x dim L, l -> sum c (x) l'
    right_coaction: numpy.ndarray   # (dim L * dim C) x dim L

    @property
    def dim(self):
        return self.left_coaction.shape[1]


def validate_bicomodule(L):
    rep = Report("bicomodule")
    C = L.coalgebra
    f = C.field
    Ic, Il = eye(f, C.dim), eye(f, L.dim)
    eps = C.counit.reshape(1, C.dim)
    dl, dr, D = L.left_coaction, L.right_coaction, C.coproduct
    rep.check(_eq(kron(D, Il).dot(dl), kron(Ic, dl).dot(dl)), "left coassociativity")
    rep.check(_eq(kron(eps, Il).dot(dl), Il), "left counit")
    rep.check(_eq(kron(Il, D).dot(dr), kron(dr, Ic).dot(dr)), "right coassociativity")
    rep.check(_eq(kron(Il, eps).dot(dr), Il), "right counit")
    rep.check(_eq(kron(dl, Ic).dot(dr), kron(Ic, dr).dot(dl)), "coactions commute")
    return rep


# ---------------------------------------------------------------------------
# hom-connections vs comodule connections

@dataclass(frozen=True, eq=False)
class DualityData:
    calculus: GradedCalculus
    module: RightModule
    coalgebra: Coalgebra
    L: Bicomodule
    lam: numpy.ndarray          # L -> C, the transpose of d_0
    cotensor: Subspace          # inside L (x) M, index l * dim M + m
    upsilon: numpy.ndarray      # cotensor coords -> H1 coords
    upsilon_inv: numpy.ndarray
    H1: object

    def L_right(self, a):
        """Matrix of l -> l a on L, (l a)(w) = l(a w)."""
        return self.calculus.component(1).left_action[a].T

    def L_left(self, a):
        """Matrix of l -> a l on L, (a l)(w) = l(w a)."""
        return self.calculus.component(1).right_action[a].T

    def upsilon_map(self, z):
        """Upsilon(z) as a dim M x dim Omega^1 matrix, z a vector in L (x) M."""
        n1, dm = self.calculus.dim(1), self.module.dim
        return numpy.asarray(z, dtype=object).reshape(n1, dm).T.copy()


def build_duality_data(O, M):
    A = O.algebra
    field = O.field
    C = dual_coalgebra(A)
    Om = O.component(1)
    n1, dm, nA = O.dim(1), M.dim, A.dim
    # l -> sum_s c^s (x) l a^s  and  l -> sum_s a^s l (x) c^s
    left = zeros(field, nA * n1, n1)
    right = zeros(field, n1 * nA, n1)
    for s in range(nA):
        e = numpy.array([field.one if k == s else field.zero for k in range(nA)], dtype=object)
        left = left + kron(e.reshape(nA, 1), Om.left_action[s].T)
        right = right + kron(Om.right_action[s].T, e.reshape(nA, 1))
    L = Bicomodule(C, left, right)
    lam = O.d[0].T.copy()
    # cotensor: sum a^s l (x) c^s (x) m = sum l (x) c^s (x) m a^s, index (l, s, m)
    blocks = []
    Il, Im = eye(field, n1), eye(field, dm)
    for s in range(nA):
        e = numpy.array([field.one if k == s else field.zero for k in range(nA)], dtype=object)
        blocks.append(kron(Om.right_action[s].T, e.reshape(nA, 1), Im)
                      - kron(Il, e.reshape(nA, 1), M.action[s]))
    total = sum(blocks[1:], blocks[0]) if blocks else zeros(field, 0, n1 * dm)
    cot = kernel(total, field)
    H1 = hom_space(Om, M)
    if cot.dim != H1.dim:
        raise AssertionError("Upsilon cannot be bijective: dim %d vs %d" % (cot.dim, H1.dim))
    cols = [H1.coords(v.reshape(n1, dm).T) for v in cot.vectors()]
    U = _columns(field, H1.dim, cols)
    Uinv = inverse(U, field) if H1.dim else zeros(field, 0, 0)
    return DualityData(O, M, C, L, lam, cot, U, Uinv, H1)


def duality_checks(data):
    """Upsilon bijective, Eq. (triangle), and the dual-basis expansion of f a."""
    rep = Report("duality data")
    O, M = data.calculus, data.module
    A = O.algebra
    field = O.field
    rep.check(data.upsilon.shape[0] == data.upsilon.shape[1], "Upsilon square")
    rep.check(_eq(data.upsilon.dot(data.upsilon_inv), eye(field, data.H1.dim)), "Upsilon invertible")
    rep.extend(validate_bicomodule(data.L), "L")
    rep.extend(validate_coalgebra(data.coalgebra), "C")
    Im = eye(field, M.dim)
    for j, z in enumerate(data.cotensor.vectors()):
        Uz = data.upsilon.dot(data.cotensor.coords(z))
        for a in range(A.dim):
            za = kron(data.L_right(a), Im).dot(z)
            ok = data.cotensor.contains(za)
            rep.check(ok, "l a (x) m stays in the cotensor", z=j, a=a)
            if ok:
                rhs = data.upsilon.dot(data.cotensor.coords(za))
                rep.check(_eq(data.H1.right_action[a].dot(Uz), rhs), "triangle", z=j, a=a)
    # f a = sum_t e^t a (x) f(w^t)
    n1 = O.dim(1)
    for j, f in enumerate(data.H1.basis):
        for a in range(A.dim):
            fa = data.H1.element(data.H1.right_action[a][:, j])
            z = zeros(field, n1 * M.dim)
            for t in range(n1):
                et = numpy.array([field.one if k == t else field.zero for k in range(n1)], dtype=object)
                z = z + kron(data.L_right(a).dot(et), f[:, t])
            rep.check(_eq(data.upsilon_map(z), fa), "f a dual-basis expansion", f=j, a=a)
    return rep


def comodule_identity_check(data, nbar):
    """sum_s c^s (x) nbar(z) a^s = sum_s c^s (x) nbar(z a^s) + sum_i lambda(l_i) (x) m_i."""
    rep = Report("comodule connection identity")
    O, M = data.calculus, data.module
    A = O.algebra
    Im = eye(O.field, M.dim)
    nbar = numpy.asarray(nbar, dtype=object)
    for j, z in enumerate(data.cotensor.vectors()):
        val = nbar.dot(data.cotensor.coords(z))
        lam_part = kron(data.lam, Im).dot(z)
        for s in range(A.dim):
            lhs = M.action[s].dot(val)
            za = kron(data.L_right(s), Im).dot(z)
            rhs = nbar.dot(data.cotensor.coords(za)) + lam_part[s * M.dim:(s + 1) * M.dim]
            rep.check(_eq(lhs, rhs), "identity", z=j, s=s)
    return rep


def homconn_to_comodule_connection(nabla, data=None):
    """nbar = -nabla0 . Upsilon as a matrix on cotensor coordinates."""
    if data is None:
        data = build_duality_data(nabla.calculus, nabla.module)
    return -nabla.nabla0.dot(data.upsilon)


def comodule_connection_to_homconn(data, nbar):
    """nabla0 = -nbar . Upsilon^{-1} (the sign makes this inverse to the forward map)."""
    rep = comodule_identity_check(data, nbar)
    if not rep.ok:
        raise ValueError("not a comodule connection: %d violations" % len(rep.violations))
    mat = -numpy.asarray(nbar, dtype=object).dot(data.upsilon_inv)
    return HomConnection(data.calculus, data.module, mat, data.H1)


# ---------------------------------------------------------------------------
# corings

@dataclass(frozen=True, eq=False)
class Coring:
    algebra: FinAlgebra
    bimodule: Bimodule
    tensor: BalancedTensor     # C (x)_A C
    coproduct: numpy.ndarray   # tensor.dim x dim C
    counit: numpy.ndarray      # dim A x dim C
    grouplike: numpy.ndarray = None
    name: str = "C"

    @property
    def dim(self):
        return self.bimodule.dim

    @property
    def field(self):
        return self.algebra.field

    def __repr__(self):
        return "Coring(%s, dim=%d over %s)" % (self.name, self.dim, self.algebra.name)


def _cc_tensor(C):
    return balanced_tensor(C.field, (C.dim, C.dim), [C.right_action], [C.left_action])


def _triple_tensor(cor):
    """(C (x)_A C) (x)_A C, built on the already reduced C (x)_A C."""
    T, C = cor.tensor, cor.bimodule
    n = C.dim
    right = [T.project_columns(kron_apply([n, R], T.section)) for R in C.right_action]
    return balanced_tensor(cor.field, (T.dim, n), [right], [C.left_action])


def validate_coring(cor):
    rep = Report("coring %s" % cor.name)
    A, C, T = cor.algebra, cor.bimodule, cor.tensor
    f = cor.field
    n = C.dim
    I = eye(f, n)
    cop = cor.coproduct
    Dl = T.section.dot(cop)                    # lifted coproduct into C (x) C
    for a in range(A.dim):
        rep.check(_eq(cop.dot(C.left_action[a]), T.project_columns(kron_apply([C.left_action[a], n], Dl))),
                  "coproduct left linear", a=a)
        rep.check(_eq(cop.dot(C.right_action[a]), T.project_columns(kron_apply([n, C.right_action[a]], Dl))),
                  "coproduct right linear", a=a)
        rep.check(_eq(cor.counit.dot(C.left_action[a]), A.left_mats[a].dot(cor.counit)),
                  "counit left linear", a=a)
        rep.check(_eq(cor.counit.dot(C.right_action[a]), A.right_mats[a].dot(cor.counit)),
                  "counit right linear", a=a)
    T3 = _triple_tensor(cor)
    lhs = T3.project_columns(kron_apply([cop, n], Dl))
    rhs = T3.project_columns(kron_apply([T.factor_map, n], kron_apply([n, Dl], Dl)))
    rep.check(_eq(lhs, rhs), "coassociativity")
    # (eps (x) id) and (id (x) eps) on the plain tensor
    EL = zeros(f, n, n * n)
    ER = zeros(f, n, n * n)
    for i in range(n):
        Li = C.left_matrix(cor.counit[:, i])
        Ri = C.right_matrix(cor.counit[:, i])
        for j in range(n):
            EL[:, i * n + j] = Li[:, j]
            ER[:, j * n + i] = Ri[:, j]
    rep.check(_eq(EL.dot(Dl), I), "left counit law")
    rep.check(_eq(ER.dot(Dl), I), "right counit law")
    x = cor.grouplike
    if x is not None:
        rep.check(_eq(cop.dot(x), T.pure(x, x)), "grouplike coproduct")
        rep.check(_eq(cor.counit.dot(x), A.unit), "grouplike counit")
    return rep


def sweedler_coring(A):
    """C = A (x) A, Delta(a (x) b) = a (x) 1 (x)_A 1 (x) b, eps = mu, x = 1 (x) 1."""
    f = A.field
    n = A.dim
    I = eye(f, n)
    C = Bimodule(A, A, tuple(kron(L, I) for L in A.left_mats),
                 tuple(kron(I, R) for R in A.right_mats), "A(x)A")
    T = _cc_tensor(C)
    u = A.unit
    cols = []
    for i in range(n):
        for j in range(n):
            cols.append(T.pure(kron(A.basis(i), u), kron(u, A.basis(j))))
    return Coring(A, C, T, _columns(f, T.dim, cols), A.mu.copy(), kron(u, u), "sweedler")


def trivial_coring(A):
    """C = A with Delta(a) = a (x) 1, eps = id and x = 1."""
    C = regular_bimodule(A)
    T = _cc_tensor(C)
    cols = [T.pure(A.basis(i), A.unit) for i in range(A.dim)]
    return Coring(A, C, T, _columns(A.field, T.dim, cols), eye(A.field, A.dim), A.unit.copy(),
                  "trivial")


def grouplike_coring(A, r, x=0):
    """Free A-bimodule on central group-likes g_1..g_r; Delta(g_i a) = g_i (x) g_i a."""
    f = A.field
    if r < 1 or not 0 <= x < r:
        raise ValueError("need r >= 1 and 0 <= x < r")
    n = A.dim
    Ir = eye(f, r)
    C = Bimodule(A, A, tuple(kron(Ir, L) for L in A.left_mats),
                 tuple(kron(Ir, R) for R in A.right_mats), "k^%d(x)A" % r)
    T = _cc_tensor(C)
    cols = []
    for i in range(r):
        gi = Ir[:, i]
        for j in range(n):
            cols.append(T.pure(kron(gi, A.unit), kron(gi, A.basis(j))))
    eps = kron(numpy.array([[f.one] * r], dtype=object), eye(f, n))
    return Coring(A, C, T, _columns(f, T.dim, cols), eps, kron(Ir[:, x], A.unit),
                  "grouplike-%d" % r)


def grouplike_element(cor, i):
    """g_i of a coring from :func:`grouplike_coring`."""
    n = cor.algebra.dim
    r = cor.dim // n
    return kron(eye(cor.field, r)[:, i], cor.algebra.unit)


# ---------------------------------------------------------------------------
# the semi-free calculus of a coring with group-like

def _restrict(K, mats):
    cols = K.columns()
    return tuple(_columns(K.field, K.dim, [K.coords(m.dot(cols[:, j])) for j in range(K.dim)])
                 for m in mats)


def coring_to_dga(cor, D=2):
    """Omega^n = (ker eps)^{(x)_A n}, d a = x a - a x and d c = x (x) c - Delta c + c (x) x."""
    if cor.grouplike is None:
        raise ValueError("coring has no group-like element")
    rep = validate_coring(cor)
    if not rep.ok:
        raise ValueError("invalid coring: %s" % rep.labels()[:3])
    if D < 1:
        raise ValueError("truncation must be >= 1")
    A, C = cor.algebra, cor.bimodule
    f = cor.field
    x = cor.grouplike
    K = kernel(cor.counit, f)
    dk = K.dim
    J = K.columns()
    lamK = _restrict(K, C.left_action)
    rhoK = _restrict(K, C.right_action)

    tensors = [None]
    for n in range(1, D + 2):
        if n == 1:
            tensors.append(BalancedTensor((dk,), Subspace.zero(f, dk), eye(f, dk), eye(f, dk)))
        else:
            tensors.append(balanced_tensor(f, (dk,) * n, [rhoK] * (n - 1), [lamK] * (n - 1)))

    comps = []
    for n in range(1, D + 1):
        Tn = tensors[n]
        rest = dk ** (n - 1)
        comps.append(Bimodule(A, A,
                              tuple(Tn.project_columns(kron_apply([l, rest], Tn.section)) for l in lamK),
                              tuple(Tn.project_columns(kron_apply([rest, r], Tn.section)) for r in rhoK),
                              "Omega^%d" % n))

    d0 = _columns(f, dk, [K.coords(C.right_action[a].dot(x) - C.left_action[a].dot(x))
                          for a in range(A.dim)])
    # C (x)_A C -> K (x)_A K via c - x eps(c) on the left and c - eps(c) x on the right
    Ic = eye(f, cor.dim)
    pr_r = Ic - _columns(f, cor.dim, [C.right_matrix(cor.counit[:, c]).dot(x) for c in range(cor.dim)])
    pr_l = Ic - _columns(f, cor.dim, [C.left_matrix(cor.counit[:, c]).dot(x) for c in range(cor.dim)])
    Kr = _columns(f, dk, [K.coords(pr_r[:, c]) for c in range(cor.dim)])
    Kl = _columns(f, dk, [K.coords(pr_l[:, c]) for c in range(cor.dim)])
    T2 = tensors[2]
    Q = T2.project_columns(kron_apply([Kr, Kl], cor.tensor.section))
    CC = cor.tensor
    d1_cols = []
    for j in range(dk):
        c = J[:, j]
        v = CC.pure(x, c) - cor.coproduct.dot(c) + CC.pure(c, x)
        d1_cols.append(Q.dot(v))
    d1 = _columns(f, T2.dim, d1_cols)
    ds = [d0]
    lift_d1 = T2.section.dot(d1)               # K -> plain K (x) K
    for n in range(1, D):
        def plain(X, n=n):
            out = None
            for p in range(n):
                facs = ([dk ** p] if p else []) + [lift_d1] + ([dk ** (n - 1 - p)] if n - 1 - p else [])
                term = kron_apply(facs, X)
                term = term if p % 2 == 0 else -term
                out = term if out is None else out + term
            return out
        Tn, Tn1 = tensors[n], tensors[n + 1]
        if Tn.relations.dim and not is_zero(Tn1.project_columns(plain(Tn.relations.columns()))):
            raise AssertionError("differential is not balanced over A")
        ds.append(Tn1.project_columns(plain(Tn.section)))

    prods = {}
    for m in range(1, D):
        for n in range(1, D - m + 1):
            Sm, Sn = tensors[m].section, tensors[n].section
            T = zeros(f, tensors[m].dim, tensors[n].dim, tensors[m + n].dim)
            for i in range(tensors[m].dim):
                for j in range(tensors[n].dim):
                    T[i, j] = tensors[m + n].project_columns(kron(Sm[:, i], Sn[:, j]))
            prods[(m, n)] = T
    meta = {"coring": cor, "kernel": K, "tensors": tensors[:D + 1]}
    return GradedCalculus(A, D, tuple(comps), tuple(ds), prods, "roiter(%s)" % cor.name, meta)


def sweedler_identification(R, U):
    """Matrices Omega^n_R -> Omega^n_U for the Sweedler coring calculus R and universal U.

    (A (x) A)^{(x)_A n} is identified with A^{(x)(n+1)} by multiplying
    adjacent inner factors; the result is expressed in U's basis.
    """
    cor = R.meta["coring"]
    A = cor.algebra
    f = A.field
    N = A.dim
    J = R.meta["kernel"].columns()
    amb = U.meta["ambient"]
    mats = [eye(f, N)]
    for n in range(1, R.truncation + 1):
        # plain C^{(x)n} -> A^{(x)(n+1)}
        contract = eye(f, N * N)
        for k in range(1, n):
            contract = kron(eye(f, N ** k), A.mu, eye(f, N)).dot(kron(contract, eye(f, N * N)))
        Jn = J if n == 1 else kron(*([J] * n))
        S = R.meta["tensors"][n].section
        img = contract.dot(Jn).dot(S)
        mats.append(_columns(f, amb[n].dim, [amb[n].coords(img[:, j]) for j in range(img.shape[1])]))
    return mats


# ---------------------------------------------------------------------------
# contramodules

@dataclass(frozen=True, eq=False)
class Contramodule:
    coring: Coring
    module: RightModule
    phi: numpy.ndarray     # M <- Hom_A(C, M) coordinates
    hom: object            # HomSpace Hom_A(C, M)


def _coring_of(O):
    cor = O.meta.get("coring") if O.meta else None
    if cor is None:
        raise ValueError("calculus was not built from a coring")
    return cor


def homconn_to_contramodule(nabla):
    """phi(f) = nabla0(f . j) + f(x)."""
    O = nabla.calculus
    cor = _coring_of(O)
    M = nabla.module
    homC = hom_space(cor.bimodule, M)
    J = O.meta["kernel"].columns()
    cols = [nabla.nabla0.dot(nabla.H1.coords(g.dot(J))) + g.dot(cor.grouplike)
            for g in homC.basis]
    return Contramodule(cor, M, _columns(O.field, M.dim, cols), homC)


def _splitting(cor, K):
    """c -> c - x eps(c) in ker(eps) coordinates."""
    f = cor.field
    C = cor.bimodule
    x = cor.grouplike
    cols = []
    for c in range(cor.dim):
        e = eye(f, cor.dim)[:, c]
        cols.append(K.coords(e - C.right_matrix(cor.counit[:, c]).dot(x)))
    return _columns(f, K.dim, cols)


def contramodule_to_homconn(cm, O):
    """nabla0(g) = phi(g . Pi) with Pi(c) = c - x eps(c)."""
    if _coring_of(O) is not cm.coring:
        raise ValueError("calculus belongs to a different coring")
    rep = contramodule_checks(cm, pentagon=False)
    if not rep.ok:
        raise ValueError("contramodule axioms fail: %s" % rep.labels()[:3])
    M = cm.module
    H1 = hom_space(O.component(1), M)
    Pi = _splitting(cm.coring, O.meta["kernel"])
    cols = [cm.phi.dot(cm.hom.coords(g.dot(Pi))) for g in H1.basis]
    return HomConnection(O, M, _columns(O.field, M.dim, cols), H1)


def contramodule_checks(cm, pentagon=True):
    """Right A-linearity, counit triangle and (optionally) associativity pentagon."""
    rep = Report("contramodule")
    cor, M, homC, phi = cm.coring, cm.module, cm.hom, cm.phi
    A = cor.algebra
    f = cor.field
    for a in range(A.dim):
        rep.check(_eq(phi.dot(homC.right_action[a]), M.action[a].dot(phi)), "phi right linear", a=a)
    for i in range(M.dim):
        m = eye(f, M.dim)[:, i]
        fm = _columns(f, M.dim, [R.dot(m) for R in M.action])
        rep.check(_eq(phi.dot(homC.coords(fm.dot(cor.counit))), m), "counit triangle", m=i)
    if pentagon:
        T = cor.tensor
        Ic = eye(f, cor.dim)
        n = cor.dim
        CCmod = RightModule(A, tuple(T.project_columns(kron_apply([n, R], T.section))
                                     for R in cor.bimodule.right_action), "C(x)C")
        HCC = hom_space(CCmod, M)
        slices = [T.project_columns(kron(Ic[:, i].reshape(-1, 1), Ic)) for i in range(cor.dim)]
        for k, G in enumerate(HCC.basis):
            inner = _columns(f, M.dim, [phi.dot(homC.coords(G.dot(sl))) for sl in slices])
            lhs = phi.dot(homC.coords(inner))
            rhs = phi.dot(homC.coords(G.dot(cor.coproduct)))
            rep.check(_eq(lhs, rhs), "pentagon", G=k)
    return rep


class CosplitResult(NamedTuple):
    iota: numpy.ndarray
    xi: numpy.ndarray          # iota - x in ker(eps) coordinates
    grouplike: bool
    report: Report


def cosplit_check(cor, O=None, iota=None):
    """Solve a iota = iota a, eps(iota) = 1; return Xi = iota - x or None.

    With ``iota`` given, that element is checked instead of the canonical
    solution.
    """
    A, C = cor.algebra, cor.bimodule
    f = cor.field
    blocks = [C.left_action[a] - C.right_action[a] for a in range(A.dim)] + [cor.counit]
    system = numpy.concatenate(blocks, axis=0)
    rhs = numpy.concatenate([zeros(f, cor.dim * A.dim), A.unit])
    if iota is None:
        sol = solve_affine(system, rhs, f)
        if not sol.solvable:
            return None
        iota = sol.particular
    else:
        iota = numpy.asarray(iota, dtype=object)
        if not _eq(system.dot(iota), rhs):
            return None
    if O is None:
        O = coring_to_dga(cor, 2)
    K = O.meta["kernel"]
    xi = K.coords(iota - cor.grouplike)
    from .calculus import is_inner_form
    rep = Report("cosplit")
    rep.check(is_inner_form(O, xi), "inner-form equation")
    glike = _eq(cor.coproduct.dot(iota), cor.tensor.pure(iota, iota))
    return CosplitResult(iota, xi, glike, rep)
