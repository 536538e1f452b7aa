"""
Exact field arithmetic and dense linear algebra over Q or F_p.

Matrices are numpy object arrays whose entries are field elements
(``gmpy2.mpq`` for Q, :class:`FpElement` for F_p).  Row reduction is done
on sparse dict rows internally, which keeps the structured systems arising
from tensor products and hom spaces cheap to eliminate.

All bases of subspaces are kept in reduced row-echelon form, so a subspace
has exactly one representation and coordinates of a vector inside it are
simply its entries at the pivot columns.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy
from gmpy2 import mpq, mpz

__all__ = [
    "QQ", "GF", "RationalField", "PrimeField", "FpElement", "FieldMismatch",
    "field_of", "zeros", "eye", "matrix", "vector", "is_zero", "kron", "kron_apply", "fmt_matrix",
    "rref", "rank", "kernel", "span", "Subspace", "AffineSolutionSet",
    "solve_affine", "quotient", "Quotient", "BalancedTensor", "tensor_over_algebra",
    "balanced_tensor", "inverse", "unit_vector",
]


class FieldMismatch(ValueError):
    pass


_MPQ = type(mpq(0))


class RationalField:
    """The rationals, backed by gmpy2.mpq (always in lowest terms)."""

    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, _MPQ):
            return x
        if isinstance(x, str):
            s = x.strip().replace(" ", "")
            if "/" in s:
                p, q = s.split("/")
                if int(q) == 0:
                    raise ZeroDivisionError(x)
                return mpq(int(p), int(q))
            return mpq(int(s))
        if isinstance(x, FpElement):
            raise FieldMismatch("F_%d element used over Q" % x.p)
        if isinstance(x, float):
            raise TypeError("floating point scalars are not accepted: %r" % x)
        return mpq(x)

    def fmt(self, x):
        return str(self(x))

    def owns(self, x):
        return isinstance(x, (_MPQ, int, type(mpz(0))))

    def random(self, rng, size=3):
        return mpq(rng.randint(-size, size), rng.randint(1, size))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class FpElement:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatch("F_%d and F_%d" % (self.p, other.p))
            return other.v
        if isinstance(other, int) or type(other) is type(mpz(0)):
            return int(other)
        if isinstance(other, _MPQ):
            if other.denominator != 1:
                return int(other.numerator) * pow(int(other.denominator), -1, self.p)
            return int(other.numerator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) / self

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            return FpElement(pow(self.v, -1, self.p), self.p) ** (-n)
        return FpElement(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d (mod %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """F_p for a prime p."""

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.characteristic = p
        self.name = "F%d" % p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def __call__(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatch("F_%d element used over F_%d" % (x.p, self.p))
            return x
        if isinstance(x, str):
            s = x.strip().replace(" ", "")
            if "/" in s:
                a, b = s.split("/")
                return FpElement(int(a), self.p) / FpElement(int(b), self.p)
            return FpElement(int(s), self.p)
        if isinstance(x, _MPQ):
            return FpElement(int(x.numerator), self.p) / FpElement(int(x.denominator), self.p)
        if isinstance(x, float):
            raise TypeError("floating point scalars are not accepted: %r" % x)
        return FpElement(int(x), self.p)

    def fmt(self, x):
        return str(self(x).v)

    def owns(self, x):
        return (isinstance(x, FpElement) and x.p == self.p) or isinstance(x, int)

    def random(self, rng, size=None):
        return FpElement(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def GF(p):
    return PrimeField(p)


def _signature(x):
    if isinstance(x, FpElement):
        return ("F", x.p)
    if isinstance(x, _MPQ):
        return ("Q",)
    return None  # plain ints are field-neutral


def field_of(*arrays):
    """Return the field the entries of ``arrays`` live in, or raise FieldMismatch."""
    sig = None
    for arr in arrays:
        for x in numpy.asarray(arr, dtype=object).flat:
            s = _signature(x)
            if s is None:
                continue
            if sig is None:
                sig = s
            elif s != sig:
                raise FieldMismatch("mixed scalars: %s and %s" % (sig, s))
    if sig is None or sig == ("Q",):
        return QQ
    return GF(sig[1])


# ---------------------------------------------------------------------------
# constructors

def zeros(field, *shape):
    a = numpy.empty(shape, dtype=object)
    a.fill(field.zero)
    return a


def eye(field, n):
    a = zeros(field, n, n)
    for i in range(n):
        a[i, i] = field.one
    return a


def unit_vector(field, n, i):
    v = zeros(field, n)
    v[i] = field.one
    return v


def matrix(field, rows, shape=None):
    """Coerce nested rows into an object matrix over ``field``."""
    rows = list(rows)
    if shape is not None and not rows:
        return zeros(field, *shape)
    a = numpy.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            a[i, j] = field(x)
    return a


def vector(field, entries):
    entries = list(entries)
    a = numpy.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        a[i] = field(x)
    return a


def is_zero(a):
    return all(x == 0 for x in numpy.asarray(a, dtype=object).flat)


def kron(*mats):
    out = mats[0]
    for m in mats[1:]:
        out = numpy.kron(out, m)
    return out


def kron_apply(mats, X):
    """kron(*mats) @ X without forming the Kronecker product.

    An int n among ``mats`` stands for the n x n identity.
    """
    X = numpy.asarray(X, dtype=object)
    vec = X.ndim == 1
    if vec:
        X = X.reshape(-1, 1)
    in_dims = [m if isinstance(m, int) else m.shape[1] for m in mats]
    out_rows = 1
    for m in mats:
        out_rows *= m if isinstance(m, int) else m.shape[0]
    if X.size == 0 or out_rows == 0:
        if out_rows and X.shape[1]:
            raise ValueError("kron_apply needs a field to produce nonempty zeros")
        out = numpy.empty((out_rows, X.shape[1]), dtype=object)
        return out[:, 0] if vec else out
    T = X.reshape(*in_dims, X.shape[1])
    for i, m in enumerate(mats):
        if isinstance(m, int):
            continue
        T = numpy.moveaxis(numpy.tensordot(m, T, axes=(1, i)), 0, i)
    out = T.reshape(-1, X.shape[1])
    return out[:, 0] if vec else out


def fmt_matrix(field, a):
    a = numpy.asarray(a, dtype=object)
    if a.ndim == 1:
        return "[" + ", ".join(field.fmt(x) for x in a) + "]"
    return "[" + ", ".join(fmt_matrix(field, row) for row in a) + "]"


# ---------------------------------------------------------------------------
# row reduction

def _sparse_rows(m):
    m = numpy.asarray(m, dtype=object)
    out = []
    for row in m:
        out.append({j: x for j, x in enumerate(row) if x != 0})
    return out


def _rref_sparse(rows, field):
    """Incremental RREF.  ``rows`` are dicts col -> nonzero value.

    Returns {pivot_col: row_dict}; every row has a 1 at its pivot and zeros
    at every other pivot column, and no entries left of its pivot.
    """
    piv = {}
    one = field.one
    for row in rows:
        r = dict(row)
        for c in [c for c in r if c in piv]:
            coef = r.get(c)
            if not coef:
                continue
            for k, v in piv[c].items():
                nv = r.get(k, 0) - coef * v
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
        r = {k: v for k, v in r.items() if v != 0}
        if not r:
            continue
        c0 = min(r)
        inv = one / r[c0]
        r = {k: v * inv for k, v in r.items()}
        for pr in piv.values():
            coef = pr.get(c0)
            if not coef:
                continue
            for k, v in r.items():
                nv = pr.get(k, 0) - coef * v
                if nv == 0:
                    pr.pop(k, None)
                else:
                    pr[k] = nv
        piv[c0] = r
    return piv


def _dense_from_piv(piv, ncols, field):
    pivots = sorted(piv)
    R = zeros(field, len(pivots), ncols)
    for i, c in enumerate(pivots):
        for k, v in piv[c].items():
            R[i, k] = v
    return R, tuple(pivots)


def rref(m, field=None):
    """Reduced row-echelon form. Returns (R without zero rows, pivot columns)."""
    m = numpy.asarray(m, dtype=object)
    if field is None:
        field = field_of(m)
    ncols = m.shape[1]
    piv = _rref_sparse(_sparse_rows(m), field)
    return _dense_from_piv(piv, ncols, field)


def rank(m, field=None):
    m = numpy.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m, field)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^n given by its unique RREF basis (rows)."""

    field: object
    ambient_dim: int
    basis: numpy.ndarray
    pivots: tuple

    @property
    def dim(self):
        return len(self.pivots)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and all(x == y for x, y in zip(self.basis.flat, other.basis.flat)))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)

    def vectors(self):
        return [self.basis[i] for i in range(self.dim)]

    def columns(self):
        """Basis as the columns of an ambient_dim x dim matrix."""
        if self.dim == 0:
            return zeros(self.field, self.ambient_dim, 0)
        return self.basis.T.copy()

    def combine(self, coords):
        coords = numpy.asarray(coords, dtype=object)
        if self.dim == 0:
            return zeros(self.field, self.ambient_dim)
        return self.basis.T.dot(coords)

    def coords(self, v, check=True):
        v = numpy.asarray(v, dtype=object)
        c = numpy.array([v[p] for p in self.pivots], dtype=object)
        if check:
            w = self.combine(c)
            if not all(x == y for x, y in zip(w, v)):
                raise ValueError("vector does not lie in the subspace")
        return c

    def contains(self, v):
        try:
            self.coords(v)
        except ValueError:
            return False
        return True

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.vectors())

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, zeros(field, 0, n), ())

    @classmethod
    def full(cls, field, n):
        return cls(field, n, eye(field, n), tuple(range(n)))


def span(field, n, vectors):
    """Subspace of k^n spanned by ``vectors`` (rows, dense or dicts)."""
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            rows.append(v)
        else:
            rows.append({j: x for j, x in enumerate(v) if x != 0})
    piv = _rref_sparse(rows, field)
    R, pivots = _dense_from_piv(piv, n, field)
    return Subspace(field, n, R, pivots)


def _kernel_from_piv(piv, ncols, field):
    pivots = sorted(piv)
    pset = set(pivots)
    vecs = []
    for j in range(ncols):
        if j in pset:
            continue
        v = {j: field.one}
        for c in pivots:
            x = piv[c].get(j)
            if x:
                v[c] = -x
        vecs.append(v)
    return span(field, ncols, vecs)


def kernel(m, field=None):
    """Kernel of ``m`` (acting on column vectors) as an RREF Subspace."""
    m = numpy.asarray(m, dtype=object)
    if field is None:
        field = field_of(m)
    ncols = m.shape[1]
    piv = _rref_sparse(_sparse_rows(m), field)
    return _kernel_from_piv(piv, ncols, field)


def _kernel_sparse(rows, ncols, field):
    return _kernel_from_piv(_rref_sparse(rows, field), ncols, field)


@dataclass(frozen=True, eq=False)
class AffineSolutionSet:
    solvable: bool
    particular: object  # numpy vector or None
    homogeneous: Subspace

    def contains(self, x):
        if not self.solvable:
            return False
        return self.homogeneous.contains(numpy.asarray(x, dtype=object) - self.particular)

    def solutions(self):
        """The particular solution followed by particular + each homogeneous basis vector."""
        if not self.solvable:
            return []
        return [self.particular] + [self.particular + h for h in self.homogeneous.vectors()]


def _solve_sparse(rows, rhs, ncols, field):
    aug = []
    for r, b in zip(rows, rhs):
        r = dict(r)
        if b != 0:
            r[ncols] = field(b)
        aug.append(r)
    piv = _rref_sparse(aug, field)
    homogeneous = _kernel_from_piv({c: {k: v for k, v in r.items() if k != ncols}
                                    for c, r in piv.items() if c != ncols}, ncols, field)
    if ncols in piv:
        return AffineSolutionSet(False, None, homogeneous)
    x = zeros(field, ncols)
    for c, r in piv.items():
        x[c] = r.get(ncols, field.zero)
    return AffineSolutionSet(True, x, homogeneous)


def solve_affine(constraint_matrix, rhs, field=None):
    """Solve A x = b exactly.

    The particular solution has every free variable set to zero; the
    homogeneous part is ker A in RREF.
    """
    A = numpy.asarray(constraint_matrix, dtype=object)
    b = numpy.asarray(rhs, dtype=object)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise ValueError("rhs length %s does not match %s constraint rows" % (b.shape, A.shape))
    f = field_of(A, b)
    if field is not None and f != field and not (f == QQ and _all_int(A, b)):
        raise FieldMismatch("system over %r, expected %r" % (f, field))
    field = field or f
    return _solve_sparse(_sparse_rows(A), list(b), A.shape[1], field)


def _all_int(*arrays):
    return all(_signature(x) is None for a in arrays for x in numpy.asarray(a, dtype=object).flat)


def inverse(m, field=None):
    m = numpy.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("not square")
    if field is None:
        field = field_of(m)
    aug = numpy.concatenate([m, eye(field, n)], axis=1)
    R, pivots = rref(aug, field)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:n, n:].copy()


# ---------------------------------------------------------------------------
# quotients and tensor products

class Quotient(NamedTuple):
    projection: numpy.ndarray  # q x n, kills the subspace
    section: numpy.ndarray     # n x q, projection @ section = id

    @property
    def dim(self):
        return self.projection.shape[0]


def quotient(ambient_dim, sub):
    """Quotient k^n / sub, coordinatised by the non-pivot columns of sub."""
    field = sub.field
    n = ambient_dim
    if sub.ambient_dim != n:
        raise ValueError("subspace lives in k^%d, not k^%d" % (sub.ambient_dim, n))
    pset = set(sub.pivots)
    free = [j for j in range(n) if j not in pset]
    index = {j: i for i, j in enumerate(free)}
    P = zeros(field, len(free), n)
    S = zeros(field, n, len(free))
    for j, i in index.items():
        P[i, j] = field.one
        S[j, i] = field.one
    for r, c in enumerate(sub.pivots):
        row = sub.basis[r]
        for j, i in index.items():
            if row[j] != 0:
                P[i, c] = -row[j]
    return Quotient(P, S)


@dataclass(frozen=True, eq=False)
class BalancedTensor:
    """V_1 (x)_A V_2 (x)_A ... as a quotient of the plain tensor product.

    Coordinates of the plain product follow ``numpy.kron`` ordering.
    """

    dims: tuple
    relations: Subspace
    factor_map: numpy.ndarray
    section: numpy.ndarray

    @property
    def dim(self):
        return self.factor_map.shape[0]

    @property
    def ambient_dim(self):
        return self.relations.ambient_dim

    def __iter__(self):
        # (space_dim, factor_map) unpacking
        return iter((self.dim, self.factor_map))

    def project(self, v):
        return self.factor_map.dot(v)

    @cached_property
    def _sparse_factor(self):
        return [[(j, x) for j, x in enumerate(row) if x != 0] for row in self.factor_map]

    def project_columns(self, X):
        """factor_map @ X exploiting the sparsity of the projection."""
        X = numpy.asarray(X, dtype=object)
        out = numpy.empty((self.dim,) + X.shape[1:], dtype=object)
        zero = self.relations.field.zero
        for i, row in enumerate(self._sparse_factor):
            acc = None
            for j, x in row:
                term = X[j] if x == 1 else x * X[j]
                acc = term if acc is None else acc + term
            out[i] = zero if acc is None else acc
        return out

    def lift(self, v):
        return self.section.dot(v)

    def pure(self, *vectors):
        """Class of v_1 (x) ... (x) v_n."""
        return self.factor_map.dot(kron(*vectors))


def _sparse_cols(m):
    m = numpy.asarray(m, dtype=object)
    cols = []
    for j in range(m.shape[1]):
        cols.append({i: x for i, x in enumerate(m[:, j]) if x != 0})
    return cols


def balanced_tensor(field, dims, right_actions, left_actions):
    """Tensor product of a chain of modules balanced over algebras.

    ``right_actions[p]`` is the list of right action matrices of factor p and
    ``left_actions[p]`` the list of left action matrices of factor p + 1, over
    the same algebra basis, for each junction p.
    """
    dims = tuple(int(d) for d in dims)
    if len(right_actions) != len(dims) - 1 or len(left_actions) != len(dims) - 1:
        raise ValueError("need one action pair per junction")
    total = 1
    for d in dims:
        total *= d
    rows = []
    for p, (ra, la) in enumerate(zip(right_actions, left_actions)):
        if len(ra) != len(la):
            raise ValueError("mismatched algebra: %d vs %d basis actions" % (len(ra), len(la)))
        before = 1
        for d in dims[:p]:
            before *= d
        after = 1
        for d in dims[p + 2:]:
            after *= d
        dv, dw = dims[p], dims[p + 1]
        blk = dv * dw
        for rho, lam in zip(ra, la):
            field_of(rho, lam)
            R = kron(numpy.asarray(rho, dtype=object), eye(field, dw)) \
                - kron(eye(field, dv), numpy.asarray(lam, dtype=object))
            for col in _sparse_cols(R):
                if not col:
                    continue
                for b in range(before):
                    for a in range(after):
                        rows.append({(b * blk + i) * after + a: x for i, x in col.items()})
    rel = span(field, total, rows)
    P, S = quotient(total, rel)
    return BalancedTensor(dims, rel, P, S)


def tensor_over_algebra(right_action, left_action, field=None):
    """V (x)_A W from the right action matrices of V and left action matrices of W."""
    right_action = [numpy.asarray(m, dtype=object) for m in right_action]
    left_action = [numpy.asarray(m, dtype=object) for m in left_action]
    if len(right_action) != len(left_action):
        raise ValueError("mismatched algebra: %d vs %d basis actions"
                         % (len(right_action), len(left_action)))
    if field is None:
        field = field_of(*right_action, *left_action)
    dv = right_action[0].shape[0] if right_action else 0
    dw = left_action[0].shape[0] if left_action else 0
    return balanced_tensor(field, (dv, dw), [right_action], [left_action])
