"""
Hom-connections over the Laurent polynomials k[u, u^-1] with the calculus
du A, u du = q du u.

Here Hom_A(Omega^1, M) is identified with M through f -> f(du), and a
hom-connection on A is determined by a = nabla0(1):

    nabla0^a(f) = a f(q^-1 u) + d_q[f(q^-1 u)]

where d_q is the Jackson derivative (the ordinary derivative when q = 1).
Expressions such as ``"3/2*u^-1 + u^2 - 4"`` are parsed by :func:`parse`.
"""

import re
from dataclasses import dataclass

from .exactlin import QQ
from .report import Report

__all__ = [
    "LaurentPoly", "QParam", "scale_substitute", "jackson_derivative", "q_integer",
    "homconn_from_element", "inner_xi_connection", "classification_check",
    "commutation_check", "parse", "random_poly",
]


class LaurentPoly:
    """Finite sums of c_n u^n with no stored zero coefficients."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=None, field=QQ):
        self.field = field
        self.coeffs = {}
        for n, c in (coeffs or {}).items():
            c = field(c)
            if c != 0:
                self.coeffs[int(n)] = c

    @classmethod
    def monomial(cls, n, c=1, field=QQ):
        return cls({n: c}, field)

    @classmethod
    def constant(cls, c, field=QQ):
        return cls({0: c}, field)

    def _new(self, coeffs):
        out = LaurentPoly.__new__(LaurentPoly)
        out.field = self.field
        out.coeffs = {n: c for n, c in coeffs.items() if c != 0}
        return out

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(other, self.field)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for n, c in self.coeffs.items():
            for m, e in other.coeffs.items():
                out[n + m] = out.get(n + m, 0) + c * e
        return self._new(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = self._lift(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def degrees(self):
        return sorted(self.coeffs)

    def to_json(self):
        return {str(n): self.field.fmt(self.coeffs[n]) for n in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, doc, field=QQ):
        return cls({int(n): field(c) for n, c in doc.items()}, field)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            mono = "" if n == 0 else ("u" if n == 1 else "u^%d" % n)
            cs = self.field.fmt(c)
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            elif mono:
                term = cs + "*" + mono
            else:
                term = cs
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


@dataclass(frozen=True)
class QParam:
    q: object

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @property
    def classical(self):
        return self.q == 1


def _as_q(q, field=QQ):
    return q if isinstance(q, QParam) else QParam(field(q))


def scale_substitute(f, gamma):
    """f(gamma u) = sum c_n gamma^n u^n."""
    gamma = f.field(gamma)
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    return f._new({n: c * gamma ** n for n, c in f.coeffs.items()})


def q_integer(n, q):
    """[n]_q = (q^n - 1)/(q - 1), equal to n when q = 1."""
    if q == 1:
        return n
    return (q ** n - 1) / (q - 1)


def jackson_derivative(f, q):
    """d_q f = (f(qu) - f(u)) / ((q - 1) u); the formal derivative when q = 1."""
    q = _as_q(q, f.field).q
    return f._new({n - 1: c * q_integer(n, q) for n, c in f.coeffs.items() if n != 0})


def homconn_from_element(a, q):
    """The hom-connection f -> a f(q^-1 u) + d_q[f(q^-1 u)] with nabla0(1) = a."""
    q = _as_q(q, a.field).q

    def nabla(f):
        g = scale_substitute(f, 1 / q)
        return a * g + jackson_derivative(g, q)

    return nabla


def inner_xi_connection(q, m):
    """nabla0^Xi(m) = m u^-1/(q - 1) for the generating form Xi = du u^-1/(q - 1)."""
    q = _as_q(q, m.field).q
    if q == 1:
        raise ValueError("the calculus is not inner at q = 1")
    return m * LaurentPoly.monomial(-1, 1 / (q - 1), m.field)


def classification_check(nabla, q, pairs):
    """nabla(m f(qu)) = nabla(m) f(u) + m d_q f(u) on each (m, f) pair."""
    rep = Report("classification identity")
    pairs = list(pairs)
    qq = _as_q(q, pairs[0][0].field if pairs else QQ).q
    for k, (m, f) in enumerate(pairs):
        lhs = nabla(m * scale_substitute(f, qq))
        rhs = nabla(m) * f + m * jackson_derivative(f, qq)
        rep.check(lhs == rhs, "identity", pair=k)
    return rep


def _left_via_generator(f, g, q):
    """f . (du g) computed by moving each u past du with u du = q du u."""
    out = LaurentPoly({}, g.field)
    for n, c in f.coeffs.items():
        # u^n du = q^n du u^n, also for negative n since u^-1 du = q^-1 du u^-1
        out = out + g * LaurentPoly.monomial(n, c * q ** n, g.field)
    return out


def commutation_check(f, q, probes=()):
    """f(u) du = du f(qu) as coefficient maps on du A, and R_m f = R_{m f(qu)}."""
    rep = Report("commutation rule")
    qq = _as_q(q, f.field).q
    probes = list(probes) or [LaurentPoly.constant(1, f.field)]
    for k, g in enumerate(probes):
        lhs = _left_via_generator(f, g, qq)
        rhs = scale_substitute(f, qq) * g
        rep.check(lhs == rhs, "f du = du f(qu)", probe=k)
        # R_m(du h) = m h, and (R_m f)(du h) = R_m(f du h)
        mf = g * scale_substitute(f, qq)
        for h in probes:
            rep.check(g * _left_via_generator(f, h, qq) == mf * h, "R_m f = R_{m f(qu)}", probe=k)
    return rep


_TERM = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+(?:/\d+)?)(?:\s*(?:\*\s*)?(?P<u1>u(?:\s*\^\s*(?P<e1>[+-]?\d+))?))?
      | (?P<u2>u(?:\s*\^\s*(?P<e2>[+-]?\d+))?)
    )\s*
""", re.VERBOSE)


def parse(text, field=QQ):
    """Parse ``"3/2*u^-1 + u^2 - 4"``.

    Grammar: terms joined by + or -; a term is ``c``, ``c*u^n``, ``c u^n``,
    ``u^n`` or ``u`` with c an integer or fraction p/r and n an integer
    (``u^-1``).  Coefficients are read into ``field``.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty expression")
    pos = 0
    out = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("u2") is None):
            raise ValueError("cannot parse %r at position %d" % (text, pos))
        if not first and m.group("sign") is None:
            raise ValueError("missing operator in %r at position %d" % (text, pos))
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            num, _, den = m.group("coef").partition("/")
            c = field(int(num)) / field(int(den)) if den else field(int(num))
            e = m.group("e1")
            n = 0 if m.group("u1") is None else (1 if e is None else int(e))
        else:
            c = field(1)
            e = m.group("e2")
            n = 1 if e is None else int(e)
        out[n] = out.get(n, 0) + sign * c
        pos = m.end()
    return LaurentPoly(out, field)


def random_poly(rng, field=QQ, lo=-8, hi=8, max_terms=6):
    """Random sparse Laurent polynomial; exponents in [lo, hi], at most max_terms terms."""
    k = int(rng.integers(0, max_terms + 1))
    exps = rng.choice(hi - lo + 1, size=k, replace=False) + lo if k else []
    coeffs = {}
    for n in exps:
        num = field(int(rng.integers(-9, 10)))
        den = field(int(rng.integers(1, 5)))
        coeffs[int(n)] = num / den if den != 0 else num
    return LaurentPoly(coeffs, field)
