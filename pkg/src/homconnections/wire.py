"""
JSON wire format.

Rationals travel as strings ``"p/q"`` or ``"n"``; prime-field elements as
integers 0..p-1, the modulus being declared once per document.  Documents:

    algebra   {"dim": n, "unit": [...], "mult": [[[...]]]}
    module    {"dim": m, "action": [matrix per algebra basis index]}
    bimodule  module keys plus "left_action"
    calculus  {"algebra": ..., "truncation": D, "components": [bimodule per degree 1..D],
               "d": [matrix per degree 0..D-1], "products": {"m,n": 3-index tensor}}
    coring    {"algebra": ..., "bimodule": ..., "coproduct": matrix, "counit": matrix,
               "grouplike": vector}
"""

import numpy

from .algrep import Bimodule, FinAlgebra, RightModule
from .calculus import GradedCalculus
from .duality import Coring, _cc_tensor
from .exactlin import GF, QQ, PrimeField

__all__ = [
    "WireError", "parse_field", "field_descriptor", "scalar_out", "scalar_in", "array_out",
    "array_in", "algebra_to_doc", "algebra_from_doc", "module_to_doc", "module_from_doc",
    "bimodule_to_doc", "bimodule_from_doc", "calculus_to_doc", "calculus_from_doc",
    "coring_to_doc", "coring_from_doc",
]


class WireError(ValueError):
    """A document is malformed (wrong type, shape or scalar format)."""


def parse_field(desc):
    """"Q", "F7", "Fp7", "GF(7)", {"p": 7} or {"Fp": 7}."""
    if isinstance(desc, dict):
        p = desc.get("p", desc.get("Fp"))
        if p is None:
            raise WireError("field descriptor needs 'p': %r" % (desc,))
        return _prime(p)
    if not isinstance(desc, str):
        raise WireError("bad field descriptor %r" % (desc,))
    s = desc.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    for head in ("GF(", "Fp", "F"):
        if s.startswith(head):
            return _prime(s[len(head):].rstrip(")"))
    raise WireError("bad field descriptor %r" % desc)


def _prime(p):
    try:
        return GF(int(p))
    except (TypeError, ValueError) as e:
        raise WireError(str(e))


def field_descriptor(field):
    return field.name


def scalar_out(field, x):
    if isinstance(field, PrimeField):
        return int(field(x))
    return field.fmt(x)


def scalar_in(field, x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise WireError("scalar must be an integer or a 'p/q' string, got %r" % (x,))
    try:
        return field(x)
    except (ValueError, ZeroDivisionError) as e:
        raise WireError("bad scalar %r: %s" % (x, e))


def array_out(field, a):
    a = numpy.asarray(a, dtype=object)
    if a.ndim == 0:
        return scalar_out(field, a[()])
    return [array_out(field, x) for x in a]


def array_in(field, data, shape):
    """Nested lists to an object array of the given shape."""
    shape = tuple(shape)
    out = numpy.empty(shape, dtype=object)

    def walk(x, idx):
        depth = len(idx)
        if depth == len(shape):
            out[idx] = scalar_in(field, x)
            return
        if not isinstance(x, list) or len(x) != shape[depth]:
            raise WireError("expected a list of length %d, got %s" % (shape[depth], _short(x)))
        for i, y in enumerate(x):
            walk(y, idx + (i,))

    walk(data, ())
    return out


def _short(x):
    s = repr(x)
    return s if len(s) < 60 else s[:57] + "..."


def _need(doc, key, kind):
    if not isinstance(doc, dict):
        raise WireError("%s document must be an object" % kind)
    if key not in doc:
        raise WireError("%s document lacks %r" % (kind, key))
    return doc[key]


def _dim(doc, kind):
    n = _need(doc, "dim", kind)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise WireError("%s dim must be a non-negative integer" % kind)
    return n


def algebra_to_doc(A):
    f = A.field
    return {"dim": A.dim, "unit": array_out(f, A.unit), "mult": array_out(f, A.mult)}


def algebra_from_doc(doc, field, name="A"):
    n = _dim(doc, "algebra")
    if n == 0:
        raise WireError("algebra dim must be positive")
    unit = array_in(field, _need(doc, "unit", "algebra"), (n,))
    mult = array_in(field, _need(doc, "mult", "algebra"), (n, n, n))
    return FinAlgebra(field, mult, unit, name)


def _actions(field, data, count, m, kind):
    if not isinstance(data, list) or len(data) != count:
        raise WireError("%s needs %d action matrices" % (kind, count))
    return tuple(array_in(field, x, (m, m)) for x in data)


def module_to_doc(M):
    f = M.field
    return {"dim": M.dim, "action": [array_out(f, R) for R in M.action]}


def module_from_doc(doc, A, name="M"):
    m = _dim(doc, "module")
    return RightModule(A, _actions(A.field, _need(doc, "action", "module"), A.dim, m, "module"),
                       name)


def bimodule_to_doc(E):
    f = E.field
    return {"dim": E.dim, "action": [array_out(f, R) for R in E.right_action],
            "left_action": [array_out(f, L) for L in E.left_action]}


def bimodule_from_doc(doc, B, A, name="E"):
    m = _dim(doc, "bimodule")
    right = _actions(A.field, _need(doc, "action", "bimodule"), A.dim, m, "bimodule")
    left = _actions(A.field, _need(doc, "left_action", "bimodule"), B.dim, m, "bimodule")
    return Bimodule(B, A, left, right, name)


def calculus_to_doc(O, algebra=None):
    """``algebra`` replaces the embedded algebra document (e.g. by a reference name)."""
    f = O.field
    D = O.truncation
    prods = {}
    for m in range(1, D + 1):
        for n in range(1, D + 1 - m):
            prods["%d,%d" % (m, n)] = array_out(f, O.products[(m, n)])
    return {
        "algebra": algebra_to_doc(O.algebra) if algebra is None else algebra,
        "truncation": D,
        "components": [bimodule_to_doc(c) for c in O.components],
        "d": [array_out(f, x) for x in O.d],
        "products": prods,
    }


def calculus_from_doc(doc, A, name="Omega"):
    D = _need(doc, "truncation", "calculus")
    if isinstance(D, bool) or not isinstance(D, int) or D < 1:
        raise WireError("calculus truncation must be a positive integer")
    comps = _need(doc, "components", "calculus")
    if not isinstance(comps, list) or len(comps) != D:
        raise WireError("calculus needs %d components" % D)
    comps = tuple(bimodule_from_doc(c, A, A, "Omega^%d" % (i + 1)) for i, c in enumerate(comps))
    dims = [A.dim] + [c.dim for c in comps]
    ds = _need(doc, "d", "calculus")
    if not isinstance(ds, list) or len(ds) != D:
        raise WireError("calculus needs %d differentials" % D)
    d = tuple(array_in(A.field, x, (dims[n + 1], dims[n])) for n, x in enumerate(ds))
    raw = _need(doc, "products", "calculus")
    if not isinstance(raw, dict):
        raise WireError("calculus products must be an object")
    prods = {}
    for m in range(1, D + 1):
        for n in range(1, D + 1 - m):
            key = "%d,%d" % (m, n)
            if key not in raw:
                raise WireError("calculus products lack %r" % key)
            prods[(m, n)] = array_in(A.field, raw[key], (dims[m], dims[n], dims[m + n]))
    return GradedCalculus(A, D, comps, d, prods, name)


def coring_to_doc(cor, algebra=None):
    f = cor.field
    return {
        "algebra": algebra_to_doc(cor.algebra) if algebra is None else algebra,
        "bimodule": bimodule_to_doc(cor.bimodule),
        "coproduct": array_out(f, cor.coproduct),
        "counit": array_out(f, cor.counit),
        "grouplike": None if cor.grouplike is None else array_out(f, cor.grouplike),
    }


def coring_from_doc(doc, A, name="C"):
    C = bimodule_from_doc(_need(doc, "bimodule", "coring"), A, A, name)
    T = _cc_tensor(C)
    cop = array_in(A.field, _need(doc, "coproduct", "coring"), (T.dim, C.dim))
    eps = array_in(A.field, _need(doc, "counit", "coring"), (A.dim, C.dim))
    g = doc.get("grouplike")
    g = None if g is None else array_in(A.field, g, (C.dim,))
    return Coring(A, C, T, cop, eps, g, name)
