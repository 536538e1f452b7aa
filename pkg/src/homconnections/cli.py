"""
Command-line front end.

    homconn run --input workspace.json
    homconn solve algebra="matrix-algebra 2"
    homconn homology --input workspace.json connection='{"coords": [1, 0]}'
    homconn laurent q=2 a="u^-1" f='["u^3", "1"]'
    homconn gen sweedler-coring product-field-2

A workspace is a JSON object

    {"field": "Q",
     "algebras": {name: builtin id | algebra document},
     "calculi":  {name: {"universal": alg} | {"zero": alg} | {"coring": cor}
                        | {"quotient": calc, "generators": [[deg, vector], ...]}
                        | calculus document with "algebra": alg},
     "modules":  {name: {"regular": alg} | {"dual": alg} | module document with "algebra": alg},
     "corings":  {name: {"sweedler": alg} | {"trivial": alg} | {"grouplike": alg, "r": r}
                        | coring document with "algebra": alg},
     "maps":     {name: {"identity": calc} | {"quotient": calc, "generators": [...]}
                        | {"source": calc, "target": calc, "theta": [matrix, ...]}},
     "tasks":    [{"op": ..., ...}, ...]}

Calculi built from names accept an optional "truncation".  Tasks that need
a connection take "calculus", "module" and "connection", the latter being
"particular", "inner", "left-d-dual", {"coords": [...]} (offset from the
particular solution along the homogeneous basis), {"xi": [...]},
{"iota": [...]} (coring calculi) or {"nabla0": matrix}.

Exit codes: 2 parse error, 3 validation failure or unresolved reference,
4 mathematical refusal, 5 internal error.
"""

import argparse
import json
import sys
import traceback

import numpy

from . import __version__
from .algrep import RightModule, regular_module, validate_algebra, validate_module
from .calculus import (DEFAULT_TRUNCATION, find_inner_form, universal_calculus,
                       validate_calculus, zero_calculus)
from .duality import (build_duality_data, comodule_connection_to_homconn,
                      comodule_identity_check, contramodule_checks, contramodule_to_homconn,
                      coring_to_dga, cosplit_check, duality_checks, grouplike_coring,
                      homconn_to_comodule_connection, homconn_to_contramodule, sweedler_coring,
                      trivial_coring, validate_coring)
from .exactlin import QQ, fmt_matrix, is_zero, span
from .homconn import (HomConnection, NonFlatError, curvature, curvature_linearity_check,
                      homology, inner_homconnection, lemma_leibniz_check, solve_homconnections,
                      theta_factorization_check)
from .induce import (DGAMap, curvature_transfer_check, dualize_left_connection, identity_map,
                     induce_via_dga_map, left_connection_curvature, left_connection_from_d,
                     quotient_map, validate_dga_map)
from . import qlaurent
from .wire import (WireError, algebra_from_doc, algebra_to_doc, array_in, calculus_from_doc,
                   calculus_to_doc, coring_from_doc, coring_to_doc, module_from_doc,
                   parse_field)
from .zoo import algebra_by_name

OPS = ("validate", "solve", "curvature", "homology", "induce", "dualize", "contra", "laurent")
CORING_TRUNCATION = 2


class CliError(Exception):
    code = 5


class ParseError(CliError):
    code = 2


class ValidationFailure(CliError):
    code = 3


class Refusal(CliError):
    """A mathematically meaningless request; ``lines`` go into the report."""
    code = 4

    def __init__(self, message, lines=()):
        super().__init__(message)
        self.lines = list(lines)


# ---------------------------------------------------------------------------
# workspace

SECTIONS = ("algebras", "calculi", "modules", "corings", "maps")
SINGULAR = {"algebras": "algebra", "calculi": "calculus", "modules": "module",
            "corings": "coring", "maps": "map"}


class Workspace:
    def __init__(self, doc, field=None, truncation=None):
        if not isinstance(doc, dict):
            raise ParseError("workspace must be a JSON object")
        unknown = set(doc) - set(SECTIONS) - {"field", "tasks"}
        if unknown:
            raise ParseError("unknown workspace keys: %s" % ", ".join(sorted(unknown)))
        try:
            declared = parse_field(doc["field"]) if "field" in doc else None
            given = parse_field(field) if field is not None else None
        except WireError as e:
            raise ParseError(str(e))
        if declared is not None and given is not None and declared != given:
            raise ValidationFailure("document field %s differs from --field %s"
                                    % (declared.name, given.name))
        self.field = declared or given or QQ
        self.truncation = truncation
        self.doc = doc
        for key in SECTIONS:
            if not isinstance(doc.get(key, {}), dict):
                raise ParseError("%r must be an object of named entries" % key)
        self.tasks = doc.get("tasks", [])
        if not isinstance(self.tasks, list):
            raise ParseError("'tasks' must be a list")
        self._objects = {}
        self._loading = set()

    def names(self, section):
        return list(self.doc.get(section, {}))

    def kind_of(self, name):
        kinds = [s for s in SECTIONS if name in self.doc.get(s, {})]
        if not kinds:
            raise ValidationFailure("unresolved reference %r" % name)
        if len(kinds) > 1:
            raise ValidationFailure("ambiguous reference %r (%s)" % (name, ", ".join(kinds)))
        return kinds[0]

    def get(self, section, name):
        if not isinstance(name, str):
            raise ParseError("object references must be names, got %r" % (name,))
        key = (section, name)
        if key in self._objects:
            return self._objects[key]
        entries = self.doc.get(section, {})
        if name not in entries:
            raise ValidationFailure("unresolved %s reference %r" % (SINGULAR[section], name))
        if key in self._loading:
            raise ValidationFailure("circular reference through %r" % name)
        self._loading.add(key)
        try:
            obj = getattr(self, "_load_" + section)(name, entries[name])
        except WireError as e:
            raise ParseError("%s %r: %s" % (SINGULAR[section], name, e))
        finally:
            self._loading.discard(key)
        self._objects[key] = obj
        return obj

    def algebra(self, name):
        return self.get("algebras", name)

    def calculus(self, name):
        return self.get("calculi", name)

    def module(self, name):
        return self.get("modules", name)

    def coring(self, name):
        return self.get("corings", name)

    def map(self, name):
        return self.get("maps", name)

    def load_all(self):
        for section in SECTIONS:
            for name in self.names(section):
                self.get(section, name)

    @staticmethod
    def _checked(kind, name, obj, rep):
        # documents are untrusted; builtins are correct by construction
        if not rep.ok:
            raise ValidationFailure("%s %r fails validation: %s"
                                    % (kind, name, rep.violations[0][0]))
        return obj

    def _trunc(self, entry, default):
        D = entry.get("truncation", self.truncation or default)
        if isinstance(D, bool) or not isinstance(D, int) or D < 1:
            raise ParseError("truncation must be a positive integer")
        return D

    def _load_algebras(self, name, entry):
        if isinstance(entry, dict) and "builtin" in entry:
            entry = entry["builtin"]
        if isinstance(entry, str):
            try:
                A = algebra_by_name(entry, self.field)
            except (KeyError, ValueError) as e:
                raise ValidationFailure("algebra %r: %s" % (name, e.args[0]))
            return A
        A = algebra_from_doc(entry, self.field, name)
        return self._checked("algebra", name, A, validate_algebra(A))

    def _ref_algebra(self, entry, key="algebra"):
        ref = entry.get(key)
        if isinstance(ref, dict):
            A = algebra_from_doc(ref, self.field)
            return self._checked("algebra", "(inline)", A, validate_algebra(A))
        return self.algebra(ref)

    def _load_calculi(self, name, entry):
        if not isinstance(entry, dict):
            raise ParseError("calculus %r must be an object" % name)
        if "universal" in entry:
            return universal_calculus(self.algebra(entry["universal"]), self._trunc(entry, DEFAULT_TRUNCATION))
        if "zero" in entry:
            return zero_calculus(self.algebra(entry["zero"]), self._trunc(entry, DEFAULT_TRUNCATION))
        if "coring" in entry:
            cor = self.coring(entry["coring"])
            if cor.grouplike is None:
                raise ValidationFailure("coring %r has no group-like element" % entry["coring"])
            return coring_to_dga(cor, self._trunc(entry, CORING_TRUNCATION))
        if "quotient" in entry:
            return self._quotient(entry)[0]
        O = calculus_from_doc(entry, self._ref_algebra(entry), name)
        return self._checked("calculus", name, O, validate_calculus(O))

    def _quotient(self, entry):
        O = self.calculus(entry["quotient"])
        gens = []
        for g in entry.get("generators", []):
            if not (isinstance(g, list) and len(g) == 2 and isinstance(g[0], int)):
                raise ParseError("quotient generators are [degree, vector] pairs")
            if not 1 <= g[0] <= O.truncation:
                raise ValidationFailure("generator degree %r outside 1..%d" % (g[0], O.truncation))
            gens.append((g[0], array_in(self.field, g[1], (O.dim(g[0]),))))
        return quotient_map(O, gens)

    def _load_modules(self, name, entry):
        if not isinstance(entry, dict):
            raise ParseError("module %r must be an object" % name)
        if "regular" in entry:
            A = self.algebra(entry["regular"])
            return RightModule(A, A.right_mats, name)
        if "dual" in entry:
            # A* with (xi a)(b) = xi(a b)
            A = self.algebra(entry["dual"])
            return RightModule(A, tuple(L.T.copy() for L in A.left_mats), name)
        M = module_from_doc(entry, self._ref_algebra(entry), name)
        return self._checked("module", name, M, validate_module(M))

    def _load_corings(self, name, entry):
        if not isinstance(entry, dict):
            raise ParseError("coring %r must be an object" % name)
        if "sweedler" in entry:
            return sweedler_coring(self.algebra(entry["sweedler"]))
        if "trivial" in entry:
            return trivial_coring(self.algebra(entry["trivial"]))
        if "grouplike" in entry:
            r, x = entry.get("r", 2), entry.get("x", 0)
            try:
                return grouplike_coring(self.algebra(entry["grouplike"]), r, x)
            except (TypeError, ValueError) as e:
                raise ValidationFailure("coring %r: %s" % (name, e))
        cor = coring_from_doc(entry, self._ref_algebra(entry), name)
        return self._checked("coring", name, cor, validate_coring(cor))

    def _load_maps(self, name, entry):
        if not isinstance(entry, dict):
            raise ParseError("map %r must be an object" % name)
        if "identity" in entry:
            return identity_map(self.calculus(entry["identity"]))
        if "quotient" in entry:
            return self._quotient(entry)[1]
        S, T = self.calculus(entry.get("source")), self.calculus(entry.get("target"))
        thetas = entry.get("theta")
        if not isinstance(thetas, list):
            raise ParseError("map %r needs a 'theta' list" % name)
        D = len(thetas) - 1
        if D > min(S.truncation, T.truncation) or D < 0:
            raise ValidationFailure("map %r has %d degrees; calculi allow %d"
                                    % (name, D + 1, min(S.truncation, T.truncation) + 1))
        f = DGAMap(S, T, tuple(array_in(self.field, m, (T.dim(n), S.dim(n)))
                               for n, m in enumerate(thetas)), name)
        return self._checked("map", name, f, validate_dga_map(f))


# ---------------------------------------------------------------------------
# report lines

def _fmt(field, value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, numpy.ndarray):
        return fmt_matrix(field, value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(field, v) for v in value) + "]"
    return field.fmt(value)


class Section:
    def __init__(self, field):
        self.field = field
        self.lines = []

    def kv(self, key, value):
        self.lines.append("%s: %s" % (key, _fmt(self.field, value)))

    def report(self, key, rep, limit=5):
        self.kv(key + ".ok", rep.ok)
        self.kv(key + ".checked", rep.checked)
        if not rep.ok:
            self.kv(key + ".violations", len(rep.violations))
            for label, detail in rep.violations[:limit]:
                extra = ", ".join("%s=%s" % (k, _fmt(self.field, v)) for k, v in sorted(detail.items()))
                self.kv(key + ".violation", label + (" (" + extra + ")" if extra else ""))


# ---------------------------------------------------------------------------
# connections

def _connection(ws, task):
    O = ws.calculus(task.get("calculus", "O"))
    entry = task.get("connection", "particular")
    if entry == "left-d-dual":
        L = left_connection_from_d(O)
        return dualize_left_connection(L, regular_module(L.M.right_algebra))
    M = ws.module(task.get("module", "M"))
    if M.algebra.dim != O.algebra.dim:
        raise ValidationFailure("module and calculus live over different algebras")
    if entry == "inner":
        xi = find_inner_form(O)
        if xi is None:
            raise Refusal("the calculus is not inner")
        return inner_homconnection(O, M, xi)
    if entry == "particular" or (isinstance(entry, dict) and "coords" in entry):
        space = solve_homconnections(O, M)
        if not space.solvable:
            raise Refusal("the module admits no hom-connection")
        if entry == "particular":
            return space.any()
        basis = space.solutions.homogeneous.vectors()
        coords = entry["coords"]
        if not isinstance(coords, list) or len(coords) != len(basis):
            raise ValidationFailure("connection coords need %d entries" % len(basis))
        vec = space.solutions.particular.copy()
        for c, b in zip(coords, basis):
            vec = vec + _scalar(ws, c) * b
        return space.connection(vec)
    if isinstance(entry, dict) and "xi" in entry:
        xi = array_in(ws.field, entry["xi"], (O.dim(1),))
        try:
            return inner_homconnection(O, M, xi)
        except ValueError as e:
            raise ValidationFailure(str(e))
    if isinstance(entry, dict) and "iota" in entry:
        cor = O.meta.get("coring")
        if cor is None:
            raise ValidationFailure("'iota' needs a calculus built from a coring")
        res = cosplit_check(cor, O, array_in(ws.field, entry["iota"], (cor.dim,)))
        if res is None:
            raise ValidationFailure("iota is not a central element with counit 1")
        return inner_homconnection(O, M, res.xi)
    if isinstance(entry, dict) and "nabla0" in entry:
        from .algrep import hom_space
        H1 = hom_space(O.component(1), M)
        nabla = HomConnection(O, M, array_in(ws.field, entry["nabla0"], (M.dim, H1.dim)), H1)
        rep = nabla.leibniz_report()
        if not rep.ok:
            raise ValidationFailure("nabla0 fails the Leibniz rule (%d violations)"
                                    % len(rep.violations))
        return nabla
    raise ParseError("unknown connection entry %r" % (entry,))


def _scalar(ws, c):
    try:
        return array_in(ws.field, c, ())[()]
    except WireError as e:
        raise ParseError(str(e))


def _describe(task):
    entry = task.get("connection", "particular")
    return entry if isinstance(entry, str) else json.dumps(entry, sort_keys=True)


def _header(sec, task, keys):
    for k in keys:
        if k in task:
            v = task[k]
            sec.kv(k, v if isinstance(v, (str, int)) and not isinstance(v, bool)
                   else json.dumps(v, sort_keys=True))


# ---------------------------------------------------------------------------
# operations

def op_validate(ws, task, sec, ctx):
    targets = task.get("targets", [task["target"]] if "target" in task else None)
    if targets is None:
        targets = [n for s in SECTIONS for n in ws.names(s)]
    ok = True
    for name in targets:
        kind = ws.kind_of(name)
        obj = ws.get(kind, name)
        check = {"algebras": validate_algebra, "calculi": validate_calculus,
                 "modules": validate_module, "corings": validate_coring,
                 "maps": validate_dga_map}[kind]
        rep = check(obj)
        sec.kv(name + ".kind", SINGULAR[kind])
        sec.report(name, rep)
        ok = ok and rep.ok
    if "connection" in task:
        nabla = _connection(ws, task)
        sec.kv("connection", _describe(task))
        for key, rep in (("leibniz", nabla.leibniz_report()),
                         ("curvature_linear", curvature_linearity_check(nabla)),
                         ("higher_leibniz", lemma_leibniz_check(nabla))):
            sec.report(key, rep)
            ok = ok and rep.ok
    sec.kv("all_pass", ok)
    if not ok:
        ctx["code"] = max(ctx["code"], ValidationFailure.code)


def op_solve(ws, task, sec, ctx):
    O, M = ws.calculus(task.get("calculus", "O")), ws.module(task.get("module", "M"))
    space = solve_homconnections(O, M)
    sec.kv("H1_dim", space.H1.dim)
    sec.kv("solvable", space.solvable)
    if not space.solvable:
        return
    sec.kv("affine_dim", space.dimension)
    hom = space.homogeneous_hom()
    direct = span(O.field, M.dim * space.H1.dim, [b.reshape(-1) for b in hom.basis])
    sec.kv("hom_dim", hom.dim)
    sec.kv("homogeneous_equals_hom", direct == space.solutions.homogeneous)
    sec.kv("particular", space.any().nabla0)
    for i, v in enumerate(space.solutions.homogeneous.vectors()):
        sec.kv("homogeneous[%d]" % i, v.reshape(M.dim, space.H1.dim))
    sec.kv("leibniz_all", all(n.leibniz_report().ok for n in space.all_generators()))


def _chain_lines(sec, nabla):
    D = nabla.calculus.truncation
    sec.kv("hom_dims", [nabla.hom(n).dim for n in range(D + 1)])
    for n in range(D):
        sec.kv("nabla_%d" % n, nabla.chain(n))


def op_curvature(ws, task, sec, ctx):
    nabla = _connection(ws, task)
    sec.kv("connection", _describe(task))
    _chain_lines(sec, nabla)
    curv = curvature(nabla)
    sec.kv("curvature", curv.F)
    sec.kv("flat", curv.is_zero)
    for n in range(1, nabla.calculus.truncation):
        sec.report("theta_%d" % n, theta_factorization_check(nabla, n))


def _homology_lines(sec, nabla, prefix=""):
    D = nabla.calculus.truncation
    dims = []
    for n in range(D):
        H = homology(nabla, n)
        dims.append(H.dim)
        for i, r in enumerate(H.representatives):
            sec.kv("%sH_%d.rep[%d]" % (prefix, n, i), r)
    sec.kv(prefix + "homology_dims", dims)


def op_homology(ws, task, sec, ctx):
    nabla = _connection(ws, task)
    sec.kv("connection", _describe(task))
    try:
        _homology_lines(sec, nabla)
    except NonFlatError as e:
        raise Refusal("homology of a non-flat connection",
                      ["flat: false", "curvature: " + fmt_matrix(ws.field, e.curvature.F)])


def op_induce(ws, task, sec, ctx):
    if task.get("via", "map" if "map" in task else "left-d") == "left-d":
        O = ws.calculus(task.get("calculus", "O"))
        L = left_connection_from_d(O)
        nabla = dualize_left_connection(L, regular_module(L.M.right_algebra))
        sec.kv("via", "left-d")
        sec.kv("module_dim", nabla.module.dim)
        sec.kv("nabla_0", nabla.nabla0)
        sec.report("leibniz", nabla.leibniz_report())
        sec.report("transport", left_connection_curvature(L, regular_module(L.M.right_algebra), nabla))
        flat = nabla.is_flat()
        sec.kv("flat", flat)
        if flat:
            _homology_lines(sec, nabla)
        return
    th = ws.map(task["map"])
    task = dict(task, calculus=task.get("calculus") or _source_name(ws, task["map"]))
    nabla = _connection(ws, task)
    if nabla.calculus is not th.source:
        raise ValidationFailure("connection calculus is not the source of map %r" % task["map"])
    sec.kv("via", "map")
    sec.kv("connection", _describe(task))
    rep = validate_dga_map(th)
    sec.report("map", rep)
    if not rep.ok:
        ctx["code"] = max(ctx["code"], ValidationFailure.code)
        return
    out = induce_via_dga_map(th, nabla)
    sec.kv("module_dim", out.module.dim)
    sec.kv("nabla_0", out.nabla0)
    sec.report("leibniz", out.leibniz_report())
    if min(th.source.truncation, th.target.truncation) >= 2:
        sec.report("curvature_transfer", curvature_transfer_check(th, nabla, out))
        sec.kv("flat_in", nabla.is_flat())
        sec.kv("flat_out", out.is_flat())


def _source_name(ws, map_name):
    entry = ws.doc["maps"][map_name]
    for key in ("identity", "quotient", "source"):
        if key in entry:
            return entry[key]
    raise ParseError("map %r has no source" % map_name)


def op_dualize(ws, task, sec, ctx):
    nabla = _connection(ws, task)
    sec.kv("connection", _describe(task))
    data = build_duality_data(nabla.calculus, nabla.module)
    sec.kv("cotensor_dim", data.cotensor.dim)
    sec.kv("H1_dim", data.H1.dim)
    sec.report("duality", duality_checks(data))
    nbar = homconn_to_comodule_connection(nabla, data)
    sec.kv("comodule_connection", nbar)
    sec.report("comodule_identity", comodule_identity_check(data, nbar))
    back = comodule_connection_to_homconn(data, nbar)
    sec.kv("round_trip", _same(back.nabla0, nabla.nabla0))


def op_contra(ws, task, sec, ctx):
    nabla = _connection(ws, task)
    if not nabla.calculus.meta.get("coring"):
        raise ValidationFailure("contra needs a calculus built from a coring")
    sec.kv("connection", _describe(task))
    cm = homconn_to_contramodule(nabla)
    sec.kv("phi", cm.phi)
    rep = contramodule_checks(cm, pentagon=True)
    axioms = [l for l in rep.labels() if l != "pentagon"]
    pentagon = "pentagon" not in rep.labels()
    sec.kv("axioms_ok", not axioms)
    sec.kv("pentagon", pentagon)
    flat = nabla.is_flat()
    sec.kv("flat", flat)
    sec.kv("pentagon_iff_flat", pentagon == flat)
    back = contramodule_to_homconn(cm, nabla.calculus)
    sec.kv("round_trip", _same(back.nabla0, nabla.nabla0))


def _same(x, y):
    return x.shape == y.shape and is_zero(x - y)


def _int_range(r):
    """``N`` means -N..N; ``[lo, hi]`` is inclusive."""
    if isinstance(r, int) and not isinstance(r, bool) and r >= 0:
        return -r, r
    if (isinstance(r, list) and len(r) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in r) and r[0] <= r[1]):
        return r[0], r[1]
    raise ParseError("range must be N >= 0 or [lo, hi], got %r" % (r,))


def op_laurent(ws, task, sec, ctx):
    field = ws.field
    q = _scalar(ws, task.get("q", 2))
    try:
        a = qlaurent.parse(str(task.get("a", "0")), field)
        fs = task.get("f", [])
        if not isinstance(fs, list):
            raise ParseError("f must be a list of expressions")
        fs = [qlaurent.parse(str(s), field) for s in fs]
    except ValueError as e:
        raise ParseError(str(e))
    if q == 0:
        raise ValidationFailure("q must be nonzero")
    sec.kv("q", q)
    sec.kv("a", str(a))
    nabla = qlaurent.homconn_from_element(a, q)
    for i, f in enumerate(fs):
        sec.kv("nabla(%s)" % f, str(nabla(f)))
    lo, hi = _int_range(task.get("range", 8))
    mono = all(qlaurent.jackson_derivative(qlaurent.LaurentPoly.monomial(n, 1, field), q)
               == qlaurent.LaurentPoly.monomial(n - 1, qlaurent.q_integer(n, q), field)
               for n in range(lo, hi + 1))
    sec.kv("jackson_monomials", mono)
    count = task.get("pairs", 100)
    if isinstance(count, bool) or not isinstance(count, int) or count < 0:
        raise ParseError("pairs must be a non-negative integer")
    rng = numpy.random.default_rng(ctx["seed"])
    pairs = [(qlaurent.random_poly(rng, field), qlaurent.random_poly(rng, field))
             for _ in range(count)]
    sec.kv("pairs", count)
    sec.report("classification", qlaurent.classification_check(nabla, q, pairs))
    sec.report("commutation", qlaurent.commutation_check(
        qlaurent.random_poly(rng, field), q, [qlaurent.random_poly(rng, field) for _ in range(3)]))
    if q != 1:
        inner = qlaurent.homconn_from_element(
            qlaurent.LaurentPoly.monomial(-1, 1 / (q - 1), field), q)
        sec.kv("inner_equals_element", all(
            inner(qlaurent.LaurentPoly.monomial(n, 1, field))
            == qlaurent.inner_xi_connection(q, qlaurent.LaurentPoly.monomial(n, 1, field))
            for n in range(lo, hi + 1)))


DISPATCH = {"validate": op_validate, "solve": op_solve, "curvature": op_curvature,
            "homology": op_homology, "induce": op_induce, "dualize": op_dualize,
            "contra": op_contra, "laurent": op_laurent}


def run(doc, field=None, truncation=None, seed=0, only=None):
    """Execute the tasks of a workspace; returns (report text, exit code)."""
    ws = Workspace(doc, field, truncation)
    for i, task in enumerate(ws.tasks):
        if not isinstance(task, dict) or task.get("op") not in DISPATCH:
            raise ParseError("task %d: unknown op %r" % (i + 1, task.get("op") if isinstance(task, dict) else task))
    ws.load_all()
    ctx = {"code": 0, "seed": seed}
    tasks = [t for t in ws.tasks if only is None or t["op"] == only]
    out = ["report: homconn %s" % __version__, "field: %s" % ws.field.name,
           "seed: %d" % seed, "tasks: %d" % len(tasks)]
    for i, task in enumerate(tasks, 1):
        sec = Section(ws.field)
        sec.kv("op", task["op"])
        _header(sec, task, ("target", "targets", "calculus", "module", "map", "via"))
        try:
            DISPATCH[task["op"]](ws, task, sec, ctx)
            sec.kv("status", "ok")
        except Refusal as e:
            sec.kv("status", "refused")
            sec.kv("reason", str(e))
            sec.lines.extend(e.lines)
            ctx["code"] = max(ctx["code"], Refusal.code)
        out.append("")
        out.append("[task %d]" % i)
        out.extend(sec.lines)
    return "\n".join(out) + "\n", ctx["code"]


# ---------------------------------------------------------------------------
# generators

GEN_ALGEBRAS = ("matrix-algebra", "group-algebra", "product-field", "dual-numbers")


def generate(words, field=QQ):
    """Object document for a builtin id such as ``["sweedler-coring", "product-field-2"]``."""
    if not words:
        raise ParseError("gen needs a builtin id")
    head, args = words[0], words[1:]
    try:
        if head in GEN_ALGEBRAS:
            A = algebra_by_name(" ".join(words), field)
            return dict(kind="algebra", field=field.name, name=" ".join(words), **algebra_to_doc(A))
        if head in ("sweedler-coring", "trivial-coring"):
            if len(args) != 1:
                raise ParseError("%s needs one algebra id" % head)
            A = algebra_by_name(args[0], field)
            cor = (sweedler_coring if head == "sweedler-coring" else trivial_coring)(A)
            return dict(kind="coring", field=field.name, name=" ".join(words), **coring_to_doc(cor))
        if head == "universal-calculus":
            if len(args) not in (1, 2):
                raise ParseError("universal-calculus needs an algebra id and optional D")
            D = int(args[1]) if len(args) == 2 else DEFAULT_TRUNCATION
            if D < 1:
                raise ValueError("truncation must be positive")
            O = universal_calculus(algebra_by_name(args[0], field), D)
            return dict(kind="calculus", field=field.name, name=" ".join(words), **calculus_to_doc(O))
    except KeyError as e:
        raise ParseError(str(e.args[0]))
    except ValueError as e:
        raise ParseError(str(e))
    raise ParseError("unknown builtin %r" % head)


# ---------------------------------------------------------------------------
# entry point

def _params(items):
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ParseError("expected key=value, got %r" % item)
        try:
            out[key] = json.loads(value)
        except ValueError:
            out[key] = value
    return out


WORKSPACE_KEYS = ("algebra", "module", "coring")


def implicit_workspace(op, params):
    """A one-task workspace over a builtin algebra, for quick command-line use."""
    params = dict(params)
    alg = params.pop("algebra", "product-field 2")
    mod = params.pop("module", "regular")
    cor = params.pop("coring", "sweedler")
    doc = {"algebras": {"A": alg}, "modules": {"M": {mod: "A"}}}
    if op == "contra":
        doc["corings"] = {"C": {cor: "A"}}
        doc["calculi"] = {"O": {"coring": "C"}}
    elif op != "laurent":
        doc["calculi"] = {"O": {"universal": "A"}}
    else:
        doc = {}
    doc["tasks"] = [dict({"op": op}, **params)]
    return doc


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e.strerror))
    except ValueError as e:
        raise ParseError("invalid JSON in %s: %s" % (path, e))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='ground field, "Q" or "F<p>" (default Q)')
    common.add_argument("--truncation", type=int, help="top degree of built calculi")
    common.add_argument("--input", help="workspace JSON file ('-' for stdin)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser = argparse.ArgumentParser(prog="homconn", description="hom-connection computations")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="run every task of a workspace")
    for op in OPS:
        p = sub.add_parser(op, parents=[common], help="run %s tasks" % op)
        p.add_argument("params", nargs="*", help="task parameters as key=value")
    g = sub.add_parser("gen", parents=[common], help="emit a builtin object document")
    g.add_argument("builtin", nargs="+")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _main(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code in (0, None):
            return 0
        return ParseError.code
    if args.truncation is not None and args.truncation < 1:
        raise ParseError("--truncation must be positive")
    if args.command == "gen":
        field = parse_field(args.field) if args.field else QQ
        _emit(json.dumps(generate(args.builtin, field), indent=1) + "\n", args.output)
        return 0
    params = _params(getattr(args, "params", []))
    if args.command == "run":
        if not args.input:
            raise ParseError("run needs --input")
        doc, only = _read_json(args.input), None
    elif params and args.input:
        doc = dict(_read_json(args.input), tasks=[dict({"op": args.command}, **params)])
        only = None
    elif args.input:
        doc, only = _read_json(args.input), args.command
    else:
        doc, only = implicit_workspace(args.command, params), None
    text, code = run(doc, args.field, args.truncation, args.seed, only)
    _emit(text, args.output)
    return code


def main(argv=None):
    try:
        return _main(argv)
    except WireError as e:
        print("error: %s" % e, file=sys.stderr)
        return ParseError.code
    except CliError as e:
        print("error: %s" % e, file=sys.stderr)
        return e.code
    except Exception:
        traceback.print_exc(file=sys.stderr)
        print("internal error", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
