"""Scenario files: declarations plus a list of checks with optional expectations.

A scenario is YAML::

    name: nilpotent lift
    rings:
      S: "product{residue{4}, residue{4}}"
      R: "product{residue{2}, residue{2}}"
    maps:
      f: {source: S, target: R}
    ideals:
      m: {ring: R, gens: ["(1, 0)"]}
    checks:
      - op: nilpotent_lift
        args: {map: f, ideal: m}
        expect: {status: Holds}

A map declared by source and target sends an element to the element of the
target written the same way (``substitute: {u: "0"}`` first replaces symbols
by their images); with ``coords: [i, ...]`` a map between products
keeps the listed factors.  Maps out of finite rings are checked to be ring
homomorphisms.
Names share one namespace.  Results are plain JSON-able dictionaries.
"""
import difflib
import json
import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import yaml

from . import acceptance
from .almost import (AlmostSetup, almost_elements, almost_fg_check, almost_iso, almost_zero, entourage_check,
                     flatness_check)
from .descent import (FiniteModule, counit_check, cyclic_module, fd_flatness, glue_T, local_flatness_check,
                      make_datum, milnor_square, relative_frobenius, unit_counit_check, witt_descent_check)
from .errors import ParseError, WorkbenchError
from .fdalg import FDModule
from .ideals import FGIdeal, condition_b_check, idempotency_check, standard_m
from .lifting import GluingSquare, gluing_lift, nilpotent_lift, witt_lift, witt_lift_monomial
from .modules import LevelFamily, ModuleMap, PresentedModule
from .parse import parse_element, parse_ring
from .rings import MonomialAlgebra, RingMap
from .tilt import isomorphism_report, perfection, tilt_construct
from .witt import WittRing, alpha_kernel, witt_perfect_check


class ScenarioError(ParseError):
    pass


# -- located YAML ----------------------------------------------------------------------

class Located(str):
    """A string that remembers where it was written (1-based line and column)."""
    line = col = None


def _located(value, node):
    s = Located(value)
    s.line, s.col = node.start_mark.line + 1, node.start_mark.column + 1
    if node.style in ('"', "'"):
        s.col += 1
    return s


def _convert(node):
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = _convert(k)
            if key in out:
                raise ScenarioError(f"duplicate key {key!r}", line=k.start_mark.line + 1,
                                    col=k.start_mark.column + 1)
            out[key] = _convert(v)
        out["__mark__"] = (node.start_mark.line + 1, node.start_mark.column + 1)
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_convert(v) for v in node.value]
    tag = node.tag or ""
    if tag.endswith(":int"):
        return int(node.value)
    if tag.endswith(":bool"):
        return node.value.lower() in ("true", "yes", "on")
    if tag.endswith(":null"):
        return None
    return _located(node.value, node)


def _strip(obj):
    if isinstance(obj, dict):
        return {k: _strip(v) for k, v in obj.items() if k != "__mark__"}
    if isinstance(obj, list):
        return [_strip(v) for v in obj]
    if isinstance(obj, Located):
        return str(obj)
    return obj


def _where(obj):
    if isinstance(obj, Located):
        return obj.line, obj.col
    if isinstance(obj, dict):
        return obj.get("__mark__", (None, None))
    return None, None


def _fail(msg, obj=None, offset=0):
    line, col = _where(obj)
    if col is not None:
        col += offset
    elif isinstance(obj, str) and "\n" not in obj:
        line, col = 1, offset + 1
    raise ScenarioError(msg, line=line, col=col)


# -- scenarios ------------------------------------------------------------------------------

@dataclass
class Check:
    op: str
    args: dict
    expect: dict = None
    node: object = None


@dataclass
class Scenario:
    name: str = ""
    settings: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    parallel: bool = False


def load_scenario(text, source="<scenario>"):
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        raise ScenarioError(f"{source}: {e.problem or e.context}",
                            line=mark.line + 1 if mark else None, col=mark.column + 1 if mark else None)
    if node is None:
        return Scenario(name=source)
    doc = _convert(node)
    if not isinstance(doc, dict):
        _fail("a scenario is a mapping", doc)
    known = {"name", "settings", "rings", "maps", "ideals", "checks", "parallel", "__mark__"}
    for k in doc:
        if k not in known:
            _fail(f"unknown section {k!r}", k)
    sc = Scenario(name=str(doc.get("name", source)), settings=_strip(doc.get("settings") or {}),
                  parallel=bool(doc.get("parallel", False)))
    seen = set()
    for section in ("rings", "maps", "ideals"):
        entries = doc.get(section) or {}
        if not isinstance(entries, dict):
            _fail(f"{section} must be a mapping", entries)
        for k, v in entries.items():
            if k == "__mark__":
                continue
            if k in seen:
                _fail(f"name {k!r} is declared twice", k)
            seen.add(k)
            getattr(sc, section)[k] = v
    for c in doc.get("checks") or []:
        if not isinstance(c, dict) or "op" not in c:
            _fail("each check needs an op", c)
        if str(c["op"]) not in OPS:
            _fail(f"unknown op {str(c['op'])!r}", c["op"])
        sc.checks.append(Check(str(c["op"]), c.get("args") or {}, c.get("expect"), c))
    return sc


# -- execution context ----------------------------------------------------------------------

@dataclass
class Context:
    prime: int = 2
    window: tuple = (0, 8)
    depth: int = 6
    seed: int = 0
    rings: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)

    def rng(self):
        return random.Random(self.seed)

    def setup(self):
        lo, hi = self.window
        return AlmostSetup(self.prime, hi, min(self.depth, hi - 1), lo)

    def ring(self, ref):
        if ref is None:
            _fail("a ring is required")
        if str(ref) in self.rings:
            return self.rings[str(ref)]
        return _parse_ring(ref)

    def ideal(self, ref, ring=None):
        if isinstance(ref, str) and str(ref) in self.ideals:
            return self.ideals[str(ref)]
        if ring is None:
            _fail(f"unknown ideal {str(ref)!r}", ref)
        gens = ref if isinstance(ref, list) else [ref]
        return FGIdeal(ring, [_parse_element(ring, g) for g in gens])

    def map(self, ref):
        if str(ref) not in self.maps:
            _fail(f"unknown map {str(ref)!r}", ref)
        return self.maps[str(ref)]


def _parse_ring(text):
    try:
        return parse_ring(str(text))
    except ParseError as e:
        _fail(f"bad ring {str(text)!r}: {e.message}", text, e.pos)


def _parse_element(R, text):
    try:
        return parse_element(R, str(text))
    except ParseError as e:
        _fail(f"bad element {str(text)!r}: {e.message}", text, e.pos)
    except WorkbenchError as e:
        _fail(f"bad element {str(text)!r}: {e}", text)


def expression_map(S, R, name="f", substitute=None):
    """x -> the element of R written like x, after replacing symbols by their images."""
    subs = {str(k): str(v) for k, v in (substitute or {}).items()}
    pattern = re.compile(r"\b(" + "|".join(map(re.escape, subs)) + r")\b") if subs else None

    def fn(a):
        text = S.format(a)
        if pattern:
            text = pattern.sub(lambda m: f"({subs[m.group(1)]})", text)
        return parse_element(R, text)
    return RingMap(S, R, fn, name)


def coordinate_map(S, R, coords, name="f"):
    """Between products: keep the listed factors of S, each read into the matching factor of R."""
    targets = R.factors if hasattr(R, "factors") else [R]
    if len(coords) != len(targets):
        raise ScenarioError(f"{name}: {len(coords)} coordinates for {len(targets)} factors")

    def fn(a):
        out = tuple(parse_element(T, S.factors[i].format(a[i])) for T, i in zip(targets, coords))
        return out if hasattr(R, "factors") else out[0]
    return RingMap(S, R, fn, name)


def declare(sc, ctx):
    for k, v in sc.rings.items():
        ctx.rings[k] = _parse_ring(v)
    for k, v in sc.maps.items():
        if not isinstance(v, dict):
            _fail("a map is {source: ..., target: ...}", v)
        S, R = ctx.ring(v.get("source")), ctx.ring(v.get("target"))
        try:
            if "coords" in v:
                f = coordinate_map(S, R, [int(i) for i in v["coords"]], k)
            else:
                f = expression_map(S, R, k, _strip(v.get("substitute")))
            hom = not S.is_finite or f.check_homomorphism()
        except WorkbenchError as e:
            _fail(f"map {k}: {getattr(e, 'message', e)}", v)
        if not hom:
            _fail(f"map {k} is not a ring homomorphism", v)
        ctx.maps[k] = f
    for k, v in sc.ideals.items():
        if not isinstance(v, dict):
            _fail("an ideal is {ring: ..., gens: [...]}", v)
        R = ctx.ring(v.get("ring"))
        ctx.ideals[k] = FGIdeal(R, [_parse_element(R, g) for g in v.get("gens") or []])


# -- module and map descriptions for the almost layer ------------------------------------

_RESIDUE = re.compile(r"^R/\((.*)\)$")
_FREE = re.compile(r"^R\^(\d+)$")
_COKER = re.compile(r"^coker\s*(\[.*\])$")


def _level_for(text, p, n_max):
    """Smallest level at which every exponent in text exists."""
    for N in range(n_max + 1):
        R = MonomialAlgebra(p, N)
        try:
            for piece in re.split(r"[\[\],]", text):
                if piece.strip():
                    parse_element(R, piece.strip())
            return R
        except WorkbenchError:
            continue
    _fail(f"{text!r} needs a level beyond the window", text)


def almost_module(text, setup):
    """0, m, R/m, R^k, R/(a, b, ...) or coker [[...], ...] over the monomial setup."""
    s = str(text).strip()
    R0 = MonomialAlgebra(setup.p, setup.start)
    if s == "0":
        return PresentedModule.zero_module(R0)
    if s == "m":
        return setup.ideal_family()
    if s == "R/m":
        return setup.residue_family()
    m = _FREE.match(s)
    if m:
        return PresentedModule.free(R0, int(m.group(1)))
    m = _RESIDUE.match(s)
    if m:
        R = _level_for(m.group(1), setup.p, setup.n_max)
        gens = [parse_element(R, g) for g in m.group(1).split(",") if g.strip()]
        return PresentedModule(R, 1, [[g] for g in gens])
    m = _COKER.match(s)
    if m:
        R = _level_for(m.group(1), setup.p, setup.n_max)
        rows = json.loads(re.sub(r"([^\[\],\s][^\[\],]*)", lambda g: json.dumps(g.group(1).strip()),
                                 m.group(1)))
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            _fail("coker needs a rectangular matrix", text)
        return PresentedModule(R, len(rows[0]), [[parse_element(R, x) for x in r] for r in rows])
    _fail(f"unknown module {s!r}", text)


def almost_map(text, setup):
    """inclusion (m -> R), identity: M, projection: R/(...), multiply: a (on R)."""
    s = str(text).strip()
    if s == "inclusion":
        return setup.inclusion()
    head, _, rest = s.partition(":")
    rest = rest.strip()
    if head == "identity":
        M = almost_module(rest, setup)
        if isinstance(M, LevelFamily):
            from .modules import FamilyMap
            return FamilyMap.identity(M)
        return M.identity()
    if head == "projection":
        Q = almost_module(rest, setup)
        return ModuleMap(PresentedModule.free(Q.ring, 1), Q, [[Q.ring.one()]])
    if head == "multiply":
        R = _level_for(rest, setup.p, setup.n_max)
        a = parse_element(R, rest)
        F = PresentedModule.free(R, 1)
        return ModuleMap(F, F, [[a]])
    _fail(f"unknown map {s!r}", text)


# -- finite-dimensional descent inputs ----------------------------------------------------------

_FD_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?([A-Za-z][A-Za-z0-9^]*)?")


def parse_fd_element(A, text):
    """Sums of basis names with integer coefficients, e.g. ``x + 2*y^2``."""
    s = str(text).replace(" ", "")
    names = {n: i for i, n in enumerate(A.names)}
    v = [0] * A.dim
    pos = 0
    if not s:
        _fail("empty element", text)
    while pos < len(s):
        m = _FD_TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            _fail(f"cannot read {s[pos:]!r}", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        name = m.group(3) or "1"
        if name not in names:
            _fail(f"{name!r} is not a basis element of {A.name}", text, pos)
        v[names[name]] = (v[names[name]] + sign * c) % A.p
        pos = m.end()
    return v


def descent_module(text, D):
    """A0^r, A0/(a, b, ...) or A0^r/((a1, .., ar), ...)."""
    s = str(text).replace(" ", "")
    A0 = D.A0
    m = re.match(r"^A0(?:\^(\d+))?(?:/\((.*)\))?$", s)
    if not m:
        _fail(f"unknown module {s!r}", text)
    r = int(m.group(1) or 1)
    F = FDModule.free(A0, r)
    if not m.group(2):
        return F
    body = m.group(2)
    if r == 1:
        gens = [parse_fd_element(A0, g) for g in body.split(",")]
    else:
        gens = []
        for tup in re.findall(r"\(([^()]*)\)", body):
            parts = tup.split(",")
            if len(parts) != r:
                _fail(f"expected {r} entries in ({tup})", text)
            vec = []
            for x in parts:
                vec.extend(parse_fd_element(A0, x))
            gens.append(vec)
    if r == 1:
        return cyclic_module(A0, gens)
    M, _ = F.quotient(gens)
    return M


# -- operations ---------------------------------------------------------------------------------

OPS = {}


def op(name):
    def deco(fn):
        OPS[name] = fn
        return fn
    return deco


def _verdict(v, **extra):
    out = {"status": v.status}
    if v.witness is not None:
        w = v.witness
        out["witness"] = w.get("text", _plain(w)) if isinstance(w, dict) else _plain(w)
    if v.window is not None:
        out["window"] = list(v.window)
    out["certificates"] = _plain(v.certificates)
    out.update(extra)
    return out


def _plain(x):
    """JSON-able and deterministic."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@op("criterion")
def op_criterion(ctx, args):
    n = int(args.get("number"))
    if n not in acceptance.CRITERIA:
        _fail(f"no acceptance criterion {n}", args)
    r = acceptance.run_criterion(n)
    return {"status": "PASS" if r.ok else "FAIL", "title": r.title, "details": _plain(r.details)}


@op("ring")
def op_ring(ctx, args):
    R = ctx.ring(args.get("ring"))
    out = {"status": "Ok", "spec": R.spec(), "characteristic": R.characteristic()}
    if R.is_finite:
        out["size"] = R.cardinality()
    if "element" in args:
        out["element"] = R.format(_parse_element(R, args["element"]))
    return out


@op("witt")
def op_witt(ctx, args):
    W = ctx.ring(args.get("ring"))
    if not isinstance(W, WittRing):
        _fail("witt needs a Witt ring", args.get("ring"))
    name = str(args.get("op", "ghost"))
    a = _parse_element(W, args["a"]) if "a" in args else None
    b = _parse_element(W, args["b"]) if "b" in args else None
    if name == "add":
        return {"status": "Ok", "value": W.format(W.add(a, b))}
    if name == "mul":
        return {"status": "Ok", "value": W.format(W.mul(a, b))}
    if name == "ghost":
        return {"status": "Ok", "value": [W.base.format(x) for x in W.ghost(a)]}
    if name == "F":
        return {"status": "Ok", "value": W.shorter().format(W.F(a))}
    if name == "V":
        return {"status": "Ok", "value": W.longer().format(W.V(a))}
    if name == "pr":
        return {"status": "Ok", "value": W.shorter().format(W.truncate(a))}
    if name == "alpha":
        pr, w = W.alpha(a)
        return {"status": "Ok", "value": [W.shorter().format(pr), W.base.format(w)]}
    _fail(f"unknown Witt operation {name!r}", args.get("op"))


@op("alpha_kernel")
def op_alpha_kernel(ctx, args):
    W = ctx.ring(args.get("ring"))
    K = alpha_kernel(W)
    out = {"status": "Ok", "square_zero": K.square_zero, "description": K.description}
    if K.members is not None:
        out["size"] = K.size()
        out["members"] = sorted(W.format(x) for x in K.members)
    return out


@op("witt_perfect")
def op_witt_perfect(ctx, args):
    A = ctx.ring(args.get("ring"))
    length = int(args.get("length", 2))
    v = witt_perfect_check(A, length, int(args["p"]) if "p" in args else None)
    out = {"status": v.status, "image": v.image_size, "target": v.target_size}
    if v.witness is not None:
        out["witness"] = WittRing(A, A.p, length - 1).format(v.witness)
    return out


def _ideal_out(I):
    R = I.ring
    return {"ideal": sorted(R.format(x) for x in I.members) if R.is_finite else None,
            "generators": sorted(R.format(g) for g in I.gens)}


@op("ideal")
def op_ideal(ctx, args):
    R = ctx.ring(args["ring"]) if "ring" in args else None
    I = ctx.ideal(args.get("ideal"), R)
    v = idempotency_check(I)
    b = condition_b_check(I, int(args.get("k", 2)))
    return {"status": v.status, "condition_b": b.status, **_ideal_out(I)}


@op("colimit_ideal")
def op_colimit_ideal(ctx, args):
    p = int(args.get("p", ctx.prime))
    lo, hi = ctx.window
    I = standard_m(p, int(args.get("n_max", hi)), int(args.get("start", lo)))
    v = I.idempotency()
    out = {"status": v.status, "ideal": I.describe(), "certificates": _plain(v.certificates)}
    if "k" in args:
        out["condition_b"] = I.condition_b(int(args["k"])).status
    return out


@op("nilpotent_lift")
def op_nilpotent_lift(ctx, args):
    f = ctx.map(args.get("map"))
    m = ctx.ideal(args.get("ideal"), f.target)
    res = nilpotent_lift(f, m, args.get("nilpotency"))
    return {"status": "Holds", **_ideal_out(res.ideal), "iterations": res.iterations,
            "trace": _plain(res.trace), "certificates": _plain(res.certificates)}


@op("gluing_lift")
def op_gluing_lift(ctx, args):
    f1, f2, g1, g2 = (ctx.map(args.get(k)) for k in ("f1", "f2", "g1", "g2"))
    sq = GluingSquare(f1.source, f1.target, f2.target, g1.target, f1, f2, g1, g2)
    m1 = ctx.ideal(args.get("m1"), sq.A1)
    m2 = ctx.ideal(args.get("m2"), sq.A2)
    res = gluing_lift(sq, m1, m2)
    return {"status": "Holds", **_ideal_out(res.ideal), "iterations": res.iterations,
            "certificates": _plain(res.certificates)}


@op("witt_lift")
def op_witt_lift(ctx, args):
    n = int(args.get("n", 1))
    if str(args.get("ring", "")) == "monomial":
        res = witt_lift_monomial(int(args.get("p", ctx.prime)), n, ctx.window[1])
    else:
        R = ctx.ring(args.get("ring"))
        res = witt_lift(R, ctx.ideal(args.get("ideal"), R), n)
    return _plain(res.to_dict())


@op("almost_zero")
def op_almost_zero(ctx, args):
    S = ctx.setup()
    return _verdict(almost_zero(almost_module(args.get("module"), S), S))


@op("almost_iso")
def op_almost_iso(ctx, args):
    S = ctx.setup()
    return _verdict(almost_iso(almost_map(args.get("map"), S), S))


@op("almost_elements")
def op_almost_elements(ctx, args):
    S = ctx.setup()
    M = almost_module(args.get("module"), S)
    E = almost_elements(M, S, int(args["depth"]) if "depth" in args else None)
    probe = E.torsion_probe()
    rep = E.canonical_report()
    ok = rep["kernel_killed"] and rep["cokernel_killed"]
    return {"status": "Yes" if ok else "No", "module": E.module.describe(), "canonical": _plain(rep),
            "torsion_probe": probe.status}


@op("flatness")
def op_flatness(ctx, args):
    S = ctx.setup()
    return _verdict(flatness_check(almost_module(args.get("module"), S)))


@op("entourage")
def op_entourage(ctx, args):
    S = ctx.setup()
    M = almost_module(args.get("module"), S)
    if isinstance(M, LevelFamily):
        _fail("entourages are checked on a single level", args.get("module"))
    R = M.ring

    def vecs(key):
        return [[_parse_element(R, x) for x in (v if isinstance(v, list) else [v])] for v in args.get(key) or []]
    gens = [_parse_element(R, g) for g in args.get("m0") or []]
    ok = entourage_check(M, vecs("M0"), vecs("M1"), gens)
    return {"status": "Holds" if ok else "Fails"}


@op("almost_fg")
def op_almost_fg(ctx, args):
    S = ctx.setup()
    M = almost_module(args.get("module"), S)
    R = MonomialAlgebra(S.p, int(args.get("level", 1)))
    m0 = FGIdeal(R, [_parse_element(R, g) for g in args.get("m0") or [R.format(R.gen())]])
    return _verdict(almost_fg_check(M, m0))


@op("descent_unit")
def op_descent_unit(ctx, args):
    D = milnor_square(int(args.get("p", ctx.prime)))
    M = descent_module(args.get("module"), D)
    rep = unit_counit_check(M, D)
    flat = fd_flatness(M)
    detail = f"{args.get('module')}: {flat.status}, dim ker = {rep['dim_ker_epsilon']}, " \
        f"dim Tor image = {rep['dim_tor_image']}"
    return {"status": "Iso" if rep["epsilon_iso"] else "NotIso", "flat": flat.status, "detail": detail,
            **_plain(rep)}


@op("descent_datum")
def op_descent_datum(ctx, args):
    p = int(args.get("p", ctx.prime))
    D = milnor_square(p)
    r1, r2 = int(args.get("rank1", 1)), int(args.get("rank2", 1))
    xi = args.get("xi") or [[1 if i == j else 0 for j in range(r1)] for i in range(r1)]
    datum = make_datum(D, FDModule.free(D.A1, r1), FDModule.free(D.A2, r2), [[int(x) % p for x in r] for r in xi])
    rep = counit_check(datum)
    T = glue_T(datum)
    rep.pop("T")
    detail = f"xi = {xi}: T of dim {T.dim}, {fd_flatness(T).status}"
    return {"status": "Iso" if rep["iso"] else "NotIso", "flat": fd_flatness(T).status, "detail": detail,
            **_plain(rep)}


@op("local_flatness")
def op_local_flatness(ctx, args):
    A = ctx.ring(args.get("ring"))
    I = [_parse_element(A, g) for g in args.get("ideal") or []]
    rank = int(args.get("rank", 1))
    rel = [tuple(_parse_element(A, x) for x in (r if isinstance(r, list) else [r])) for r in args.get("relations") or []]
    return _verdict(local_flatness_check(A, I, FiniteModule(A, rank, rel)))


@op("relative_frobenius")
def op_relative_frobenius(ctx, args):
    f = ctx.map(args.get("map"))
    v = relative_frobenius(f)
    out = {"status": v.status}
    if v.witness is not None:
        out["witness"] = f.target.format(v.witness)
    return out


@op("witt_descent")
def op_witt_descent(ctx, args):
    f = ctx.map(args.get("map"))
    rep = witt_descent_check(f, int(args.get("n", 1)))
    return {"status": "Holds" if rep["ok"] else "Fails", **_plain(rep)}


@op("tilt")
def op_tilt(ctx, args):
    R = ctx.ring(args.get("ring"))
    P = int(args.get("precision", 4))
    T = tilt_construct(R, int(args["p"]) if "p" in args else None, P)
    rng = ctx.rng()
    B = T.base
    if B.is_finite:
        samples = B.element_list()
        iso = isomorphism_report(T)
    else:
        samples = [B.gen(), B.one()] + [B.random_element(rng) for _ in range(int(args.get("samples", 3)))]
        iso = isomorphism_report(T, samples)
    out = {"status": "Iso" if iso["iso"] else "NotIso", "tilt": T.spec(), "residue_ring": B.spec(),
           "sequences": [T.format(T.from_root(y)) for y in samples[:8]], "iso": _plain(iso)}
    if isinstance(B, MonomialAlgebra) and B.level >= P:
        out["t_flat"] = T.format(T.t_flat())
        out["detail"] = f"t_flat = {out['t_flat']}"
    else:
        out["detail"] = f"{len(samples)} sequences over {B.spec()}"
    return out


@op("perfection")
def op_perfection(ctx, args):
    A = ctx.ring(args.get("ring"))
    P = perfection(A, int(args.get("window", 4)))
    return {"status": "Perfect", "ring": P.spec(), "certificates": _plain(P.certificates)}


# -- running ------------------------------------------------------------------------------------

@dataclass
class Entry:
    index: int
    op: str
    result: dict
    mismatches: list = field(default_factory=list)
    expected: dict = None


@dataclass
class Report:
    name: str
    entries: list
    error: str = None

    @property
    def exit_code(self):
        if self.error:
            return 2
        return 1 if any(e.mismatches for e in self.entries) else 0

    def to_dict(self):
        return {"scenario": self.name, "error": self.error,
                "checks": [{"index": e.index, "op": e.op, "status": e.result.get("status"),
                            "met": not e.mismatches, "mismatches": e.mismatches, "result": e.result}
                           for e in self.entries]}


def _compare(expected, result):
    out = []
    for k, v in expected.items():
        if k == "__mark__":
            continue
        got = result.get(k)
        want = _strip(v)
        if isinstance(want, list) and isinstance(got, list):
            want, gotn = [str(x) for x in want], [str(x) for x in got]
            if want != gotn:
                out.append((k, want, gotn))
        elif str(want) != str(got) if not isinstance(want, bool) else want is not got:
            out.append((k, want, got))
    return out


def execute(ctx, check):
    fn = OPS[check.op]
    try:
        result = fn(ctx, check.args)
    except ScenarioError:
        raise
    except WorkbenchError as e:
        result = {"status": type(e).__name__, "error": str(e)}
        hyp = getattr(e, "hypothesis", None)
        if hyp:
            result["hypothesis"] = hyp
    return result


def run(sc, prime=None, window=None, depth=None, seed=None):
    st = sc.settings
    ctx = Context(prime=prime or st.get("prime", 2),
                  window=window or tuple(st.get("level_window", (0, 8))),
                  depth=depth or st.get("depth", 6),
                  seed=seed if seed is not None else st.get("seed", 0))
    declare(sc, ctx)
    if sc.parallel and len(sc.checks) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda c: execute(ctx, c), sc.checks))
    else:
        results = [execute(ctx, c) for c in sc.checks]
    entries = []
    for i, (c, r) in enumerate(zip(sc.checks, results), 1):
        e = Entry(i, c.op, r, expected=_strip(c.expect) if c.expect else None)
        if c.expect:
            e.mismatches = [{"field": k, "expected": w, "got": g} for k, w, g in _compare(c.expect, r)]
        entries.append(e)
    return Report(sc.name, entries)


def run_file(path, **kw):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return run(load_scenario(text, str(path)), **kw)


# -- reporting ----------------------------------------------------------------------------------

def _short(result):
    for key in ("detail", "witness", "ideal", "value", "ring", "tilt", "module", "hypothesis", "error"):
        if result.get(key) not in (None, [], ""):
            v = result[key]
            s = ", ".join(map(str, v)) if isinstance(v, list) else str(v)
            return s if len(s) <= 60 else s[:57] + "..."
    return ""


def format_report(report, fmt="table"):
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)
    lines = [f"scenario: {report.name}"]
    if report.entries:
        lines.append(f"{'#':>3}  {'op':<18} {'status':<22} {'expect':<8} detail")
        for e in report.entries:
            mark = "-" if e.expected is None else ("met" if not e.mismatches else "MISMATCH")
            lines.append(f"{e.index:>3}  {e.op:<18} {str(e.result.get('status')):<22} {mark:<8} {_short(e.result)}")
    bad = [e for e in report.entries if e.mismatches]
    lines.append(f"{len(report.entries)} checks, {len(report.entries) - len(bad)} as expected, "
                 f"{len(bad)} mismatched")
    for e in bad:
        lines.append(f"check {e.index} ({e.op}):")
        want = json.dumps({m["field"]: m["expected"] for m in e.mismatches}, indent=1, sort_keys=True)
        got = json.dumps({m["field"]: m["got"] for m in e.mismatches}, indent=1, sort_keys=True)
        lines.extend(difflib.unified_diff(want.splitlines(), got.splitlines(), "expected", "actual", lineterm=""))
    return "\n".join(lines)
