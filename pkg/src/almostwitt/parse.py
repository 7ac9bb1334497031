"""Text format for rings and their elements.

Rings::

    integers
    residue{4}
    field{p=2, m=2}
    monomial_algebra{p=2, level=3, quotient=[t^1], coeff=4, var=t}
    product{residue{4}, residue{4}}
    quotient{monomial_algebra{p=2, level=0, var=s}, [1 + s + s^2]}
    witt{residue{2}, length=2}

Elements are sums of products of integers and powers of the variable, e.g.
``1 + t^(1/2) + 3*t^2``; product-ring elements are tuples ``(a, b)`` and
Witt vectors are bracketed coordinate lists ``[a, b, c]``.
"""
import re

from .errors import ParseError, StructureError
from .exponents import ExponentQ
from .rings import (IntegerRing, MonomialAlgebra, ProductRing, QuotientRing, ResidueRing,
                    SubRing, finite_field)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self):
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def name(self):
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z_0-9]*").match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group()

    def balanced(self, closers=",]}"):
        """Raw substring up to the next top-level closer."""
        self.skip()
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                if depth == 0:
                    break
                depth -= 1
            elif ch in closers and depth == 0:
                break
            self.pos += 1
        return self.text[start:self.pos].strip(), start

    def done(self):
        self.skip()
        if self.pos != len(self.text):
            self.error("unexpected trailing text")


def parse_ring(text):
    cur = _Cursor(text)
    R = _ring(cur)
    cur.done()
    return R


def _ring(cur):
    name = cur.name()
    if name in ("integers", "ZZ"):
        return IntegerRing()
    if name == "residue":
        cur.expect("{")
        m = cur.integer()
        cur.expect("}")
        try:
            return ResidueRing(m)
        except StructureError as e:
            cur.error(str(e))
    if name == "field":
        kv = _kvs(cur)
        return finite_field(int(kv["p"][0]), int(kv.get("m", ("1",))[0]))
    if name == "monomial_algebra":
        kv = _kvs(cur)
        try:
            p = int(kv["p"][0])
        except KeyError:
            cur.error("monomial_algebra needs p")
        var = kv.get("var", ("t",))[0]
        quotient = None
        if "quotient" in kv:
            exps = [_monomial_exponent(g, var, p, cur) for g in kv["quotient"][1]]
            quotient = min(exps) if exps else None
        try:
            return MonomialAlgebra(p, int(kv.get("level", ("0",))[0]), quotient,
                                   int(kv["coeff"][0]) if "coeff" in kv else None, var)
        except StructureError as e:
            cur.error(str(e))
    if name == "product":
        cur.expect("{")
        factors = [_ring(cur)]
        while cur.accept(","):
            factors.append(_ring(cur))
        cur.expect("}")
        return ProductRing(factors)
    if name == "quotient":
        cur.expect("{")
        base = _ring(cur)
        cur.expect(",")
        gens = [parse_element(base, g) for g in _bracket_list(cur)]
        cur.expect("}")
        return QuotientRing(base, gens)
    if name == "witt":
        from .witt import WittRing
        cur.expect("{")
        base = _ring(cur)
        kv = {}
        while cur.accept(","):
            k = cur.name()
            cur.expect("=")
            kv[k] = cur.integer()
        cur.expect("}")
        p = kv.get("p", base.p)
        if p is None:
            cur.error("witt ring needs p")
        return WittRing(base, p, kv.get("length", 1))
    cur.error(f"unknown ring constructor {name!r}")


def _bracket_list(cur):
    cur.expect("[")
    items = []
    if cur.accept("]"):
        return items
    while True:
        item, _ = cur.balanced()
        items.append(item)
        if cur.accept("]"):
            return items
        cur.expect(",")


def _kvs(cur):
    cur.expect("{")
    out = {}
    if cur.accept("}"):
        return out
    while True:
        k = cur.name()
        cur.expect("=")
        if cur.peek() == "[":
            out[k] = (None, _bracket_list(cur))
        else:
            v, _ = cur.balanced(",}")
            out[k] = (v, None)
        if cur.accept("}"):
            return out
        cur.expect(",")


def _monomial_exponent(text, var, p, cur):
    m = re.fullmatch(r"\s*%s\s*(?:\^\s*\(?\s*(\d+)\s*(?:/\s*(\d+))?\s*\)?)?\s*" % re.escape(var), text)
    if not m:
        cur.error(f"quotient generator {text!r} is not a monomial in {var}")
    num = int(m.group(1) or 1)
    den = int(m.group(2) or 1)
    return ExponentQ.parse(f"{num}/{den}", p)


# -- elements ---------------------------------------------------------------------

def _var_ring(R):
    while True:
        if isinstance(R, MonomialAlgebra):
            return R
        if isinstance(R, QuotientRing):
            R = R.base
        elif isinstance(R, SubRing):
            R = R.ambient
        else:
            return None


def parse_element(R, text):
    cur = _Cursor(str(text))
    v = _expr(cur, R)
    cur.done()
    return v


def _lift_into(R, v, src):
    """Map a value parsed in src (a base of R) into R."""
    if src is R:
        return v
    if isinstance(R, QuotientRing):
        return R.reduce(_lift_into(R.base, v, src))
    if isinstance(R, SubRing):
        v = _lift_into(R.ambient, v, src)
        if v not in R._set:
            raise StructureError("element is not in the subring")
        return v
    return v


def _expr(cur, R):
    neg = cur.accept("-")
    v = _term(cur, R)
    if neg:
        v = R.neg(v)
    while True:
        if cur.accept("+"):
            v = R.add(v, _term(cur, R))
        elif cur.peek() == "-":
            cur.pos += 1
            v = R.sub(v, _term(cur, R))
        else:
            return v


def _term(cur, R):
    v = _factor(cur, R)
    while cur.accept("*"):
        v = R.mul(v, _factor(cur, R))
    return v


def _factor(cur, R):
    if cur.accept("-"):
        return R.neg(_factor(cur, R))
    ch = cur.peek()
    from .witt import WittRing
    if ch.isdigit():
        v = R.from_int(cur.integer())
    elif ch == "[":
        if not isinstance(R, WittRing):
            cur.error(f"bracketed vectors need a Witt ring, not {R.spec()}")
        cur.pos += 1
        coords = []
        while True:
            coords.append(_expr(cur, R.base))
            if cur.accept("]"):
                break
            cur.expect(",")
        if len(coords) != R.length:
            cur.error(f"expected {R.length} coordinates, got {len(coords)}")
        v = tuple(coords)
    elif ch == "(":
        cur.pos += 1
        if isinstance(R, ProductRing):
            comps = []
            for i, F in enumerate(R.factors):
                comps.append(_expr(cur, F))
                if i < len(R.factors) - 1:
                    cur.expect(",")
            cur.expect(")")
            v = tuple(comps)
        else:
            v = _expr(cur, R)
            cur.expect(")")
    elif ch.isalpha():
        start = cur.pos
        name = cur.name()
        base = _var_ring(R)
        if base is None or name != base.var:
            cur.pos = start
            cur.error(f"unknown symbol {name!r} for {R.spec()}")
        if cur.accept("^"):
            paren = cur.accept("(")
            num = cur.integer()
            den = 1
            if cur.accept("/"):
                den = cur.integer()
            if paren:
                cur.expect(")")
            try:
                e = ExponentQ.parse(f"{num}/{den}", base.p)
                mono = base.monomial(e)
            except (ValueError, StructureError) as exc:
                cur.error(str(exc))
        else:
            mono = base.gen() if base.level == 0 else base.monomial(ExponentQ.make(1, 0, base.p))
        return _lift_into(R, mono, base)
    else:
        cur.error("expected a number, variable, or bracket")
    if cur.accept("^"):
        v = R.power(v, cur.integer())
    return v
