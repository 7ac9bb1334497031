"""Concrete commutative rings with canonical element forms.

Elements are plain hashable Python values ("raw" values) whose meaning is
fixed by the owning ring; every ring method returns canonical raw values, so
equality of elements is just ``==``.  ``Ring.__call__`` wraps a raw value in
:class:`Elem`, which carries its ring and supports the usual operators.
"""
import itertools
import math
import random as _random

from .errors import StructureError, UnsupportedError
from .exponents import ExponentQ


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


class Ring:
    is_finite = False
    euclidean = False
    p = None

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def characteristic(self):
        raise NotImplementedError

    def spec(self):
        raise NotImplementedError

    def format(self, a):
        return str(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero()

    def power(self, a, k):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.one(), a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def sum(self, items):
        acc = self.zero()
        for x in items:
            acc = self.add(acc, x)
        return acc

    def elements(self):
        raise UnsupportedError(f"{self.spec()} is not enumerable")

    def cardinality(self):
        if not self.is_finite:
            return math.inf
        return len(self.element_list())

    def element_list(self):
        cached = self.__dict__.get("_element_list")
        if cached is None:
            cached = list(self.elements())
            self._element_list = cached
        return cached

    def index(self, a):
        idx = self.__dict__.get("_element_index")
        if idx is None:
            idx = {x: i for i, x in enumerate(self.element_list())}
            self._element_index = idx
        return idx[a]

    def contains(self, a):
        """Whether a raw value is a canonical element of this ring."""
        if self.is_finite:
            try:
                self.index(a)
            except (KeyError, TypeError):
                return False
        return True

    def is_unit(self, a):
        if self.is_finite:
            one = self.one()
            return any(self.mul(a, b) == one for b in self.element_list())
        raise UnsupportedError(f"unit test not available for {self.spec()}")

    def inverse(self, a):
        if self.is_finite:
            one = self.one()
            for b in self.element_list():
                if self.mul(a, b) == one:
                    return b
            raise ZeroDivisionError(f"{self.format(a)} is not a unit")
        raise UnsupportedError(f"inverse not available for {self.spec()}")

    def random_element(self, rng=None):
        rng = rng or _random
        if self.is_finite:
            return rng.choice(self.element_list())
        raise UnsupportedError(f"no sampler for {self.spec()}")

    def parse(self, text):
        from .parse import parse_element
        return parse_element(self, text)

    def __call__(self, value):
        if isinstance(value, Elem):
            if value.ring != self:
                raise StructureError(f"element of {value.ring.spec()} given to {self.spec()}")
            return value
        if isinstance(value, str):
            return Elem(self, self.parse(value))
        if isinstance(value, int):
            return Elem(self, self.from_int(value))
        return Elem(self, value)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())

    def __repr__(self):
        return self.spec()


class Elem:
    """A raw value bundled with its ring."""
    __slots__ = ("ring", "v")

    def __init__(self, ring, v):
        self.ring = ring
        self.v = v

    def _other(self, other):
        if isinstance(other, Elem):
            if other.ring != self.ring:
                raise StructureError(
                    f"mismatched rings {self.ring.spec()} and {other.ring.spec()}")
            return other.v
        if isinstance(other, int):
            return self.ring.from_int(other)
        raise StructureError(f"cannot combine {type(other).__name__} with a ring element")

    def __add__(self, other):
        return Elem(self.ring, self.ring.add(self.v, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ring, self.ring.sub(self.v, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub(self._other(other), self.v))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.mul(self.v, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.v))

    def __pow__(self, k):
        return Elem(self.ring, self.ring.power(self.v, k))

    def __eq__(self, other):
        if isinstance(other, (Elem, int)):
            try:
                return self.v == self._other(other)
            except StructureError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.spec(), self.v))

    def __str__(self):
        return self.ring.format(self.v)

    def __repr__(self):
        return f"{self.ring.format(self.v)} in {self.ring.spec()}"


# -- integers and residues ------------------------------------------------------

class IntegerRing(Ring):
    euclidean = True

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return int(n)

    def characteristic(self):
        return 0

    def spec(self):
        return "integers"

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in the integers")

    def random_element(self, rng=None):
        rng = rng or _random
        return rng.randint(-50, 50)

    # Euclidean structure
    def euclid_norm(self, a):
        return abs(a)

    def euclid_divmod(self, a, b):
        q, r = divmod(a, b)
        return q, r

    def unit_normal(self, a):
        """(normalised a, unit u) with a = u * normalised."""
        return (-a, -1) if a < 0 else (a, 1)


class ResidueRing(Ring):
    is_finite = True

    def __init__(self, m):
        m = int(m)
        if m < 2:
            raise StructureError("residue modulus must be at least 2")
        self.m = m
        if _is_prime(m):
            self.p = m
        else:
            for q in range(2, m + 1):
                if m % q == 0:
                    while m % q == 0:
                        m //= q
                    if m == 1:
                        self.p = q
                    break

    def zero(self):
        return 0

    def one(self):
        return 1 % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def from_int(self, n):
        return int(n) % self.m

    def characteristic(self):
        return self.m

    def spec(self):
        return f"residue{{{self.m}}}"

    def elements(self):
        return iter(range(self.m))

    def is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def inverse(self, a):
        return pow(a, -1, self.m)

    def random_element(self, rng=None):
        rng = rng or _random
        return rng.randrange(self.m)


# -- dense polynomial helpers over F_p ----------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def pdivmod(a, b, p):
    """Division with remainder of dense coefficient lists over F_p."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = (r[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] - c * bj) % p
    return _trim(q), _trim(r[:len(b) - 1])


# -- monomial algebras ------------------------------------------------------------

class MonomialAlgebra(Ring):
    """(Z/q)[t^{1/p^N}] with an optional monomial truncation t^c = 0.

    Raw elements are sorted tuples ((k, c), ...) meaning sum c * t^{k/p^N}.
    The coefficient modulus q defaults to p (the field F_p).
    """

    def __init__(self, p, level=0, quotient=None, coeff=None, var="t"):
        if not _is_prime(p):
            raise StructureError(f"{p} is not prime")
        if level < 0:
            raise StructureError("level must be nonnegative")
        self.p = p
        self.level = level
        self.q = coeff or p
        r = self.q
        while r % p == 0:
            r //= p
        if r != 1:
            raise StructureError("coefficient modulus must be a power of p")
        self.var = var
        if quotient is not None and not isinstance(quotient, ExponentQ):
            if isinstance(quotient, (list, tuple)):
                exps = [e if isinstance(e, ExponentQ) else ExponentQ.parse(e, p) for e in quotient]
                quotient = min(exps) if exps else None
            else:
                quotient = ExponentQ.parse(quotient, p)
        self.quotient = quotient
        self.cut = None if quotient is None else quotient.ceil_at_level(level)
        self.is_finite = self.cut is not None
        self.euclidean = self.cut is None and self.q == p

    # construction helpers
    def at_level(self, level):
        return MonomialAlgebra(self.p, level, self.quotient, self.q, self.var)

    def with_coeff(self, q):
        return MonomialAlgebra(self.p, self.level, self.quotient, q, self.var)

    def _canon(self, terms):
        acc = {}
        for k, c in terms:
            if self.cut is not None and k >= self.cut:
                continue
            acc[k] = (acc.get(k, 0) + c) % self.q
        return tuple(sorted((k, c) for k, c in acc.items() if c))

    def zero(self):
        return ()

    def one(self):
        return self._canon([(0, 1)])

    def from_int(self, n):
        return self._canon([(0, int(n))])

    def add(self, a, b):
        return self._canon(itertools.chain(a, b))

    def neg(self, a):
        return self._canon((k, -c) for k, c in a)

    def mul(self, a, b):
        acc = {}
        cut, q = self.cut, self.q
        for k1, c1 in a:
            for k2, c2 in b:
                k = k1 + k2
                if cut is not None and k >= cut:
                    continue
                acc[k] = (acc.get(k, 0) + c1 * c2) % q
        return tuple(sorted((k, c) for k, c in acc.items() if c))

    def characteristic(self):
        if self.cut == 0:
            return 1
        return self.q

    def monomial(self, e, c=1):
        if not isinstance(e, ExponentQ):
            e = ExponentQ.parse(e, self.p)
        k = e.at_level(self.level)
        if k is None:
            raise StructureError(f"t^{e} does not exist at level {self.level}")
        return self._canon([(k, c)])

    def gen(self):
        """s_N = t^{1/p^N}."""
        return self._canon([(1, 1)])

    def exponent(self, k):
        return ExponentQ.make(k, self.level, self.p)

    def min_exponent(self, a):
        return self.exponent(a[0][0]) if a else None

    def embed(self, a, levels=1):
        """Level embedding into level N + levels; same rational exponents."""
        f = self.p ** levels
        return self.at_level(self.level + levels)._canon((k * f, c) for k, c in a)

    def frobenius(self, a):
        if self.q != self.p:
            raise UnsupportedError(f"{self.spec()} does not have characteristic {self.p}")
        # coefficients are fixed by c -> c^p in F_p; cross terms vanish
        return self._canon((k * self.p, c) for k, c in a)

    def spec(self):
        parts = [f"p={self.p}", f"level={self.level}"]
        if self.quotient is not None:
            parts.append(f"quotient=[{self.var}^{self.quotient}]")
        if self.q != self.p:
            parts.append(f"coeff={self.q}")
        if self.var != "t":
            parts.append(f"var={self.var}")
        return "monomial_algebra{" + ", ".join(parts) + "}"

    def format(self, a):
        if not a:
            return "0"
        out = []
        for k, c in a:
            e = self.exponent(k)
            if e.is_zero():
                mono = ""
            elif e.dexp == 0 and e.num == 1:
                mono = self.var
            elif e.dexp == 0:
                mono = f"{self.var}^{e.num}"
            else:
                mono = f"{self.var}^({e})"
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out)

    def elements(self):
        if self.cut is None:
            raise UnsupportedError(f"{self.spec()} is infinite")
        for coeffs in itertools.product(range(self.q), repeat=self.cut):
            yield tuple((k, c) for k, c in enumerate(coeffs) if c)

    def random_element(self, rng=None, degree=None):
        rng = rng or _random
        if self.is_finite:
            return self._canon((k, rng.randrange(self.q)) for k in range(self.cut))
        degree = degree if degree is not None else 2 * self.p ** self.level
        return self._canon((rng.randrange(degree + 1), rng.randrange(self.q))
                           for _ in range(rng.randrange(4)))

    # dense view in the variable s_N
    def to_dense(self, a):
        if not a:
            return []
        out = [0] * (a[-1][0] + 1)
        for k, c in a:
            out[k] = c
        return out

    def from_dense(self, coeffs):
        return self._canon(enumerate(coeffs))

    def degree(self, a):
        return a[-1][0] if a else -1

    def is_unit(self, a):
        if not a:
            return False
        if self.cut is not None or self.q != self.p:
            # local ring: units are elements with unit constant term,
            # provided every positive monomial is nilpotent (truncated) or q = p^k with F_p-coefficients
            if self.cut is None and len(a) > 1:
                return False
            return a[0][0] == 0 and a[0][1] % self.p != 0
        return len(a) == 1 and a[0][0] == 0

    def inverse(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{self.format(a)} is not a unit")
        if self.cut is None and len(a) == 1:
            return self._canon([(0, pow(a[0][1], -1, self.q))])
        # geometric series for (c(1 - n))^{-1} with n nilpotent
        c0 = a[0][1]
        ci = pow(c0, -1, self.q)
        n = self.sub(self.one(), self.mul(a, self.from_int(ci)))
        inv, term = self.one(), self.one()
        for _ in range(max(self.cut or 1, 1) * self.q):
            term = self.mul(term, n)
            if not term:
                break
            inv = self.add(inv, term)
        return self.mul(inv, self.from_int(ci))

    # Euclidean structure on F_p[s_N]
    def euclid_norm(self, a):
        return self.degree(a) + 1

    def euclid_divmod(self, a, b):
        if not self.euclidean:
            raise UnsupportedError(f"{self.spec()} is not a Euclidean domain")
        q, r = pdivmod(self.to_dense(a), self.to_dense(b), self.p)
        return self.from_dense(q), self.from_dense(r)

    def unit_normal(self, a):
        if not a:
            return a, self.one()
        lead = a[-1][1]
        inv = pow(lead, -1, self.p)
        return self.mul(a, self.from_int(inv)), self.from_int(lead)


# -- products, quotients, subrings -----------------------------------------------

class ProductRing(Ring):
    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise StructureError("a product ring needs at least one factor")
        self.factors = factors
        self.is_finite = all(R.is_finite for R in factors)
        ps = {R.p for R in factors}
        self.p = ps.pop() if len(ps) == 1 else None

    def zero(self):
        return tuple(R.zero() for R in self.factors)

    def one(self):
        return tuple(R.one() for R in self.factors)

    def add(self, a, b):
        return tuple(R.add(x, y) for R, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(R.neg(x) for R, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(R.mul(x, y) for R, x, y in zip(self.factors, a, b))

    def from_int(self, n):
        return tuple(R.from_int(n) for R in self.factors)

    def characteristic(self):
        c = 1
        for R in self.factors:
            k = R.characteristic()
            if k == 0:
                return 0
            c = c * k // math.gcd(c, k)
        return c

    def spec(self):
        return "product{" + ", ".join(R.spec() for R in self.factors) + "}"

    def format(self, a):
        return "(" + ", ".join(R.format(x) for R, x in zip(self.factors, a)) + ")"

    def elements(self):
        return itertools.product(*[R.element_list() for R in self.factors])

    def is_unit(self, a):
        return all(R.is_unit(x) for R, x in zip(self.factors, a))

    def inverse(self, a):
        return tuple(R.inverse(x) for R, x in zip(self.factors, a))

    def random_element(self, rng=None):
        return tuple(R.random_element(rng) for R in self.factors)

    def projection(self, i):
        return RingMap(self, self.factors[i], lambda a, i=i: a[i], f"pr{i}")


class QuotientRing(Ring):
    """base / (gens).  Finite bases use coset representatives; Euclidean
    bases reduce modulo the gcd of the generators."""

    def __init__(self, base, gens):
        self.base = base
        self.gens = [g if not isinstance(g, Elem) else g.v for g in gens]
        self.p = base.p
        if base.euclidean:
            g = base.zero()
            for x in self.gens:
                g = euclid_gcd(base, g, x)
            self.modulus = g
            if g == base.zero():
                self.is_finite = False
            elif isinstance(base, IntegerRing):
                self.is_finite = True
            else:
                self.is_finite = True
            self._rep = None
        elif base.is_finite:
            self.is_finite = True
            from .ideals import span_ideal
            ideal = span_ideal(base, self.gens)
            self.ideal_members = ideal
            rep = {}
            for x in base.element_list():
                if x in rep:
                    continue
                for i in ideal:
                    rep[base.add(x, i)] = x
            self._rep = rep
        else:
            raise UnsupportedError(f"quotients of {base.spec()} are not supported")
        if base.characteristic() == 0 and base.euclidean and self.modulus != 0:
            n = abs(self.modulus)
            self.p = ResidueRing(n).p if n >= 2 else None

    def reduce(self, a):
        if self._rep is not None:
            return self._rep[a]
        if self.modulus == self.base.zero():
            return a
        if self.base.is_unit(self.modulus):
            return self.base.zero()
        return self.base.euclid_divmod(a, self.modulus)[1]

    def zero(self):
        return self.reduce(self.base.zero())

    def one(self):
        return self.reduce(self.base.one())

    def add(self, a, b):
        return self.reduce(self.base.add(a, b))

    def neg(self, a):
        return self.reduce(self.base.neg(a))

    def mul(self, a, b):
        return self.reduce(self.base.mul(a, b))

    def from_int(self, n):
        return self.reduce(self.base.from_int(n))

    def characteristic(self):
        if self.is_finite:
            one = self.one()
            acc, n = one, 1
            while acc != self.zero():
                acc = self.add(acc, one)
                n += 1
            return n
        return self.base.characteristic()

    def spec(self):
        return "quotient{" + self.base.spec() + ", [" + ", ".join(
            self.base.format(g) for g in self.gens) + "]}"

    def format(self, a):
        return self.base.format(a)

    def elements(self):
        if self._rep is not None:
            seen = []
            for x in self.base.element_list():
                if self._rep[x] == x:
                    seen.append(x)
            return iter(seen)
        if not self.is_finite:
            raise UnsupportedError(f"{self.spec()} is infinite")
        if isinstance(self.base, IntegerRing):
            return iter(range(abs(self.modulus)))
        d = self.base.degree(self.modulus)
        return (self.base.from_dense(c) for c in itertools.product(range(self.base.p), repeat=d))

    def projection(self):
        return RingMap(self.base, self, self.reduce, "quotient")

    def random_element(self, rng=None):
        if self.is_finite:
            return Ring.random_element(self, rng)
        return self.reduce(self.base.random_element(rng))


class SubRing(Ring):
    """A finite subring of a finite ambient ring, given by its members."""

    def __init__(self, ambient, members, name=None):
        self.ambient = ambient
        order = {x: i for i, x in enumerate(ambient.element_list())}
        self.members = sorted(set(members), key=order.__getitem__)
        self._set = frozenset(self.members)
        self.is_finite = True
        self.p = ambient.p
        self.name = name
        for x in (ambient.zero(), ambient.one()):
            if x not in self._set:
                raise StructureError("subring must contain 0 and 1")

    def zero(self):
        return self.ambient.zero()

    def one(self):
        return self.ambient.one()

    def _check(self, x):
        if x not in self._set:
            raise StructureError("result left the subring; members are not closed")
        return x

    def add(self, a, b):
        return self._check(self.ambient.add(a, b))

    def neg(self, a):
        return self._check(self.ambient.neg(a))

    def mul(self, a, b):
        return self._check(self.ambient.mul(a, b))

    def from_int(self, n):
        return self._check(self.ambient.from_int(n))

    def characteristic(self):
        return self.ambient.characteristic()

    def elements(self):
        return iter(self.members)

    def spec(self):
        if self.name:
            return self.name
        return f"subring{{{self.ambient.spec()}, size={len(self.members)}}}"

    def format(self, a):
        return self.ambient.format(a)

    def is_closed(self):
        S = self._set
        A = self.ambient
        return all(A.add(a, b) in S and A.mul(a, b) in S for a in S for b in S) and all(
            A.neg(a) in S for a in S)


def fiber_product(R1, R2, g1, g2, name=None):
    """R1 x_{R3} R2 for maps g1: R1 -> R3, g2: R2 -> R3 of finite rings."""
    P = ProductRing([R1, R2])
    members = [(a, b) for a in R1.element_list() for b in R2.element_list() if g1(a) == g2(b)]
    return SubRing(P, members, name=name)


# -- ring maps ------------------------------------------------------------------------

class RingMap:
    def __init__(self, source, target, fn, name="f"):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, a):
        if isinstance(a, Elem):
            return Elem(self.target, self.fn(a.v))
        return self.fn(a)

    def compose(self, other):
        """self o other."""
        return RingMap(other.source, self.target, lambda a: self.fn(other.fn(a)),
                       f"{self.name}.{other.name}")

    def image(self):
        return {self.fn(a) for a in self.source.element_list()}

    def kernel(self):
        z = self.target.zero()
        return [a for a in self.source.element_list() if self.fn(a) == z]

    def is_surjective(self):
        return self.image() == set(self.target.element_list())

    def check_homomorphism(self, samples=None, rng=None):
        """Exhaustive on finite sources (or on the given samples)."""
        S, T = self.source, self.target
        if samples is None:
            if not S.is_finite:
                rng = rng or _random.Random(0)
                samples = [S.random_element(rng) for _ in range(30)]
            else:
                samples = S.element_list()
        f = self.fn
        if f(S.one()) != T.one():
            return False
        for a in samples:
            fa = f(a)
            for b in samples:
                if f(S.add(a, b)) != T.add(fa, f(b)) or f(S.mul(a, b)) != T.mul(fa, f(b)):
                    return False
        return True


def identity_map(R):
    return RingMap(R, R, lambda a: a, "id")


def euclid_gcd(R, a, b):
    while b != R.zero():
        a, b = b, R.euclid_divmod(a, b)[1]
    return R.unit_normal(a)[0] if a != R.zero() else a


def euclid_xgcd(R, a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g unit-normalised."""
    x0, y0, x1, y1 = R.one(), R.zero(), R.zero(), R.one()
    while b != R.zero():
        q, r = R.euclid_divmod(a, b)
        a, b = b, r
        x0, x1 = x1, R.sub(x0, R.mul(q, x1))
        y0, y1 = y1, R.sub(y0, R.mul(q, y1))
    if a == R.zero():
        return a, x0, y0
    g, u = R.unit_normal(a)
    ui = R.inverse(u)
    return g, R.mul(x0, ui), R.mul(y0, ui)


def euclid_divides(R, a, b):
    """a | b."""
    if a == R.zero():
        return b == R.zero()
    return R.euclid_divmod(b, a)[1] == R.zero()


FIELDS = {}


def finite_field(p, m=1):
    """F_{p^m} as a quotient of F_p[s] by a fixed irreducible polynomial."""
    if m == 1:
        return ResidueRing(p)
    key = (p, m)
    if key not in FIELDS:
        base = MonomialAlgebra(p, 0, var="s")
        for tail in itertools.product(range(p), repeat=m):
            f = list(tail) + [1]
            if f[0] == 0:
                continue
            if all(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p for x in range(p)) and (
                    m <= 3 or _irreducible(f, p)):
                FIELDS[key] = QuotientRing(base, [base.from_dense(f)])
                break
    return FIELDS[key]


def _irreducible(f, p):
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            if not pdivmod(f, g, p)[1]:
                return False
    return True
