"""Truncated p-typical Witt vectors.

Length convention: a Witt ring of length l has coordinates x_0..x_{l-1}; the
ring written W_n elsewhere has length n + 1, so W_0(R) = R.
"""
import threading
from dataclasses import dataclass, field

from .errors import IndivisibleError, InternalError, LengthError, StructureError, UnsupportedError
from .poly import compile_poly, evaluate_compiled, exact_div_int, poly_ring
from .rings import IntegerRing, MonomialAlgebra, ResidueRing, Ring, RingMap


@dataclass
class WittStructurePolys:
    p: int
    length: int
    ctx: object
    S: list
    P: list
    compiled_S: list = field(default_factory=list)
    compiled_P: list = field(default_factory=list)

    def xs(self):
        return self.ctx.gens()[:self.length]

    def ys(self):
        return self.ctx.gens()[self.length:]


_POLY_CACHE = {}
_F_CACHE = {}
_CACHE_LOCK = threading.Lock()


def ghost_poly(p, i, xs, one):
    return sum((p ** j * xs[j] ** (p ** (i - j)) for j in range(i + 1)), 0 * one)


def gen_structure_polys(p, length):
    """Sum and product polynomials S_i, P_i over Z, by inverting the ghost map.

    S_n = (w_n(x) + w_n(y) - sum_{i<n} p^i S_i^{p^{n-i}}) / p^n, exactly; P likewise.
    """
    if length < 1:
        raise LengthError("Witt length must be at least 1")
    key = (p, length)
    hit = _POLY_CACHE.get(key)
    if hit is not None:
        return hit
    with _CACHE_LOCK:
        hit = _POLY_CACHE.get(key)
        if hit is not None:
            return hit
        names = [f"x{i}" for i in range(length)] + [f"y{i}" for i in range(length)]
        ctx = poly_ring(names)
        gens = ctx.gens()
        xs, ys = gens[:length], gens[length:]
        one = ctx.from_dict({(0,) * (2 * length): 1})
        S, P = [], []
        for n in range(length):
            wx = ghost_poly(p, n, xs, one)
            wy = ghost_poly(p, n, ys, one)
            acc_s, acc_p = wx + wy, wx * wy
            for i in range(n):
                acc_s -= p ** i * S[i] ** (p ** (n - i))
                acc_p -= p ** i * P[i] ** (p ** (n - i))
            try:
                S.append(exact_div_int(acc_s, p ** n))
                P.append(exact_div_int(acc_p, p ** n))
            except IndivisibleError as e:
                raise InternalError(f"Witt polynomial derivation divided inexactly: {e}") from e
        polys = WittStructurePolys(p, length, ctx, S, P,
                                   [compile_poly(f) for f in S], [compile_poly(f) for f in P])
        _POLY_CACHE[key] = polys
        return polys


def frobenius_polys(p, length):
    """F_0..F_{length-2} in x_0..x_{length-1} with w_i(F(x)) = w_{i+1}(x)."""
    if length < 2:
        raise LengthError("Frobenius needs length at least 2")
    key = (p, length)
    hit = _F_CACHE.get(key)
    if hit is not None:
        return hit
    with _CACHE_LOCK:
        ctx = poly_ring([f"x{i}" for i in range(length)])
        xs = ctx.gens()
        one = ctx.from_dict({(0,) * length: 1})
        F = []
        for i in range(length - 1):
            acc = ghost_poly(p, i + 1, xs, one)
            for j in range(i):
                acc -= p ** j * F[j] ** (p ** (i - j))
            try:
                F.append(exact_div_int(acc, p ** i))
            except IndivisibleError as e:
                raise InternalError(f"Frobenius derivation divided inexactly: {e}") from e
        hit = (ctx, F, [compile_poly(f) for f in F])
        _F_CACHE[key] = hit
        return hit


class WittRing(Ring):
    """W(base) of the given length for the prime p; also a Ring in its own right."""

    MEMO_LIMIT = 5000

    def __init__(self, base, p, length):
        if length < 1:
            raise LengthError("Witt length must be at least 1")
        self.base = base
        self.p = p
        self.length = length
        self.is_finite = base.is_finite
        self.polys = gen_structure_polys(p, length)
        self._int_fast = isinstance(base, (IntegerRing, ResidueRing))
        self._memo_add = {}
        self._memo_mul = {}
        self._memo = self.is_finite and base.cardinality() ** length <= self.MEMO_LIMIT

    # Ring interface
    def zero(self):
        z = self.base.zero()
        return (z,) * self.length

    def one(self):
        return self.teichmuller(self.base.one())

    def teichmuller(self, a):
        return (a,) + (self.base.zero(),) * (self.length - 1)

    def _apply(self, polys, compiled, a, b):
        if self._int_fast:
            vals = list(a) + list(b)
            if isinstance(self.base, ResidueRing):
                m = self.base.m
                return tuple(int(f(*vals)) % m for f in polys)
            return tuple(int(f(*vals)) for f in polys)
        R = self.base
        vals = list(a) + list(b)
        powers = {}
        return tuple(evaluate_compiled(c, R, vals, powers) for c in compiled)

    def add(self, a, b):
        if self._memo:
            key = (a, b)
            r = self._memo_add.get(key)
            if r is None:
                r = self._apply(self.polys.S, self.polys.compiled_S, a, b)
                self._memo_add[key] = r
            return r
        return self._apply(self.polys.S, self.polys.compiled_S, a, b)

    def mul(self, a, b):
        if self._memo:
            key = (a, b)
            r = self._memo_mul.get(key)
            if r is None:
                r = self._apply(self.polys.P, self.polys.compiled_P, a, b)
                self._memo_mul[key] = r
            return r
        return self._apply(self.polys.P, self.polys.compiled_P, a, b)

    def neg(self, a):
        if self.p == 2:
            # -1 is not a Teichmuller lift when p = 2
            return self._neg_via_solve(a)
        # for odd p, -1 = [-1] and [-1] * x = (-x_0, -x_1, ...)
        return tuple(self.base.neg(x) for x in a)

    def from_int(self, n):
        n = int(n)
        neg = n < 0
        n = abs(n)
        acc, base = self.zero(), self.one()
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        if neg:
            if self.p == 2:
                acc = self._neg_via_solve(acc)
            else:
                acc = tuple(self.base.neg(x) for x in acc)
        return acc

    def _neg_via_solve(self, a):
        """Additive inverse coordinate by coordinate: solve S(a, b) = 0."""
        R = self.base
        b = list(self.zero())
        for i in range(self.length):
            # S_i(a, b) = a_i + b_i + (terms in lower coordinates); solve for b_i
            trial = tuple(b)
            s = self._apply(self.polys.S[:i + 1], self.polys.compiled_S[:i + 1], a, trial)
            b[i] = R.sub(b[i], s[i])
        return tuple(b)

    def characteristic(self):
        if self.is_finite:
            one = self.one()
            acc, n = one, 1
            while acc != self.zero():
                acc = self.add(acc, one)
                n += 1
            return n
        c = self.base.characteristic()
        return 0 if c == 0 else None

    def spec(self):
        return f"witt{{{self.base.spec()}, p={self.p}, length={self.length}}}"

    def format(self, a):
        return "[" + ", ".join(self.base.format(x) for x in a) + "]"

    def elements(self):
        import itertools
        return itertools.product(self.base.element_list(), repeat=self.length)

    def random_element(self, rng=None):
        return tuple(self.base.random_element(rng) for _ in range(self.length))

    def check_member(self, a):
        if not isinstance(a, tuple) or len(a) != self.length:
            raise StructureError(f"expected a vector of length {self.length}")
        return a

    # Witt operations
    def ghost(self, a):
        """Ghost components w_0..w_{l-1} in the base ring."""
        R, p = self.base, self.p
        out = []
        for i in range(self.length):
            acc = R.zero()
            for j in range(i + 1):
                acc = R.add(acc, R.mul(R.from_int(p ** j), R.power(a[j], p ** (i - j))))
            out.append(acc)
        return out

    def ghost_component(self, a, i):
        R, p = self.base, self.p
        acc = R.zero()
        for j in range(i + 1):
            acc = R.add(acc, R.mul(R.from_int(p ** j), R.power(a[j], p ** (i - j))))
        return acc

    def shorter(self, k=1):
        return WittRing(self.base, self.p, self.length - k)

    def longer(self, k=1):
        return WittRing(self.base, self.p, self.length + k)

    def truncate(self, a):
        if self.length < 2:
            raise LengthError("cannot truncate a length-1 Witt vector")
        return tuple(a[:-1])

    def V(self, a):
        """Verschiebung into the ring of length l + 1."""
        return (self.base.zero(),) + tuple(a)

    def F(self, a):
        """Frobenius into the ring of length l - 1 (ghost shift, specialised from Z)."""
        if self.length < 2:
            raise LengthError("Frobenius needs length at least 2")
        ctx, F, compiled = frobenius_polys(self.p, self.length)
        if self._int_fast:
            vals = list(a)
            if isinstance(self.base, ResidueRing):
                return tuple(int(f(*vals)) % self.base.m for f in F)
            return tuple(int(f(*vals)) for f in F)
        powers = {}
        return tuple(evaluate_compiled(c, self.base, list(a), powers) for c in compiled)

    def alpha(self, a):
        """alpha_n(a) = (pr(a), w_n(a)) with n = length - 1."""
        return self.truncate(a), self.ghost_component(a, self.length - 1)

    def functor(self, f, target_base):
        """W(f) for a ring map f: base -> target_base."""
        W2 = WittRing(target_base, self.p, self.length)
        return RingMap(self, W2, lambda a: tuple(f(x) for x in a), f"W({getattr(f, 'name', 'f')})")


# -- module-level operations ---------------------------------------------------------

def _same(W, a, b):
    if not isinstance(W, WittRing):
        raise StructureError("expected a Witt ring")
    W.check_member(a)
    W.check_member(b)


def witt_add(W, a, b):
    _same(W, a, b)
    return W.add(a, b)


def witt_mul(W, a, b):
    _same(W, a, b)
    return W.mul(a, b)


def ghost(W, a):
    return W.ghost(W.check_member(a))


def witt_F(W, a):
    return W.F(W.check_member(a))


def witt_V(W, a):
    return W.V(W.check_member(a))


def witt_truncate(W, a):
    return W.truncate(W.check_member(a))


def alpha_map(W, a):
    return W.alpha(W.check_member(a))


@dataclass
class AlphaKernel:
    ring: object
    members: list = None
    description: str = ""
    square_zero: bool = False

    def size(self):
        return None if self.members is None else len(self.members)


def alpha_kernel(W):
    """ker(alpha_n) for W of length n + 1 over a finite ring, Z, or a char-p monomial algebra."""
    n = W.length - 1
    if n < 1:
        raise LengthError("alpha_n needs length at least 2")
    R = W.base
    if R.is_finite:
        W1 = W.shorter()
        z1, zR = W1.zero(), R.zero()
        members = [a for a in W.element_list() if W.alpha(a) == (z1, zR)]
        zero = W.zero()
        sq = all(W.mul(a, b) == zero for a in members for b in members)
        return AlphaKernel(W, members, f"V^{n}[Ann(p^{n})] by enumeration", sq)
    if isinstance(R, IntegerRing):
        return AlphaKernel(W, [W.zero()], "zero: Z has no p-torsion", True)
    if isinstance(R, MonomialAlgebra) and R.q == R.p:
        # p = 0 in R, so Ann(p^n) = R and the kernel is V^n(R); V^n(x) V^n(y) = V^n(p^n x y) = 0
        gen = (R.zero(),) * n + (R.one(),)
        x = W.mul(gen, gen)
        sq = x == W.zero()
        return AlphaKernel(W, None, f"V^{n}(R) generated by V^{n}[1]", sq)
    raise UnsupportedError(f"alpha kernel not available over {R.spec()}")


def annihilator_of_p_power(R, n, p=None):
    p = p or R.p
    c = R.from_int(p ** n)
    return [a for a in R.element_list() if R.mul(c, a) == R.zero()]


@dataclass
class PerfectVerdict:
    surjective: bool
    witness: object = None
    image_size: int = 0
    target_size: int = 0

    @property
    def status(self):
        return "Surjective" if self.surjective else "NotSurjective"


def witt_perfect_check(A, length, p=None):
    """Is F: W(A) of the given length onto W(A) of length - 1?  Exhaustive."""
    if not A.is_finite:
        raise UnsupportedError("Witt-perfectness is decided by enumeration; give a finite ring")
    p = p or A.p
    if length < 2:
        raise LengthError("need source length at least 2")
    W = WittRing(A, p, length)
    W1 = W.shorter()
    image = {W.F(a) for a in W.element_list()}
    for b in W1.element_list():
        if b not in image:
            return PerfectVerdict(False, b, len(image), W1.cardinality())
    return PerfectVerdict(True, None, len(image), W1.cardinality())
