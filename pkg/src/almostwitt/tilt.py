"""Colimit perfection of characteristic-p rings and finite-precision tilts.

The tilt at precision P consists of sequences (x_0, ..., x_P) in R/p with
x_{i+1}^p = x_i.  Such a sequence is determined by x_P, so the precision-P
tilt is a ring isomorphic to R/p through its last coordinate; ``sharp`` reads
off x_0.
"""
from dataclasses import dataclass, field

from .errors import PrecisionError, PreconditionError, StructureError, UnsupportedError
from .exponents import ExponentQ
from .rings import MonomialAlgebra, QuotientRing, ResidueRing, Ring


# -- perfection -------------------------------------------------------------------

@dataclass
class PerfectionSpec:
    """A perfect ring, possibly read through a level window.

    For F_p[s^{1/p^inf}] the window ``levels`` lists the monomial algebras
    that are materialised; ``ring`` is the finest of them.
    """
    source: object
    ring: Ring
    levels: tuple = None
    certificates: list = field(default_factory=list)

    def spec(self):
        if self.levels:
            base = MonomialAlgebra(self.ring.p, 0, None, None, self.ring.var)
            return f"perfection{{{base.spec()}, window={self.levels[0]}..{self.levels[1]}}}"
        return self.ring.spec()

    def frobenius_bijective(self):
        return _frobenius_bijective(self)


def perfection(A, window=4):
    """Colimit of A -> A -> ... along Frobenius.

    A monomial algebra without quotient gains all p-power roots of its
    variable (read up to ``window`` extra levels); quotient monomials are
    nilpotent and die; a finite ring becomes A / nilradical.
    """
    if isinstance(A, PerfectionSpec):
        return A
    p = A.characteristic()
    if p == 0:
        raise PreconditionError(f"{A.spec()} has characteristic 0", "characteristic p")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise PreconditionError(f"characteristic {p} is not prime", "characteristic p")
    if isinstance(A, MonomialAlgebra):
        if A.q != A.p:
            raise PreconditionError(f"{A.spec()} does not have characteristic {A.p}", "characteristic p")
        if A.cut is None:
            top = MonomialAlgebra(A.p, A.level + window, None, None, A.var)
            out = PerfectionSpec(A, top, (A.level, A.level + window))
            out.certificates = _frobenius_bijective(out)
            return out
        # every positive monomial is nilpotent, so the reduced quotient is F_p
        F = ResidueRing(A.p)
        out = PerfectionSpec(A, F, None, [{"nilradical": f"({A.format(A.gen())})", "quotient": F.spec()}])
        out.certificates += _frobenius_bijective(out)
        return out
    if not A.is_finite:
        raise UnsupportedError(f"perfection of {A.spec()} is not implemented")
    nil = [a for a in A.element_list() if _is_nilpotent(A, a)]
    if len(nil) == 1:
        red = A
    else:
        red = QuotientRing(A, nil)
        if len(red.element_list()) == p:
            red = ResidueRing(p)
    out = PerfectionSpec(A, red, None, [{"nilradical_size": len(nil)}])
    out.certificates += _frobenius_bijective(out)
    return out


def _is_nilpotent(A, a):
    x = a
    for _ in range(len(A.element_list()) + 1):
        if x == A.zero():
            return True
        x = A.mul(x, a)
    return x == A.zero()


def _frobenius_bijective(spec):
    R = spec.ring
    p = R.characteristic()
    if spec.levels:
        lo, hi = spec.levels
        certs = []
        for N in range(lo, hi):
            RN, RM = MonomialAlgebra(p, N, None, None, R.var), MonomialAlgebra(p, N + 1, None, None, R.var)
            root = RM.gen()
            if RM.frobenius(root) != RN.embed(RN.gen()):
                raise StructureError("root of the generator is missing")
            certs.append({"level": N, "root_of": RN.format(RN.gen()), "root": RM.format(root)})
        # F_p[s] is a domain, so Frobenius is injective
        certs.append({"injective": "reduced (domain)"})
        return certs
    elems = R.element_list()
    img = {R.power(a, p) for a in elems}
    if len(img) != len(elems):
        raise StructureError(f"Frobenius is not bijective on {R.spec()}")
    return [{"frobenius_bijective": True, "size": len(elems)}]


# -- tilting --------------------------------------------------------------------------

@dataclass(frozen=True)
class TiltElement:
    seq: tuple
    precision: int


def reduce_mod_p(R, p):
    """(R/p, reduction map)."""
    if R.characteristic() == p:
        return R, (lambda a: a)
    if isinstance(R, ResidueRing):
        F = ResidueRing(p)
        return F, F.from_int
    if isinstance(R, MonomialAlgebra):
        S = R.with_coeff(p)
        return S, S._canon
    if R.is_finite:
        Q = QuotientRing(R, [R.from_int(p)])
        return Q, Q.reduce
    raise UnsupportedError(f"cannot reduce {R.spec()} modulo {p}")


class TiltRing:
    """R^flat at precision P: compatible p-power sequences in R/p."""

    def __init__(self, R, p, precision):
        if precision < 0:
            raise ValueError("precision is nonnegative")
        self.R = R
        self.p = p
        self.precision = precision
        self.base, self.reduce = reduce_mod_p(R, p)

    def check(self, x):
        B = self.base
        for i in range(len(x.seq) - 1):
            if B.power(x.seq[i + 1], self.p) != x.seq[i]:
                return False
        return True

    def element(self, seq):
        x = TiltElement(tuple(seq), len(seq) - 1)
        if not self.check(x):
            raise StructureError("sequence is not compatible with Frobenius")
        return x

    def from_root(self, y, precision=None):
        """(y^{p^P}, ..., y^p, y): the element whose last coordinate is y."""
        P = self.precision if precision is None else precision
        B = self.base
        seq = [y]
        for _ in range(P):
            seq.append(B.power(seq[-1], self.p))
        return TiltElement(tuple(reversed(seq)), P)

    def last(self, x):
        return x.seq[-1]

    def sharp(self, x):
        return x.seq[0]

    def zero(self):
        return self.from_root(self.base.zero())

    def one(self):
        return self.from_root(self.base.one())

    def mul(self, x, y):
        P = min(x.precision, y.precision)
        B = self.base
        return TiltElement(tuple(B.mul(a, b) for a, b in zip(x.seq[:P + 1], y.seq[:P + 1])), P)

    def add(self, x, y):
        """(x + y)_i = (x_{i+1} + y_{i+1})^p; the top index is consumed."""
        P = min(x.precision, y.precision)
        if P < 1:
            raise PrecisionError("tilt addition needs precision at least 1")
        B = self.base
        seq = tuple(B.power(B.add(x.seq[i + 1], y.seq[i + 1]), self.p) for i in range(P))
        return TiltElement(seq, P - 1)

    def neg(self, x):
        B = self.base
        if self.p == 2:
            return x
        return TiltElement(tuple(B.neg(a) for a in x.seq), x.precision)

    def truncate(self, x, P):
        if P > x.precision:
            raise PrecisionError(f"element known to precision {x.precision}, asked for {P}")
        return TiltElement(x.seq[:P + 1], P)

    def equal(self, x, y):
        """Equality on the common precision."""
        P = min(x.precision, y.precision)
        return x.seq[:P + 1] == y.seq[:P + 1]

    def elements(self):
        """All elements (finite R/p): one per choice of the last coordinate."""
        return [self.from_root(y) for y in self.base.element_list()]

    def format(self, x):
        return "(" + ", ".join(self.base.format(a) for a in x.seq) + ")"

    def spec(self):
        return f"tilt{{{self.R.spec()}, p={self.p}, precision={self.precision}}}"

    def t_flat(self):
        """t^flat = (t, t^{1/p}, ..., t^{1/p^P}) for a monomial base."""
        B = self.base
        if not isinstance(B, MonomialAlgebra):
            raise UnsupportedError("t^flat needs a monomial algebra")
        if B.level < self.precision:
            raise PrecisionError(f"t^(1/{self.p}^{self.precision}) does not exist at level {B.level}")
        return self.element([B.monomial(ExponentQ.make(1, i, self.p)) for i in range(self.precision + 1)])


def tilt_construct(R, p=None, precision=4):
    p = p or getattr(R, "p", None)
    if p is None:
        raise PreconditionError("tilting needs a declared prime", "p declared")
    return TiltRing(R, p, precision)


def isomorphism_report(T, samples=None):
    """Check that y -> from_root(y) is a ring isomorphism R/p -> tilt (exhaustive on finite R/p)."""
    B = T.base
    if samples is None:
        if not B.is_finite:
            raise UnsupportedError("pass samples for an infinite base")
        samples = B.element_list()
    phi = T.from_root

    def fine(y):
        # summands one index finer, since addition consumes the top index
        return T.from_root(y, T.precision + 1)
    for a in samples:
        if T.last(phi(a)) != a:
            return {"iso": False, "reason": "not injective", "element": B.format(a)}
        for b in samples:
            if not T.equal(phi(B.mul(a, b)), T.mul(phi(a), phi(b))):
                return {"iso": False, "reason": "not multiplicative"}
            if T.add(fine(a), fine(b)) != T.truncate(fine(B.add(a, b)), T.precision):
                return {"iso": False, "reason": "not additive"}
    return {"iso": True, "checked": len(samples), "inverse": "last coordinate"}
