"""Finitely generated ideals, level-indexed (colimit) ideals, and their verdicts."""
from dataclasses import dataclass, field

from .errors import InconclusiveAtWindow, StructureError, UnsupportedError
from .exponents import ExponentQ
from .rings import MonomialAlgebra, ProductRing, QuotientRing, euclid_divides, euclid_gcd


def additive_closure(R, gens):
    """Additive subgroup of a finite ring generated by gens (always contains 0)."""
    members = {R.zero()}
    frontier = [R.zero()]
    gens = [g for g in set(gens) if g != R.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = R.add(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def span_ideal(R, gens):
    """Members of the ideal of a finite ring generated by gens."""
    prods = {R.mul(r, g) for g in gens for r in R.element_list()}
    return additive_closure(R, prods)


class FGIdeal:
    """An ideal given by finitely many generators.

    Membership is decided by enumeration on finite rings, by gcds on
    Euclidean rings (Z, F_p[s_N]) and componentwise on products of those.
    """

    def __init__(self, ring, gens):
        self.ring = ring
        z = ring.zero()
        out = []
        for g in gens:
            g = getattr(g, "v", g)
            if g != z and g not in out:
                out.append(g)
        self.gens = out
        self._members = None

    @property
    def members(self):
        if self._members is None:
            if not self.ring.is_finite:
                raise UnsupportedError(f"{self.ring.spec()} is not enumerable")
            self._members = span_ideal(self.ring, self.gens)
        return self._members

    @classmethod
    def from_members(cls, ring, members, gens=None):
        I = cls(ring, gens if gens is not None else _small_generating_set(ring, members))
        I._members = frozenset(members)
        return I

    def generator(self):
        """Single generator over a Euclidean ring."""
        R = self.ring
        g = R.zero()
        for x in self.gens:
            g = euclid_gcd(R, g, x)
        return g

    def contains(self, x):
        x = getattr(x, "v", x)
        R = self.ring
        if R.is_finite:
            return x in self.members
        if R.euclidean:
            return euclid_divides(R, self.generator(), x)
        if isinstance(R, ProductRing) and all(F.euclidean or F.is_finite for F in R.factors):
            return all(self.component(i).contains(x[i]) for i in range(len(R.factors)))
        if isinstance(R, QuotientRing) and R.base.euclidean:
            return FGIdeal(R.base, list(self.gens) + [R.modulus]).contains(x)
        raise UnsupportedError(f"ideal membership is not decidable for {R.spec()}")

    def component(self, i):
        R = self.ring
        return FGIdeal(R.factors[i], [g[i] for g in self.gens])

    def product(self, other):
        self._same(other)
        R = self.ring
        if R.is_finite:
            return FGIdeal.from_members(R, span_ideal(R, [R.mul(a, b) for a in self.members
                                                          for b in other.members]))
        return FGIdeal(R, [R.mul(a, b) for a in self.gens for b in other.gens])

    def power(self, k):
        if k < 1:
            return FGIdeal(self.ring, [self.ring.one()])
        out = self
        for _ in range(k - 1):
            out = out.product(self)
        return out

    def sum(self, other):
        self._same(other)
        R = self.ring
        if R.is_finite:
            return FGIdeal.from_members(R, additive_closure(R, list(self.members) + list(other.members)))
        return FGIdeal(R, list(self.gens) + list(other.gens))

    def is_subset(self, other):
        self._same(other)
        if self.ring.is_finite:
            return self.members <= other.members
        return all(other.contains(g) for g in self.gens)

    def equals(self, other):
        return self.is_subset(other) and other.is_subset(self)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.contains(self.ring.one())

    def size(self):
        return len(self.members)

    def _same(self, other):
        if other.ring != self.ring:
            raise StructureError("ideals of different rings")

    def image(self, f, target=None):
        """Ideal of the target generated by f(self)."""
        return FGIdeal(target or f.target, [f(g) for g in self.gens])

    def preimage(self, f):
        S = f.source
        return FGIdeal.from_members(S, [a for a in S.element_list() if self.contains(f(a))])

    def describe(self):
        R = self.ring
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(R.format(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"FGIdeal{self.describe()} in {self.ring.spec()}"


def _small_generating_set(R, members):
    """Greedy generating set: add elements until their span is everything."""
    members = frozenset(members)
    gens, span = [], frozenset([R.zero()])
    for x in R.element_list():
        if x in members and x not in span:
            gens.append(x)
            span = span_ideal(R, gens)
            if span == members:
                break
    return gens


def all_ideals(R):
    """Every ideal of a finite ring (sums of principal ideals), as frozensets."""
    principal = {}
    for x in R.element_list():
        principal.setdefault(span_ideal(R, [x]), x)
    ideals = set(principal)
    frontier = list(ideals)
    while frontier:
        nxt = []
        for I in frontier:
            for J in principal:
                if J <= I:
                    continue
                K = additive_closure(R, list(I) + list(J))
                if K not in ideals:
                    ideals.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(ideals, key=lambda I: (len(I), sorted(R.index(x) for x in I)))


# -- verdicts ------------------------------------------------------------------------------

@dataclass
class Verdict:
    status: str
    certificates: list = field(default_factory=list)
    witness: object = None
    window: object = None

    @property
    def ok(self):
        return self.status in ("Holds", "Idempotent", "Yes", "Flat", "Iso", "Surjective")

    def __bool__(self):
        return self.ok


def k_th_power_ideal(I, k):
    """Ideal generated by k-th powers of elements (finite rings)."""
    R = I.ring
    return FGIdeal.from_members(R, span_ideal(R, {R.power(x, k) for x in I.members}))


def condition_b_check(I, k=2):
    """Do the k-th powers of elements of I generate I?"""
    if k < 2:
        raise ValueError("Condition (B) is about k > 1")
    if isinstance(I, ColimitIdeal):
        return I.condition_b(k)
    R = I.ring
    if R.is_finite:
        J = k_th_power_ideal(I, k)
        certs = []
        for g in I.gens:
            if not J.contains(g):
                return Verdict("Fails", witness=g)
            certs.append({"generator": R.format(g), "in_span_of_kth_powers": True, "k": k})
        return Verdict("Holds", certs)
    # x^k lies in I^k for x in I, so a generator outside I^k is a genuine failure
    powers = FGIdeal(R, [R.power(g, k) for g in I.gens])
    Ik = I.power(k)
    certs = []
    for g in I.gens:
        if powers.contains(g):
            certs.append({"generator": R.format(g), "in": powers.describe()})
        elif not Ik.contains(g):
            return Verdict("Fails", witness=g)
        else:
            raise InconclusiveAtWindow(f"cannot decide whether {R.format(g)} is a sum of {k}-th powers")
    return Verdict("Holds", certs)


def idempotency_check(I):
    if isinstance(I, ColimitIdeal):
        return I.idempotency()
    R = I.ring
    I2 = I.product(I)
    for g in I.gens:
        if not I2.contains(g):
            return Verdict("Not", witness=g)
    return Verdict("Idempotent", [{"generator": R.format(g), "in": "I^2"} for g in I.gens])


# -- colimit ideals over monomial algebras -----------------------------------------------

class ColimitIdeal:
    """Level-indexed ideals I_N of F_p[t^{1/p^N}], N in [start, n_max], with I_N inside I_{N+1}.

    ``gens_at(N)`` returns raw generators at level N.  The top levels of the
    window serve as lookahead: a level-N statement that needs a finer level is
    only decided when that level is inside the window.
    """

    def __init__(self, p, gens_at, n_max, start=0, name="I", coeff=None):
        self.p = p
        self.n_max = n_max
        self.start = start
        self.name = name
        self.coeff = coeff
        self._gens_at = gens_at
        self.levels = {N: FGIdeal(self.ring(N), gens_at(N)) for N in range(start, n_max + 1)}
        for N in range(start, n_max):
            R = self.ring(N)
            nxt = self.levels[N + 1]
            for g in self.levels[N].gens:
                if not nxt.contains(R.embed(g)):
                    raise StructureError(f"{name}: level {N} is not contained in level {N + 1}")

    def ring(self, N):
        return MonomialAlgebra(self.p, N, None, self.coeff)

    def at(self, N):
        return self.levels[N]

    def embed_to(self, g, N, M):
        return self.ring(N).embed(g, M - N)

    def contains(self, g, N):
        """Least window level M >= N at which the level-N element g lies in I_M, or None."""
        for M in range(N, self.n_max + 1):
            if self.levels[M].contains(self.embed_to(g, N, M)):
                return M
        return None

    def _certify(self, lookahead, search):
        last = self.n_max - lookahead
        if last < self.start:
            return Verdict("InconclusiveAtWindow", [], window=(self.start, self.n_max))
        certs = []
        for N in range(self.start, last + 1):
            R = self.ring(N)
            for g in self.levels[N].gens:
                cert = search(N, g)
                if cert is None:
                    return Verdict("InconclusiveAtWindow", certs, witness=(N, R.format(g)),
                                   window=(self.start, self.n_max))
                certs.append(cert)
        if last < self.n_max:
            certs.append({"lookahead_levels": list(range(last + 1, self.n_max + 1))})
        return certs

    def idempotency(self):
        def search(N, g):
            for M in range(N, self.n_max + 1):
                IM = self.levels[M]
                if IM.product(IM).contains(self.embed_to(g, N, M)):
                    return {"level": N, "generator": self.ring(N).format(g), "square_level": M,
                            "expression": _square_expression(self, g, N, M)}
            return None
        out = self._certify(1, search)
        if isinstance(out, Verdict):
            return out
        return Verdict("Idempotent", out, window=(self.start, self.n_max))

    def condition_b(self, k):
        look = 0
        while self.p ** look < k:
            look += 1

        def search(N, g):
            for M in range(N, self.n_max + 1):
                RM = self.ring(M)
                powers = FGIdeal(RM, [RM.power(h, k) for h in self.levels[M].gens])
                if powers.contains(self.embed_to(g, N, M)):
                    return {"level": N, "generator": self.ring(N).format(g), "power_level": M,
                            "kth_powers": powers.describe()}
            return None
        out = self._certify(look, search)
        if isinstance(out, Verdict):
            return out
        return Verdict("Holds", out, window=(self.start, self.n_max))

    def describe(self):
        return f"{self.name} on levels {self.start}..{self.n_max}"


def _square_expression(I, g, N, M):
    """Write g as a product of two level-M generators (times a monomial) when possible."""
    RM = I.ring(M)
    target = I.embed_to(g, N, M)
    if len(target) != 1:
        return "member of I_M^2"
    k = target[0][0]
    for a in I.levels[M].gens:
        for b in I.levels[M].gens:
            prod = RM.mul(a, b)
            if len(prod) == 1 and prod[0][0] <= k:
                rest = RM._canon([(k - prod[0][0], 1)])
                tail = "" if rest == RM.one() else f"*({RM.format(rest)})"
                return f"{RM.format(target)} = ({RM.format(a)})*({RM.format(b)}){tail}"
    return "member of I_M^2"


def standard_m(p, n_max, start=0):
    """m = (t^{1/p^infty}) through the window: I_N = (t^{1/p^N})."""
    return ColimitIdeal(p, lambda N: [MonomialAlgebra(p, N).gen()], n_max, start, name="m")


def m_generator(p, N):
    return MonomialAlgebra(p, N).monomial(ExponentQ.make(1, N, p))
