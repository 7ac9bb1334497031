"""Lifting idempotent ideals: along nilpotent surjections, through gluing squares,
and up the Witt tower."""
from dataclasses import dataclass, field

from .errors import InternalError, PreconditionError, StructureError, UnsupportedError
from .exponents import ExponentQ
from .ideals import (FGIdeal, all_ideals, condition_b_check, idempotency_check)
from .rings import MonomialAlgebra, ProductRing, QuotientRing, RingMap, SubRing
from .witt import WittRing

ITERATION_CAP = 64


@dataclass
class LiftResult:
    ideal: FGIdeal
    trace: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)

    @property
    def iterations(self):
        return len(self.trace) - 1

    def to_dict(self):
        R = self.ideal.ring
        return {
            "ring": R.spec(),
            "ideal": [R.format(x) for x in sorted(self.ideal.members, key=R.index)],
            "generators": [R.format(g) for g in self.ideal.gens],
            "trace": self.trace,
            "certificates": self.certificates,
        }


def _stabilise(I):
    """Iterate I <- I^2 until I^2 = I; returns (ideal, sizes trace)."""
    trace = [len(I.members)]
    cur = I
    for _ in range(ITERATION_CAP):
        nxt = cur.product(cur)
        if nxt.members == cur.members:
            return cur, trace
        cur = nxt
        trace.append(len(cur.members))
    raise InternalError(f"power iteration did not stabilise within {ITERATION_CAP} steps")


def nilpotency_exponent(K, cap=ITERATION_CAP):
    """Least e with K^e = 0, or None."""
    if not K.members - {K.ring.zero()}:
        return 1
    cur = K
    for e in range(2, cap + 1):
        cur = cur.product(K)
        if cur.members == {K.ring.zero()}:
            return e
    return None


def first_preimage(f, y):
    for a in f.source.element_list():
        if f(a) == y:
            return a
    raise PreconditionError(f"{f.target.format(y)} has no preimage; map is not surjective")


def _check_ideal(m, R, name):
    if not isinstance(m, FGIdeal) or m.ring != R:
        raise StructureError(f"{name} must be an ideal of {R.spec()}")


def nilpotent_lift(f, m, nilpotency=None):
    """The unique idempotent ideal m_S of the source with f(m_S) generating m."""
    S, R = f.source, f.target
    _check_ideal(m, R, "m")
    if not S.is_finite:
        raise UnsupportedError("nilpotent lifting is implemented for finite rings")
    if not idempotency_check(m).ok:
        raise PreconditionError("m is not idempotent", "idempotent")
    if not f.is_surjective():
        raise PreconditionError("f is not surjective", "surjective")
    K = FGIdeal.from_members(S, f.kernel())
    e = nilpotency_exponent(K)
    if e is None:
        raise PreconditionError("kernel is not nilpotent", "nilpotent kernel")
    if nilpotency is not None and not K.power(nilpotency).members == {S.zero()}:
        raise PreconditionError(f"kernel is not killed by its {nilpotency}-th power", "nilpotent kernel")
    lifts = [first_preimage(f, g) for g in m.gens]
    I = FGIdeal(S, lifts + list(K.gens))
    pre = m.preimage(f)
    if I.members != pre.members:
        raise InternalError("lifted generators plus kernel do not span the preimage")
    mS, trace = _stabilise(I)
    certs = {
        "kernel_size": len(K.members),
        "nilpotency_exponent": e,
        "lifted_generators": [S.format(x) for x in lifts],
        "preimage_size": len(pre.members),
        "stabilised_after": len(trace) - 1,
        "within_bound": len(trace) - 1 <= 2 * e + 1,
    }
    certs.update(_post_checks_single(f, mS, m))
    if not certs["idempotent"] or not certs["maps_onto"]:
        raise InternalError(f"nilpotent lift failed its post-checks: {certs}")
    return LiftResult(mS, trace, certs)


def _post_checks_single(f, mS, m):
    sq = mS.product(mS)
    image = FGIdeal(f.target, list({f(x) for x in mS.members}))
    return {"idempotent": sq.members == mS.members, "maps_onto": image.equals(m)}


def idempotent_lifts(f, m):
    """All idempotent ideals J of the source with f(J) generating m (exhaustive)."""
    S = f.source
    out = []
    for members in all_ideals(S):
        J = FGIdeal.from_members(S, members)
        if J.product(J).members != J.members:
            continue
        image = FGIdeal(f.target, list({f(x) for x in members}))
        if image.equals(m):
            out.append(J)
    return out


# -- gluing squares ---------------------------------------------------------------------

@dataclass
class GluingSquare:
    """A0 -f1-> A1 -g1-> A3 and A0 -f2-> A2 -g2-> A3, commuting, with g2 (or g1) onto."""
    A0: object
    A1: object
    A2: object
    A3: object
    f1: RingMap
    f2: RingMap
    g1: RingMap
    g2: RingMap
    surjective: str = "g2"

    def check(self):
        if not all(A.is_finite for A in (self.A0, self.A1, self.A2, self.A3)):
            raise UnsupportedError("gluing squares are checked on finite rings")
        for a in self.A0.element_list():
            if self.g1(self.f1(a)) != self.g2(self.f2(a)):
                raise PreconditionError("square does not commute", "commutes")
        flags = {"g1": self.g1.is_surjective(), "g2": self.g2.is_surjective()}
        if not (flags["g1"] or flags["g2"]):
            raise PreconditionError("neither g1 nor g2 is surjective", "surjective")
        self.surjective = "g2" if flags["g2"] else "g1"
        return flags

    def is_fiber_product(self):
        """Is A0 -> A1 x_{A3} A2 a bijection?"""
        fib = {(a1, a2) for a1 in self.A1.element_list() for a2 in self.A2.element_list()
               if self.g1(a1) == self.g2(a2)}
        img = [(self.f1(a), self.f2(a)) for a in self.A0.element_list()]
        return len(set(img)) == len(img) and set(img) == fib


def gluing_lift(square, m1, m2):
    """The unique idempotent ideal m of A0 with f1(m)A1 = m1 and f2(m)A2 = m2."""
    sq = square
    sq.check()
    _check_ideal(m1, sq.A1, "m1")
    _check_ideal(m2, sq.A2, "m2")
    for name, I in (("m1", m1), ("m2", m2)):
        if not idempotency_check(I).ok:
            raise PreconditionError(f"{name} is not idempotent", "idempotent")
    i1 = FGIdeal(sq.A3, [sq.g1(x) for x in m1.gens])
    i2 = FGIdeal(sq.A3, [sq.g2(x) for x in m2.gens])
    if not i1.equals(i2):
        raise PreconditionError("g1(m1)A3 and g2(m2)A3 differ", "compatible over A3")
    A0 = sq.A0
    fib = [a for a in A0.element_list() if m1.contains(sq.f1(a)) and m2.contains(sq.f2(a))]
    I = FGIdeal.from_members(A0, fib)
    m, trace = _stabilise(I)
    img1 = FGIdeal(sq.A1, list({sq.f1(x) for x in m.members}))
    img2 = FGIdeal(sq.A2, list({sq.f2(x) for x in m.members}))
    certs = {
        "fiber_product_size": len(fib),
        "stabilised_after": len(trace) - 1,
        "idempotent": m.product(m).members == m.members,
        "f1_onto_m1": img1.equals(m1),
        "f2_onto_m2": img2.equals(m2),
        "surjective_map": sq.surjective,
    }
    cond_b = {}
    for k in (2, 3):
        ins = condition_b_check(m1, k).ok and condition_b_check(m2, k).ok
        if ins:
            cond_b[k] = condition_b_check(m, k).ok
    certs["condition_b_propagates"] = all(cond_b.values()) if cond_b else None
    if not (certs["idempotent"] and certs["f1_onto_m1"] and certs["f2_onto_m2"]):
        raise InternalError(f"gluing lift failed its post-checks: {certs}")
    return LiftResult(m, trace, certs)


def gluing_lifts_all(square, m1, m2):
    """Every idempotent ideal of A0 with the two image properties (exhaustive)."""
    out = []
    for members in all_ideals(square.A0):
        J = FGIdeal.from_members(square.A0, members)
        if J.product(J).members != J.members:
            continue
        img1 = FGIdeal(square.A1, list({square.f1(x) for x in members}))
        img2 = FGIdeal(square.A2, list({square.f2(x) for x in members}))
        if img1.equals(m1) and img2.equals(m2):
            out.append(J)
    return out


# -- Witt lifting -------------------------------------------------------------------------

@dataclass
class WittLiftResult:
    ideals: list
    certificates: list
    status: str = "Holds"

    def to_dict(self):
        out = []
        for k, I in enumerate(self.ideals):
            if isinstance(I, FGIdeal):
                R = I.ring
                out.append({"length": k + 1, "size": len(I.members),
                            "generators": [R.format(g) for g in I.gens]})
            else:
                out.append({"length": k + 1, "description": I})
        return {"status": self.status, "ideals": out, "certificates": self.certificates}


def witt_bar_square(R, p, k):
    """The gluing square (Wbar_k(R), W_{k-1}(R), R, R/p^k) and alpha_k: W_k(R) -> Wbar_k(R).

    Lengths: W_k here has k + 1 coordinates.
    """
    W = WittRing(R, p, k + 1)
    Wm = WittRing(R, p, k)
    P = ProductRing([Wm, R])
    image = {W.alpha(a) for a in W.element_list()}
    Wbar = SubRing(P, image, name=f"Wbar{{{R.spec()}, p={p}, length={k + 1}}}")
    R3 = QuotientRing(R, [R.from_int(p ** k)])

    def omega_bar(y):
        acc = R.zero()
        for j in range(k):
            acc = R.add(acc, R.mul(R.from_int(p ** j), R.power(y[j], p ** (k - j))))
        return R3.reduce(acc)

    square = GluingSquare(
        Wbar, Wm, R, R3,
        RingMap(Wbar, Wm, lambda a: a[0], "pr1"),
        RingMap(Wbar, R, lambda a: a[1], "pr2"),
        RingMap(Wm, R3, omega_bar, "omega_bar"),
        RingMap(R, R3, R3.reduce, "reduce"),
    )
    alpha = RingMap(W, Wbar, W.alpha, "alpha")
    return W, square, alpha


def witt_lift(R, m, n, p=None):
    """Idempotent ideals m_0..m_n of the Witt rings of lengths 1..n+1 over a finite ring R."""
    p = p or R.p
    if not R.is_finite:
        raise UnsupportedError("use witt_lift_monomial for monomial algebras")
    _check_ideal(m, R, "m")
    if not idempotency_check(m).ok:
        raise PreconditionError("m is not idempotent", "idempotent")
    for k in (2, 3):
        if not condition_b_check(m, k).ok:
            raise PreconditionError(f"m fails Condition (B) for k={k}", "condition B")
    W1 = WittRing(R, p, 1)
    ideals = [FGIdeal(W1, [(g,) for g in m.gens])]
    certs = [{"length": 1, "base_case": True}]
    for k in range(1, n + 1):
        W, sq, alpha = witt_bar_square(R, p, k)
        cert = {"length": k + 1}
        cert["alpha_image_is_fiber_product"] = sq.is_fiber_product()
        cert["omega_bar_is_homomorphism"] = sq.g1.check_homomorphism()
        cert["p_power_zero_in_base_corner"] = sq.A3.from_int(p ** k) == sq.A3.zero()
        m_prev = ideals[-1]
        mbar = gluing_lift(sq, m_prev, m)
        cert["gluing"] = {k2: v for k2, v in mbar.certificates.items()}
        lifted = nilpotent_lift(alpha, mbar.ideal)
        cert["nilpotent"] = {k2: v for k2, v in lifted.certificates.items()}
        mk = lifted.ideal
        ghost_image = FGIdeal(R, list({W.ghost_component(x, k) for x in mk.members}))
        cert["omega_generates_m"] = ghost_image.equals(m)
        pr_image = {W.truncate(x) for x in mk.members}
        cert["pr_is_previous"] = pr_image == set(m_prev.members)
        cert["idempotent"] = mk.product(mk).members == mk.members
        if not (cert["omega_generates_m"] and cert["pr_is_previous"] and cert["idempotent"]):
            raise InternalError(f"Witt lift post-checks failed at length {k + 1}: {cert}")
        ideals.append(mk)
        certs.append(cert)
    return WittLiftResult(ideals, certs)


def _teich(W, a):
    return W.teichmuller(a)


def _v_power(W, x, i):
    """V^i of a shorter vector, padded into W."""
    z = W.base.zero()
    v = (z,) * i + tuple(x)
    return v + (z,) * (W.length - len(v))


def _in_witt_of_m(W, x):
    """All coordinates lie in m (positive minimal exponent)."""
    return all(not c or c[0][0] > 0 for c in x)


def witt_lift_monomial(p, n, n_max):
    """m_k = W_k(m) for m = (t^{1/p^infty}) in F_p[t^{1/p^N}], N <= n_max, k <= n.

    Generated at level N by V^i[t^{1/p^N}], 0 <= i <= k.  Every claim is checked
    by Witt arithmetic at the levels the window allows.
    """
    certs = []
    status = "Holds"
    top = n_max - n - 1
    if top < 0:
        return WittLiftResult([], [{"reason": "window too small"}], "InconclusiveAtWindow")
    descr = ["m"]
    for k in range(1, n + 1):
        descr.append(f"W_{k}(m): generated at level N by V^i[t^(1/{p}^N)], 0 <= i <= {k}")
        for N in range(0, top + 1):
            RN = MonomialAlgebra(p, N)
            W = WittRing(RN, p, k + 1)
            s = RN.gen()
            gens = [_v_power(W, (s,), i) for i in range(k + 1)]
            cert = {"length": k + 1, "level": N, "generators": [W.format(g) for g in gens]}
            cert["generators_in_W(m)"] = all(_in_witt_of_m(W, g) for g in gens)
            # idempotency: V^i[t^{1/p^N}] = [t^{1/p^{N+i+1}}] * V^i[t^{(p-1)/p^{N+1}}]
            prods = []
            for i, g in enumerate(gens):
                L = N + i + 1
                RL = MonomialAlgebra(p, L)
                WL = WittRing(RL, p, k + 1)
                a = _teich(WL, RL.monomial(ExponentQ.make(1, L, p)))
                b = _v_power(WL, (RL.monomial(ExponentQ.make(p - 1, N + 1, p)),), i)
                lhs = tuple(RN.embed(c, L - N) for c in g)
                prods.append(WL.mul(a, b) == lhs and _in_witt_of_m(WL, a) and _in_witt_of_m(WL, b))
            cert["idempotent_products"] = all(prods)
            # omega_k of generators, and the colimit comparison with m
            omegas = [W.ghost_component(g, k) for g in gens]
            cert["omega_images"] = [RN.format(w) for w in omegas]
            in_m = all(not w or w[0][0] > 0 for w in omegas)
            # t^{1/p^N} = omega_k([t^{1/p^{N+k}}]) at level N + k
            RK = MonomialAlgebra(p, N + k)
            WK = WittRing(RK, p, k + 1)
            back = WK.ghost_component(_teich(WK, RK.gen()), k) == RN.embed(s, k)
            cert["omega_generates_m"] = in_m and back
            # pr(m_k) = m_{k-1}
            Wm = WittRing(RN, p, k)
            prev = [_v_power(Wm, (s,), i) for i in range(k)]
            prs = [W.truncate(g) for g in gens]
            cert["pr_is_previous"] = (all(x in prev or x == Wm.zero() for x in prs)
                                      and all(x in prs for x in prev))
            ok = all(cert[key] for key in ("generators_in_W(m)", "idempotent_products",
                                           "omega_generates_m", "pr_is_previous"))
            cert["ok"] = ok
            if not ok:
                status = "Fails"
            certs.append(cert)
    return WittLiftResult(descr, certs, status)
