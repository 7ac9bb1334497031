"""Almost mathematics over (R, m) with R = F_p[t^{1/p^inf}] read through a level window.

Modules are level families (see ``modules.LevelFamily``); a module presented at
a single level stands for its base change to every higher level.  Tests that
quantify over all of m are semi-decidable, so verdicts carry the window and a
depth tag instead of pretending to be final.
"""
import itertools
from dataclasses import dataclass, field

from .errors import InternalError, PreconditionError, UnsupportedError
from .exponents import ExponentQ
from .ideals import FGIdeal, Verdict, condition_b_check, idempotency_check, standard_m
from .modules import FamilyMap, LevelFamily, ModuleMap, PresentedModule
from .rings import IntegerRing, MonomialAlgebra
from .snf import determinant

_RANK = {"Yes": 3, "YesUpToDepth": 2, "InconclusiveAtWindow": 1, "No": 0}


class AlmostSetup:
    """The pair (R, m) together with the probe budget.

    For the monomial setup R_N = F_p[t^{1/p^N}] on levels ``start..n_max`` and
    m = (t^{1/p^inf}); ``depth`` is the number K of levels probed by the
    semi-decidable tests.  ``AlmostSetup.finite(R, m)`` handles a finite ring
    with an idempotent ideal.
    """

    def __init__(self, p=2, n_max=8, depth=6, start=0, m=None):
        if depth < 1:
            raise PreconditionError("depth must be at least 1", "K >= 1")
        if n_max < depth + 1:
            raise PreconditionError(f"level window up to {n_max} is too short for depth {depth}",
                                    "n_max >= depth + 1")
        self.p = p
        self.n_max = n_max
        self.depth = depth
        self.start = start
        self.m = m or standard_m(p, n_max, start)
        self.finite_ring = None
        idem = idempotency_check(self.m)
        if idem.status != "Idempotent":
            raise PreconditionError(f"m is not certified idempotent ({idem.status})", "m^2 = m")
        cond_b = condition_b_check(self.m, 2)
        self.certificates = {"idempotent": idem.certificates, "condition_b": cond_b.certificates,
                             "condition_b_status": cond_b.status}

    @classmethod
    def finite(cls, R, m):
        self = cls.__new__(cls)
        self.p = getattr(R, "p", None)
        self.finite_ring = R
        self.m = m if isinstance(m, FGIdeal) else FGIdeal(R, m)
        self.depth = 1
        self.n_max = self.start = 0
        idem = idempotency_check(self.m)
        if idem.status != "Idempotent":
            raise PreconditionError("m is not idempotent", "m^2 = m")
        self.certificates = {"idempotent": idem.certificates}
        return self

    def ring(self, N):
        return MonomialAlgebra(self.p, N)

    def t_power(self, e, N):
        """t^e at level N (e an ExponentQ)."""
        return self.ring(N).monomial(e)

    def window(self):
        return (self.start, self.n_max)

    def family(self, M):
        """Coerce a level module into its base-change family over the window."""
        if isinstance(M, LevelFamily):
            return M
        if not isinstance(M.ring, MonomialAlgebra):
            raise UnsupportedError(f"{M.ring.spec()} is not a level ring of this setup")
        if M.ring.level > self.n_max:
            raise PreconditionError(f"module lives above the window (level {M.ring.level})")
        return LevelFamily.base_change(M, self.n_max)

    def family_map(self, f):
        if isinstance(f, FamilyMap):
            return f
        S, T = self.family(f.source), self.family(f.target)
        N0 = f.ring.level
        mats = {}
        for N in S.levels:
            k = N - N0
            mats[N] = [[f.ring.embed(a, k) for a in row] for row in f.matrix]
        return FamilyMap(S, T, mats)

    # standard families
    def residue_family(self, I=None):
        """R/I level by level; R/m by default."""
        I = I or self.m
        mods = {N: PresentedModule(self.ring(N), 1, [[g] for g in I.at(N).gens])
                for N in range(I.start, I.n_max + 1)}
        trans = {N: [[self.ring(N + 1).one()]] for N in range(I.start, I.n_max)}
        return LevelFamily(self.p, mods, trans, "R/" + I.name)

    def ideal_family(self, I=None):
        return LevelFamily.from_ideal(I or self.m)

    def free_family(self, n=1):
        return self.family(PresentedModule.free(self.ring(self.start), n))

    def inclusion(self, I=None):
        """I -> R as a family map."""
        I = I or self.m
        src = self.ideal_family(I)
        tgt = self.free_family(1)
        return FamilyMap(src, tgt, {N: [[g] for g in I.at(N).gens] for N in src.levels})


def _weaker(a, b):
    return a if _RANK[a.status] <= _RANK[b.status] else b


def almost_zero(M, setup):
    """Is m * M = 0?  Yes / No(epsilon, x) / YesUpToDepth(K) / InconclusiveAtWindow."""
    if setup.finite_ring is not None:
        return _almost_zero_finite(M, setup)
    F = setup.family(M)
    p, K = setup.p, setup.depth
    window = (F.start, F.n_max)
    certs = _structural_certificate(F)
    if certs is not None:
        return Verdict("Yes", certs, window=window)

    certs = []
    pending = False
    for N in F.levels:
        M_N = F.at(N)
        for i in range(M_N.ngens):
            x = M_N.gen(i)
            if M_N.is_zero_element(x):
                continue
            for k in range(K + 1):
                L = max(N, k)
                if L > F.n_max:
                    pending = True
                    break
                eps = ExponentQ.make(1, k, p)
                y = F.transport(x, N, L)
                y = F.at(L).scale(setup.t_power(eps, L), y)
                death = None
                for Lp in range(L, F.n_max + 1):
                    if F.at(Lp).is_zero_element(F.transport(y, L, Lp)):
                        death = Lp
                        break
                if death is None:
                    if F.injective_between(L, F.n_max):
                        return Verdict("No", certs, window=window,
                                       witness={"epsilon": eps, "level": N, "element": x,
                                                "text": f"t^({eps}) * {M_N.format(x)} != 0"})
                    pending = True
                else:
                    certs.append({"level": N, "generator": i, "epsilon": str(eps), "dies_at": death})
    if pending:
        return Verdict("InconclusiveAtWindow", certs, window=window)
    return Verdict("YesUpToDepth", certs, window=window, witness={"depth": K})


def _structural_certificate(F):
    """t^{1/p^N} kills M_N once carried to level N + j, for one shift j and every level it reaches.

    The top j levels of the window only serve as lookahead; at least two
    levels must be certified so the shift is seen to repeat.
    """
    for j in range(max(1, F.n_max - F.start)):
        certs = []
        for N in range(F.start, F.n_max - j + 1):
            R = F.ring(N)
            s = R.gen()
            M_N, M_L = F.at(N), F.at(N + j)
            if not all(M_L.is_zero_element(F.transport(M_N.scale(s, M_N.gen(i)), N, N + j))
                       for i in range(M_N.ngens)):
                break
            certs.append({"level": N, "annihilated_by": R.format(s), "at_level": N + j})
        else:
            if j:
                certs.append({"lookahead_levels": list(range(F.n_max - j + 1, F.n_max + 1))})
            return certs
    return None


def _almost_zero_finite(M, setup):
    R = setup.finite_ring
    certs = []
    for g in setup.m.gens:
        for i in range(M.ngens):
            v = M.scale(g, M.gen(i))
            if not M.is_zero_element(v):
                return Verdict("No", certs, witness={"epsilon": R.format(g), "element": M.gen(i),
                                                     "text": f"{R.format(g)} * e{i} != 0"})
            certs.append({"generator": R.format(g), "kills": f"e{i}"})
    return Verdict("Yes", certs)


def almost_iso(f, setup):
    """Both kernel and cokernel almost zero; the combined verdict is the weaker one."""
    if setup.finite_ring is not None:
        K = f.kernel()[0]
        C = f.cokernel()[0]
        ker_v, cok_v = almost_zero(K, setup), almost_zero(C, setup)
    else:
        F = setup.family_map(f)
        ker_v = almost_zero(F.kernel(), setup)
        cok_v = almost_zero(F.cokernel(), setup)
    out = _weaker(ker_v, cok_v)
    part = "kernel" if out is ker_v else "cokernel"
    return Verdict(out.status, [{"kernel": ker_v.status, "cokernel": cok_v.status}],
                   witness=None if out.witness is None else {"part": part, **out.witness},
                   window=out.window)


# -- almost elements ------------------------------------------------------------------

@dataclass
class AlmostElements:
    """Depth-K almost elements of M, read in the coordinate c_K at level L.

    An almost element is a compatible sequence (c_0, ..., c_K) with
    t^{1/p^k - 1/p^{k+1}} c_{k+1} = c_k; it is determined by c_K, which ranges
    over t^{1/p^K} M.  ``module`` presents that image on the generators
    t^{1/p^K} e_i of ``ambient`` = M_L, and ``canonical`` is x -> (t^{1/p^k} x)_k.
    """
    setup: AlmostSetup
    depth: int
    level: int
    ambient: PresentedModule
    module: PresentedModule
    generators: list
    canonical: ModuleMap
    certificates: dict = field(default_factory=dict)

    def sequence(self, y):
        """The family (c_0..c_K) of an element y of the depth-K module."""
        R = self.ambient.ring
        p, K = self.setup.p, self.depth
        cK = [R.zero()] * self.ambient.ngens
        for c, g in zip(y, self.generators):
            cK = self.ambient.add(cK, self.ambient.scale(c, g))
        out = []
        for k in range(K + 1):
            gap = ExponentQ.make(p ** (K - k) - 1, K, p)
            out.append(self.ambient.scale(R.monomial(gap), cK))
        return out

    def is_compatible(self, seq):
        R = self.ambient.ring
        p = self.setup.p
        for k in range(len(seq) - 1):
            d = ExponentQ.make(p - 1, k + 1, p)
            lhs = self.ambient.scale(R.monomial(d), seq[k + 1])
            diff = [R.sub(a, b) for a, b in zip(lhs, seq[k])]
            if not self.ambient.is_zero_element(diff):
                return False
        return True

    def canonical_report(self):
        """Kernel and cokernel of M -> M_* are killed by t^{1/p^K}, the depth-K generator of m."""
        R = self.ambient.ring
        u = R.monomial(ExponentQ.make(1, self.depth, self.setup.p))
        Kmod, _ = self.canonical.kernel()
        Cmod, _ = self.canonical.cokernel()

        def killed(N):
            return all(N.is_zero_element(N.scale(u, N.gen(i))) for i in range(N.ngens))
        return {"depth": self.depth, "level": self.level, "killed_by": R.format(u),
                "kernel": Kmod.describe(), "kernel_killed": killed(Kmod),
                "cokernel": Cmod.describe(), "cokernel_killed": killed(Cmod),
                "injective": Kmod.is_zero(), "surjective": Cmod.is_zero()}

    def torsion_probe(self):
        """No nonzero almost element is killed by t^{1/p^L}.

        A depth-K element lifts to c_L = t^{1/p^L} z; being killed by t^{1/p^L}
        in every coordinate means t^{2/p^L} z = 0, and its c_K coordinate is
        t^{1/p^K} z.  The probe checks every such c_K vanishes.
        """
        M = self.ambient
        R = M.ring
        p, L, K = self.setup.p, self.level, self.depth
        kill = R.monomial(ExponentQ.make(2, L, p))
        mult = ModuleMap(M, M, [M.scale(kill, M.gen(i)) for i in range(M.ngens)])
        zs = mult.kernel_generators()
        up = R.monomial(ExponentQ.make(1, K, p))
        for z in zs:
            c = M.scale(up, z)
            if not M.is_zero_element(c):
                return Verdict("Fails", witness={"element": c, "text": M.format(c)})
        return Verdict("Holds", [{"level": L, "probe": R.format(kill), "candidates": len(zs)}])


def almost_elements(M, setup, depth=None):
    if setup.finite_ring is not None:
        raise UnsupportedError("almost elements are computed for the monomial setup only")
    K = depth or setup.depth
    F = setup.family(M)
    L = max(K + 1, F.start)
    if L > F.n_max:
        raise PreconditionError(f"depth {K} needs level {L} inside the window", "n_max >= K + 1")
    ML = F.at(L)
    R = ML.ring
    u = R.monomial(ExponentQ.make(1, K, setup.p))
    gens = [ML.scale(u, ML.gen(i)) for i in range(ML.ngens)]
    A, _ = ML.submodule(gens)
    canon = ModuleMap(ML, A, [A.gen(i) for i in range(ML.ngens)])
    return AlmostElements(setup, K, L, ML, A, gens, canon)


# -- adjoints -------------------------------------------------------------------------

def m_module(setup, N):
    """m_N = (t^{1/p^N}) as a module together with its generators in R_N."""
    R = setup.ring(N)
    gens = [[g] for g in setup.m.at(N).gens]
    S, inc = PresentedModule(R, 1).submodule(gens)
    return S, [g[0] for g in gens]


def shriek(M, setup, depth=None):
    """M_! = m (x) M_* at the level of the depth-K computation.

    Returns (module, natural map m (x) M_* -> M_*, the AlmostElements used).
    """
    E = almost_elements(M, setup, depth)
    mN, mgens = m_module(setup, E.level)
    T = mN.tensor(E.module)
    A = E.module
    rows = []
    for i, g in enumerate(mgens):
        for j in range(A.ngens):
            rows.append(A.scale(g, A.gen(j)))
    return T, ModuleMap(T, A, rows), E


def shriek_of_base(setup, depth=None):
    """R_! together with an explicit isomorphism onto m at the computed level."""
    R0 = setup.ring(setup.start)
    T, nat, E = shriek(PresentedModule.free(R0, 1), setup, depth)
    mN, mgens = m_module(setup, E.level)
    # R_* has generator c = t^{1/p^K}; m (x) R_* -> m sends g (x) c to g (identifying R_* = R via c -> 1)
    iso = ModuleMap(T, mN, [mN.gen(i) for i in range(len(mgens))])
    return {"module": T, "target": mN, "iso": iso, "is_iso": iso.is_iso(), "level": E.level,
            "natural_map_injective": nat.is_injective()}


def double_shriek_of_base(setup, depth=None):
    """B_!! for B = R: (R + B_!) / tau(m~), with m~ identified with m.

    Over the flat colimit m~ = m (x) m is m, and tau(z) = (z, -z (x) 1).  With
    B_! = m (x) R_* on the generator u = g (x) 1, tau(g) is (g, -u).
    """
    info = shriek_of_base(setup, depth)
    L = info["level"]
    R = setup.ring(L)
    Bshriek = info["module"]
    total = PresentedModule(R, 1).direct_sum(Bshriek)
    z = R.zero()
    rels = []
    for gi, g in enumerate(setup.m.at(L).gens):
        row = [g] + [z] * Bshriek.ngens
        row[1 + gi] = R.neg(R.one())
        rels.append(row)
    Q = PresentedModule(R, total.ngens, total.relations + rels)
    unit = ModuleMap(PresentedModule.free(R, 1), Q, [Q.gen(0)])
    return {"module": Q, "unit_map": unit, "is_iso": unit.is_iso(), "level": L,
            "describe": Q.describe()}


# -- flatness -------------------------------------------------------------------------

def _ideal_module(R, gens):
    return PresentedModule(R, 1).submodule([[g] for g in gens])[0]


def ideal_kernel(M, gens):
    """Generators of ker(I (x) M -> M) for I = (gens), as elements of I (x) M."""
    R = M.ring
    I = _ideal_module(R, gens)
    T = I.tensor(M)
    rows = []
    for g in gens:
        for j in range(M.ngens):
            rows.append(M.scale(g, M.gen(j)))
    f = ModuleMap(T, M, rows)
    return T, f.kernel_generators()


def _default_test_ideals(M):
    R = M.ring
    out = []
    if isinstance(R, MonomialAlgebra):
        out.append([R.gen()])
    elif isinstance(R, IntegerRing):
        out.append([2])
    for r in M.relations:
        for a in r:
            if a != R.zero() and not R.is_unit(a) and [a] not in out:
                out.append([a])
    minor = _maximal_minor(R, M.relations)
    if minor is not None and not R.is_unit(minor) and [minor] not in out:
        out.append([minor])
    return out


def _maximal_minor(R, rows, cap=400):
    """A nonzero minor of maximal size (it kills the torsion of the cokernel)."""
    if not rows:
        return None
    n, m = len(rows), len(rows[0])
    for r in range(min(n, m), 0, -1):
        tried = 0
        for I in itertools.combinations(range(n), r):
            for J in itertools.combinations(range(m), r):
                d = determinant(R, [[rows[i][j] for j in J] for i in I])
                if d != R.zero():
                    return d
                tried += 1
                if tried > cap:
                    break
    return None


def flatness_check(M, ideals=None):
    """Flat / NotFlat over a Euclidean ring, by two independent routes that must agree.

    Route one reads torsion off the Smith form; route two computes
    ker(I (x) M -> M) for a family of ideals that includes a maximal minor of
    the relation matrix, which annihilates the torsion whenever there is any.
    A level family is Flat when every level is.
    """
    if isinstance(M, LevelFamily):
        certs = []
        for N in M.levels:
            v = flatness_check(M.at(N), ideals)
            if v.status != "Flat":
                v.witness = {"level": N, **(v.witness or {})}
                return v
            certs.append({"level": N, "module": M.at(N).describe()})
        return Verdict("Flat", certs, window=(M.start, M.n_max))
    R = M.ring
    if not R.euclidean:
        raise UnsupportedError(f"flatness over {R.spec()} needs a Euclidean ring")
    snf_flat = M.is_torsion_free()
    family = list(ideals or []) + _default_test_ideals(M)
    witness = None
    checked = []
    for gens in family:
        T, ker = ideal_kernel(M, gens)
        checked.append("(" + ", ".join(R.format(g) for g in gens) + ")")
        if ker:
            witness = {"ideal": gens, "text": checked[-1], "kernel_element": T.format(ker[0])}
            break
    ideal_flat = witness is None
    if snf_flat != ideal_flat:
        raise InternalError(f"flatness routes disagree on {M!r}: snf={snf_flat}, ideals={ideal_flat}")
    certs = [{"snf_invariants": [R.format(d) for d in M.invariant_factors()], "ideals": checked}]
    return Verdict("Flat" if snf_flat else "NotFlat", certs, witness=witness)


# -- entourages and almost finite generation ---------------------------------------

def entourage_check(M, M0, M1, m0):
    """(M0, M1) in E_M(m0): m0 M0 inside M1 and m0 M1 inside M0."""
    gens = m0.gens if isinstance(m0, FGIdeal) else list(m0)
    M0 = [M.vector(v) for v in M0]
    M1 = [M.vector(v) for v in M1]

    def absorbed(A, B):
        return all(M.in_submodule(B, M.scale(g, x)) for g in gens for x in A)
    return absorbed(M0, M1) and absorbed(M1, M0)


def almost_fg_check(M, m0):
    """Search for a finitely generated M_0 with m0 M inside M_0.

    For a family, the candidate at level j is the image of M_j; it is
    accepted when it absorbs m0 M_N at every later level of the window.
    """
    if isinstance(M, PresentedModule):
        return Verdict("Witness", [{"reason": "finitely generated"}],
                       witness=[M.format(M.gen(i)) for i in range(M.ngens)])
    gens = m0.gens if isinstance(m0, FGIdeal) else list(m0)
    N0 = m0.ring.level if isinstance(m0, FGIdeal) else M.start
    labels = getattr(M, "labels", None)
    for j in range(max(N0, M.start), M.n_max):
        Mj = M.at(j)
        ok = True
        for N in range(j + 1, M.n_max + 1):
            MN = M.at(N)
            cand = [M.transport(Mj.gen(i), j, N) for i in range(Mj.ngens)]
            lift = [MonomialAlgebra(M.p, N0).embed(g, N - N0) for g in gens]
            if not all(MN.in_submodule(cand, MN.scale(g, MN.gen(i))) for g in lift
                       for i in range(MN.ngens)):
                ok = False
                break
        if ok:
            shown = labels[j] if labels else [Mj.format(Mj.gen(i)) for i in range(Mj.ngens)]
            return Verdict("Witness", [{"candidate_level": j, "checked_levels": [j + 1, M.n_max]}],
                           witness=shown, window=(M.start, M.n_max))
    ranks = {N: M.at(N).free_rank() for N in M.levels}
    seq = [ranks[N] for N in M.levels]
    if all(b > a for a, b in zip(seq, seq[1:])):
        return Verdict("Fails", [{"free_rank_by_level": ranks}], window=(M.start, M.n_max),
                       witness={"level": M.n_max, "rank": ranks[M.n_max]})
    return Verdict("InconclusiveAtWindow", [{"free_rank_by_level": ranks}], window=(M.start, M.n_max))
