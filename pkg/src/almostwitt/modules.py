"""Finitely presented modules over Euclidean rings, their maps, and level families.

A module is ``R^n / (row space of rel)``; elements are coordinate lists.  Maps
use the row convention ``x -> x A``.  A level family is a compatible system
``M_N`` over ``F_p[t^{1/p^N}]`` whose colimit is a module over the perfect
monomial algebra.
"""
from .errors import StructureError, UnsupportedError
from .ideals import additive_closure
from .rings import MonomialAlgebra
from .snf import diagonal, left_kernel, mat_mul, smith_normal_form, solve_row, vec_mat


def _in_span(R, rows, v):
    """Is v an R-combination of rows?  Euclidean rings use SNF, finite rings enumerate."""
    z = R.zero()
    if all(a == z for a in v):
        return True
    if R.euclidean:
        return solve_row(R, rows, v, len(v)) is not None
    if R.is_finite:
        scaled = {tuple(R.mul(c, a) for a in r) for r in rows for c in R.element_list()}

        class _Vec:  # additive group of R^n for additive_closure
            def __init__(self, n):
                self.n = n

            def zero(self):
                return tuple([z] * self.n)

            def add(self, a, b):
                return tuple(R.add(x, y) for x, y in zip(a, b))
        return tuple(v) in additive_closure(_Vec(len(v)), scaled)
    raise UnsupportedError(f"linear algebra over {R.spec()} is not supported")


class PresentedModule:
    def __init__(self, ring, ngens, relations=(), name=None):
        self.ring = ring
        self.ngens = ngens
        z = ring.zero()
        rels = []
        for r in relations:
            r = list(r)
            if len(r) != ngens:
                raise StructureError(f"relation of length {len(r)} for {ngens} generators")
            if any(a != z for a in r):
                rels.append(r)
        self.relations = rels
        self.name = name
        self._snf = None

    @classmethod
    def free(cls, R, n):
        return cls(R, n, [])

    @classmethod
    def cyclic(cls, R, d):
        """R / (d)."""
        return cls(R, 1, [[d]])

    @classmethod
    def zero_module(cls, R):
        return cls(R, 0, [])

    def snf(self):
        if self._snf is None:
            if not self.relations:
                self._snf = ([], [], None)
            else:
                self._snf = smith_normal_form(self.relations, self.ring)
        return self._snf

    def invariant_factors(self):
        """Diagonal of the Smith form padded by zeros for the free part."""
        R = self.ring
        D = self.snf()[0]
        d = diagonal(D) if D else []
        d = d + [R.zero()] * (self.ngens - len(d))
        return d

    def free_rank(self):
        return sum(1 for d in self.invariant_factors() if d == self.ring.zero())

    def torsion_factors(self):
        R = self.ring
        return [d for d in self.invariant_factors() if d != R.zero() and not R.is_unit(d)]

    def is_torsion_free(self):
        return not self.torsion_factors()

    def vector(self, v):
        v = list(v)
        if len(v) != self.ngens:
            raise StructureError(f"expected {self.ngens} coordinates, got {len(v)}")
        return v

    def gen(self, i):
        R = self.ring
        return [R.one() if j == i else R.zero() for j in range(self.ngens)]

    def is_zero_element(self, v):
        return _in_span(self.ring, self.relations, self.vector(v))

    def in_submodule(self, gens, v):
        return _in_span(self.ring, [list(g) for g in gens] + self.relations, self.vector(v))

    def is_zero(self):
        return all(self.is_zero_element(self.gen(i)) for i in range(self.ngens))

    def scale(self, c, v):
        return [self.ring.mul(c, a) for a in v]

    def add(self, u, v):
        return [self.ring.add(a, b) for a, b in zip(u, v)]

    def format(self, v):
        R = self.ring
        terms = []
        for i, a in enumerate(v):
            if a != R.zero():
                terms.append(f"({R.format(a)})*e{i}")
        return " + ".join(terms) if terms else "0"

    def describe(self):
        R = self.ring
        parts = []
        if self.free_rank():
            parts.append(f"R^{self.free_rank()}")
        parts += [f"R/({R.format(d)})" for d in self.torsion_factors()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PresentedModule({self.describe()} over {self.ring.spec()})"

    # constructions
    def submodule(self, gens):
        """(S, inclusion) for the submodule generated by gens."""
        R = self.ring
        G = [self.vector(g) for g in gens]
        k = len(G)
        if k == 0:
            S = PresentedModule.zero_module(R)
            return S, ModuleMap(S, self, [])
        K = left_kernel(R, G + self.relations)
        rels = [row[:k] for row in K]
        S = PresentedModule(R, k, rels)
        return S, ModuleMap(S, self, G)

    def direct_sum(self, other):
        R = self.ring
        z = R.zero()
        n, m = self.ngens, other.ngens
        rels = [r + [z] * m for r in self.relations] + [[z] * n + r for r in other.relations]
        return PresentedModule(R, n + m, rels)

    def tensor(self, other):
        """M (x) N with generators e_i (x) f_j at index i * N.ngens + j."""
        R = self.ring
        z = R.zero()
        n, m = self.ngens, other.ngens
        rels = []
        for r in self.relations:
            for j in range(m):
                row = [z] * (n * m)
                for i in range(n):
                    row[i * m + j] = r[i]
                rels.append(row)
        for s in other.relations:
            for i in range(n):
                row = [z] * (n * m)
                for j in range(m):
                    row[i * m + j] = s[j]
                rels.append(row)
        return PresentedModule(R, n * m, rels)

    def base_change(self, levels=1):
        """Extension of scalars along F_p[s_N] -> F_p[s_{N+levels}]."""
        R = self.ring
        if not isinstance(R, MonomialAlgebra):
            raise UnsupportedError("base change needs a monomial algebra")
        S = R.at_level(R.level + levels)
        return PresentedModule(S, self.ngens, [[R.embed(a, levels) for a in r] for r in self.relations])

    def identity(self):
        return ModuleMap(self, self, [self.gen(i) for i in range(self.ngens)])


class ModuleMap:
    def __init__(self, source, target, matrix, check=True):
        self.source = source
        self.target = target
        self.matrix = [target.vector(r) for r in matrix]
        if len(self.matrix) != source.ngens:
            raise StructureError("one image row per source generator is required")
        if check and not self.is_well_defined():
            raise StructureError("relations of the source do not map into relations of the target")

    @property
    def ring(self):
        return self.source.ring

    def __call__(self, v):
        return vec_mat(self.ring, self.source.vector(v), self.matrix, self.target.ngens)

    def is_well_defined(self):
        return all(self.target.is_zero_element(self(r)) for r in self.source.relations)

    def compose(self, other):
        """self after other."""
        R = self.ring
        if not other.matrix:
            return ModuleMap(other.source, self.target, [])
        return ModuleMap(other.source, self.target, mat_mul(R, other.matrix, self.matrix)
                         if self.matrix else [[] for _ in other.matrix])

    def kernel_generators(self):
        R = self.ring
        m = self.source.ngens
        if m == 0:
            return []
        if self.target.ngens == 0:
            return [self.source.gen(i) for i in range(m)]
        K = left_kernel(R, self.matrix + self.target.relations)
        out = [row[:m] for row in K]
        return [v for v in out if not self.source.is_zero_element(v)]

    def kernel(self):
        """(K, inclusion K -> source)."""
        return self.source.submodule(self.kernel_generators())

    def cokernel(self):
        """(C, projection target -> C)."""
        C = PresentedModule(self.ring, self.target.ngens, self.target.relations + self.matrix)
        return C, ModuleMap(self.target, C, [self.target.gen(i) for i in range(self.target.ngens)],
                            check=False)

    def image_generators(self):
        return [r for r in self.matrix]

    def is_injective(self):
        return not self.kernel_generators()

    def is_surjective(self):
        return self.cokernel()[0].is_zero()

    def is_iso(self):
        return self.is_injective() and self.is_surjective()


# -- restriction of scalars between levels ---------------------------------------------

def split_element(R, a):
    """Write a in F_p[s_{N+1}] as sum_j s_{N+1}^j a_j with a_j in F_p[s_N], j < p."""
    p = R.p
    lower = R.at_level(R.level - 1)
    parts = [[] for _ in range(p)]
    for k, c in a:
        parts[k % p].append((k // p, c))
    return [lower._canon(t) for t in parts]


def restrict_vector(R, v):
    """Coordinates of v in R^n over the level-below ring: index i * p + j for s^j e_i."""
    out = []
    for a in v:
        out.extend(split_element(R, a))
    return out


def restrict_scalars(M):
    """M over F_p[s_{N+1}] viewed over F_p[s_N]; free of rank p on each generator."""
    R = M.ring
    p = R.p
    lower = R.at_level(R.level - 1)
    rels = []
    for r in M.relations:
        for j in range(p):
            shifted = [R.mul(R._canon([(j, 1)]), a) for a in r]
            rels.append(restrict_vector(R, shifted))
    return PresentedModule(lower, M.ngens * p, rels)


# -- level families ---------------------------------------------------------------------

class LevelFamily:
    """Modules M_N over F_p[s_N] for N in [start, n_max] with transitions M_N -> M_{N+1}.

    ``transitions[N]`` lists, for each generator of M_N, its image in M_{N+1}
    (coordinates in F_p[s_{N+1}]).
    """

    def __init__(self, p, modules, transitions, name="M", labels=None):
        self.p = p
        self.labels = labels
        self.modules = dict(modules)
        self.levels = sorted(self.modules)
        self.start, self.n_max = self.levels[0], self.levels[-1]
        if self.levels != list(range(self.start, self.n_max + 1)):
            raise StructureError("level family must cover a contiguous window")
        self.transitions = dict(transitions)
        self.name = name
        for N in self.levels[:-1]:
            if len(self.transitions[N]) != self.modules[N].ngens:
                raise StructureError(f"transition at level {N} has the wrong number of rows")
            if not self._transition_well_defined(N):
                raise StructureError(f"transition {N} -> {N + 1} does not respect relations")
        self._injective = {}

    def at(self, N):
        return self.modules[N]

    def ring(self, N):
        return MonomialAlgebra(self.p, N)

    def transport(self, v, N, M):
        """Image of a level-N element in M_M."""
        for L in range(N, M):
            R = self.ring(L)
            S = self.ring(L + 1)
            v = vec_mat(S, [R.embed(a) for a in v], self.transitions[L], self.modules[L + 1].ngens)
        return v

    def _transition_well_defined(self, N):
        return all(self.modules[N + 1].is_zero_element(self.transport(r, N, N + 1))
                   for r in self.modules[N].relations)

    def transition_injective(self, N):
        """Is M_N -> M_{N+1} injective?  Decided over F_p[s_N] by restriction of scalars."""
        if N not in self._injective:
            src = self.modules[N]
            S = self.ring(N + 1)
            tgt = restrict_scalars(self.modules[N + 1])
            rows = [restrict_vector(S, self.transport(src.gen(i), N, N + 1)) for i in range(src.ngens)]
            self._injective[N] = ModuleMap(src, tgt, rows, check=False).is_injective()
        return self._injective[N]

    def injective_between(self, N, M):
        return all(self.transition_injective(L) for L in range(N, M))

    @classmethod
    def base_change(cls, M, n_max, name="M"):
        """The family R_N (x) M for N from the level of M up to n_max."""
        N0 = M.ring.level
        modules = {N0: M}
        trans = {}
        for N in range(N0, n_max):
            modules[N + 1] = modules[N].base_change()
            trans[N] = [modules[N + 1].gen(i) for i in range(M.ngens)]
        return cls(M.ring.p, modules, trans, name)

    @classmethod
    def from_ideal(cls, I, name=None):
        """A colimit ideal as a family of submodules of R_N."""
        modules, gens = {}, {}
        for N in range(I.start, I.n_max + 1):
            R = I.ring(N)
            gens[N] = [[g] for g in I.at(N).gens]
            modules[N] = PresentedModule(R, 1).submodule(gens[N])[0]
        trans = {}
        for N in range(I.start, I.n_max):
            S = I.ring(N + 1)
            rows = []
            for g in gens[N]:
                x = solve_row(S, gens[N + 1], [I.ring(N).embed(g[0])], 1)
                if x is None:
                    raise StructureError(f"level {N} generator is not in level {N + 1}")
                rows.append(x)
            trans[N] = rows
        labels = {N: [I.ring(N).format(g) for g in I.at(N).gens] for N in modules}
        return cls(I.p, modules, trans, name or I.name, labels)

    def describe(self):
        return "; ".join(f"N={N}: {self.modules[N].describe()}" for N in self.levels)


class FamilyMap:
    """Level-wise maps f_N: M_N -> N_N commuting with transitions."""

    def __init__(self, source, target, matrices, check=True):
        if (source.start, source.n_max) != (target.start, target.n_max):
            raise StructureError("families live on different windows")
        self.source = source
        self.target = target
        self.maps = {N: ModuleMap(source.at(N), target.at(N), matrices[N], check=check)
                     for N in source.levels}
        if check:
            for N in source.levels[:-1]:
                for i in range(source.at(N).ngens):
                    g = source.at(N).gen(i)
                    a = self.maps[N + 1](source.transport(g, N, N + 1))
                    b = target.transport(self.maps[N](g), N, N + 1)
                    diff = [target.ring(N + 1).sub(x, y) for x, y in zip(a, b)]
                    if not target.at(N + 1).is_zero_element(diff):
                        raise StructureError(f"family map does not commute at level {N}")

    @classmethod
    def identity(cls, F):
        return cls(F, F, {N: [F.at(N).gen(i) for i in range(F.at(N).ngens)] for N in F.levels})

    def compose(self, other):
        """self after other."""
        mats = {N: self.maps[N].compose(other.maps[N]).matrix for N in self.source.levels}
        return FamilyMap(other.source, self.target, mats)

    def kernel(self):
        K, gens = {}, {}
        for N in self.source.levels:
            gens[N] = self.maps[N].kernel_generators()
            K[N] = self.source.at(N).submodule(gens[N])[0]
        trans = {}
        for N in self.source.levels[:-1]:
            S = self.source.ring(N + 1)
            rows = []
            basis = gens[N + 1] + self.source.at(N + 1).relations
            for g in gens[N]:
                v = self.source.transport(g, N, N + 1)
                x = solve_row(S, basis, v, len(v)) if basis else []
                rows.append(x[:len(gens[N + 1])])
            trans[N] = rows
        return LevelFamily(self.source.p, K, trans, "ker")

    def cokernel(self):
        C = {N: self.maps[N].cokernel()[0] for N in self.source.levels}
        return LevelFamily(self.source.p, C, dict(self.target.transitions), "coker")
