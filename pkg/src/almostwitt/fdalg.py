"""Finite-dimensional commutative F_p-algebras and their modules.

Vectors are lists of ints mod p and matrices act on rows: ``v -> v A``.  An
algebra is a basis with structure constants; a module is a k-space with one
action matrix per basis element of the algebra.
"""
import itertools

from .errors import StructureError


# -- linear algebra over F_p ------------------------------------------------------------

def rref(rows, p):
    """(reduced rows, pivot columns) of the row space."""
    M = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows, p):
    return len(rref(rows, p)[0]) if rows else 0


def reduce_vec(basis, pivots, v, p):
    v = [x % p for x in v]
    for row, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return v


def in_span(rows, v, p):
    if not rows:
        return not any(x % p for x in v)
    B, piv = rref(rows, p)
    return not any(reduce_vec(B, piv, v, p))


def solve(A, b, p):
    """Some x with x A = b, or None."""
    n = len(A)
    m = len(b)
    if n == 0:
        return [] if not any(x % p for x in b) else None
    # solve via transposed system on columns
    cols = [[A[i][j] for i in range(n)] + [b[j]] for j in range(m)]
    B, piv = rref(cols, p)
    if n in piv:
        return None
    x = [0] * n
    for row, c in zip(B, piv):
        x[c] = row[n] % p
    return x


def mat_mul(A, B, p):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(r) if a) % p for j in range(cols)] for r in A]


def vec_mat(v, A, p, cols=None):
    if cols is None:
        cols = len(A[0]) if A else 0
    out = [0] * cols
    for k, a in enumerate(v):
        if a:
            row = A[k]
            for j in range(cols):
                out[j] += a * row[j]
    return [x % p for x in out]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def inverse(A, p):
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    B, piv = rref(aug, p)
    if piv[:n] != list(range(n)) or len(B) < n:
        raise StructureError("matrix is not invertible")
    return [row[n:] for row in B]


class Quotient:
    """The quotient of k^n by a subspace, with coordinates on the non-pivot columns."""

    def __init__(self, n, sub, p):
        self.n = n
        self.p = p
        self.B, self.piv = rref(sub, p) if sub else ([], [])
        pset = set(self.piv)
        self.free = [c for c in range(n) if c not in pset]
        self.dim = len(self.free)

    def proj(self, v):
        r = reduce_vec(self.B, self.piv, v, self.p)
        return [r[c] for c in self.free]

    def lift(self, q):
        v = [0] * self.n
        for c, x in zip(self.free, q):
            v[c] = x % self.p
        return v

    def basis_lift(self, i):
        return self.lift([1 if j == i else 0 for j in range(self.dim)])


def kernel_of(A, p):
    """Basis of the kernel of x -> x A (rows)."""
    n = len(A)
    if n == 0:
        return []
    m = len(A[0])
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    B, piv = rref(aug, p)
    return [row[m:] for row, c in zip(B, piv) if c >= m]


# -- algebras ---------------------------------------------------------------------------

class FDAlgebra:
    def __init__(self, p, table, unit, names=None, name="A"):
        self.p = p
        self.dim = len(unit)
        self.table = table
        self.unit = list(unit)
        self.names = names or [f"b{i}" for i in range(self.dim)]
        self.name = name

    @classmethod
    def monomial(cls, p, basis, names=None, var_names="xyz", name="A"):
        """k[vars] / (monomials outside basis); basis is a down-closed list of exponent tuples."""
        basis = [tuple(b) for b in basis]
        index = {b: i for i, b in enumerate(basis)}
        d = len(basis)
        table = []
        for a in basis:
            row = []
            for b in basis:
                c = tuple(x + y for x, y in zip(a, b))
                v = [0] * d
                if c in index:
                    v[index[c]] = 1
                row.append(v)
            table.append(row)
        nv = len(basis[0]) if basis else 0
        unit = [0] * d
        unit[index[(0,) * nv]] = 1
        if names is None:
            names = []
            for b in basis:
                parts = [f"{var_names[i]}^{e}" if e > 1 else var_names[i] for i, e in enumerate(b) if e]
                names.append("*".join(parts) or "1")
        return cls(p, table, unit, names, name)

    @classmethod
    def from_ring(cls, R, name=None):
        """A finite commutative F_p-algebra given as a Ring, via an F_p-basis found greedily."""
        p = R.characteristic()
        elems = R.element_list()
        basis = []
        span = {R.zero()}
        for x in elems:
            if x in span:
                continue
            basis.append(x)
            span = {R.add(y, R.mul(R.from_int(c), x)) for y in span for c in range(p)}
        # coordinates by enumeration of combinations
        d = len(basis)
        table_coords = {}
        for cs in itertools.product(range(p), repeat=d):
            v = R.zero()
            for c, b in zip(cs, basis):
                v = R.add(v, R.mul(R.from_int(c), b))
            table_coords[v] = list(cs)
        if len(table_coords) != len(elems):
            raise StructureError(f"{R.spec()} is not an F_{p}-algebra of the expected size")
        table = [[table_coords[R.mul(a, b)] for b in basis] for a in basis]
        A = cls(p, table, table_coords[R.one()], [R.format(b) for b in basis], name or R.spec())
        A.ring, A.coords, A.basis_elems = R, table_coords, basis
        return A

    def mul(self, u, v):
        p, d = self.p, self.dim
        out = [0] * d
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += ab * c
        return [x % p for x in out]

    def add(self, u, v):
        return [(a + b) % self.p for a, b in zip(u, v)]

    def sub(self, u, v):
        return [(a - b) % self.p for a, b in zip(u, v)]

    def basis(self, i):
        return [1 if j == i else 0 for j in range(self.dim)]

    def zero(self):
        return [0] * self.dim

    def elements(self):
        for cs in itertools.product(range(self.p), repeat=self.dim):
            yield list(cs)

    def power(self, u, k):
        out = list(self.unit)
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def format(self, u):
        terms = []
        for c, n in zip(u, self.names):
            if c:
                terms.append(n if c == 1 and n != "1" else (str(c) if n == "1" else f"{c}*{n}"))
        return " + ".join(terms) or "0"

    def mult_matrix(self, u):
        """Matrix of x -> x u."""
        return [self.mul(self.basis(i), u) for i in range(self.dim)]

    def radical_basis(self):
        """Nilpotent elements among a basis of the radical (monomial algebras: all non-unit basis elements)."""
        rows = []
        for i in range(self.dim):
            b = self.basis(i)
            if not any(self.power(b, self.dim + 1)):
                rows.append(b)
        return rows

    def __repr__(self):
        return f"FDAlgebra({self.name}, dim {self.dim} over F_{self.p})"


class AlgebraMap:
    def __init__(self, source, target, matrix, name="f", check=True):
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix]
        self.name = name
        if check and not self.is_homomorphism():
            raise StructureError(f"{name} is not an algebra homomorphism")

    def __call__(self, u):
        return vec_mat(u, self.matrix, self.source.p, self.target.dim)

    def is_homomorphism(self):
        A, B = self.source, self.target
        if self(A.unit) != B.unit:
            return False
        for i in range(A.dim):
            for j in range(A.dim):
                if self(A.mul(A.basis(i), A.basis(j))) != B.mul(self.matrix[i], self.matrix[j]):
                    return False
        return True

    def compose(self, other):
        """self after other."""
        return AlgebraMap(other.source, self.target, mat_mul(other.matrix, self.matrix, self.source.p),
                          f"{self.name}.{other.name}", check=False)

    def is_surjective(self):
        return rank(self.matrix, self.source.p) == self.target.dim

    def is_injective(self):
        return rank(self.matrix, self.source.p) == self.source.dim


# -- modules ----------------------------------------------------------------------------

class FDModule:
    """A module over an FDAlgebra: action[i] is the matrix of v -> b_i v."""

    def __init__(self, algebra, dim, action, name="M", check=True):
        self.A = algebra
        self.dim = dim
        self.action = action
        self.name = name
        if check:
            self._check()

    def _check(self):
        A, p = self.A, self.A.p
        if mat_mul(identity(self.dim), self.act_matrix(A.unit), p) != identity(self.dim):
            raise StructureError("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.act_matrix(A.mul(A.basis(i), A.basis(j)))
                rhs = mat_mul(self.action[i], self.action[j], p)
                if lhs != rhs:
                    raise StructureError("action is not multiplicative")

    @property
    def p(self):
        return self.A.p

    def act_matrix(self, a):
        p = self.p
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, c in enumerate(a):
            if c:
                for r in range(self.dim):
                    for s in range(self.dim):
                        out[r][s] = (out[r][s] + c * self.action[i][r][s]) % p
        return out

    def act(self, a, v):
        return vec_mat(v, self.act_matrix(a), self.p, self.dim)

    def basis(self, i):
        return [1 if j == i else 0 for j in range(self.dim)]

    @classmethod
    def free(cls, A, r=1, name=None):
        d = A.dim
        action = []
        for i in range(d):
            M = [[0] * (r * d) for _ in range(r * d)]
            for k in range(r):
                for j in range(d):
                    prod = A.mul(A.basis(i), A.basis(j))
                    for l, c in enumerate(prod):
                        M[k * d + j][k * d + l] = c
            action.append(M)
        return cls(A, r * d, action, name or f"{A.name}^{r}", check=False)

    @classmethod
    def zero(cls, A):
        return cls(A, 0, [[] for _ in range(A.dim)], "0", check=False)

    def submodule_span(self, vectors):
        """A-span of the vectors as a list of basis rows (rref)."""
        rows = []
        for v in vectors:
            for i in range(self.A.dim):
                rows.append(self.act(self.A.basis(i), v))
        return rref(rows, self.p)[0] if rows else []

    def quotient(self, vectors, name=None):
        """(M / A-span(vectors), Quotient helper)."""
        sub = self.submodule_span(vectors)
        Q = Quotient(self.dim, sub, self.p)
        action = []
        for i in range(self.A.dim):
            action.append([Q.proj(self.act(self.A.basis(i), Q.basis_lift(j))) for j in range(Q.dim)])
        return FDModule(self.A, Q.dim, action, name or f"{self.name}/N", check=False), Q

    def restrict(self, f):
        """View a module over f.target as a module over f.source."""
        A = f.source
        action = [self.act_matrix(f.matrix[i]) for i in range(A.dim)]
        return FDModule(A, self.dim, action, self.name, check=False)

    def direct_sum(self, other):
        d1, d2 = self.dim, other.dim
        action = []
        for i in range(self.A.dim):
            M = [[0] * (d1 + d2) for _ in range(d1 + d2)]
            for r in range(d1):
                M[r][:d1] = self.action[i][r]
            for r in range(d2):
                M[d1 + r][d1:] = other.action[i][r]
            action.append(M)
        return FDModule(self.A, d1 + d2, action, f"{self.name}+{other.name}", check=False)

    def restrict_to(self, rows, name=None):
        """The submodule with the given k-basis (must be A-stable); coordinates in that basis."""
        p = self.p
        action = []
        for i in range(self.A.dim):
            M = []
            for v in rows:
                x = solve(rows, self.act(self.A.basis(i), v), p)
                if x is None:
                    raise StructureError("subspace is not a submodule")
                M.append(x)
            action.append(M)
        return FDModule(self.A, len(rows), action, name or self.name, check=False)

    def radical_quotient_dim(self):
        """dim_k M / rad(A) M."""
        rad = self.A.radical_basis()
        rows = [self.act(r, self.basis(j)) for r in rad for j in range(self.dim)]
        return self.dim - (rank(rows, self.p) if rows else 0)

    def is_linear_map(self, other, matrix):
        """Does the k-linear map given by matrix commute with the A-actions?"""
        p = self.p
        for i in range(self.A.dim):
            if mat_mul(self.action[i], matrix, p) != mat_mul(matrix, other.action[i], p):
                return False
        return True

    def __repr__(self):
        return f"FDModule({self.name}, dim {self.dim} over {self.A.name})"


def base_change(f, M, name=None):
    """(B (x)_A M, unit matrix M -> B (x)_A M, Quotient helper) for f: A -> B.

    B (x)_k M has basis b_i (x) m_k at index i * dim M + k; the tensor over A
    is its quotient by (b f(a)) (x) m - b (x) (a m).
    """
    A, B = f.source, f.target
    p = A.p
    dM = M.dim
    n = B.dim * dM
    rels = []
    for l in range(A.dim):
        fa = f.matrix[l]
        am = M.action[l]
        for i in range(B.dim):
            bfa = B.mul(B.basis(i), fa)
            for k in range(dM):
                v = [0] * n
                for i2, c in enumerate(bfa):
                    if c:
                        v[i2 * dM + k] = (v[i2 * dM + k] + c) % p
                for k2, c in enumerate(am[k]):
                    if c:
                        v[i * dM + k2] = (v[i * dM + k2] - c) % p
                if any(v):
                    rels.append(v)
    Q = Quotient(n, rels, p)
    action = []
    for i in range(B.dim):
        rows = []
        for j in range(Q.dim):
            w = Q.basis_lift(j)
            out = [0] * n
            for i2 in range(B.dim):
                for k in range(dM):
                    c = w[i2 * dM + k]
                    if c:
                        prod = B.mul(B.basis(i), B.basis(i2))
                        for i3, e in enumerate(prod):
                            if e:
                                out[i3 * dM + k] = (out[i3 * dM + k] + c * e) % p
            rows.append(Q.proj(out))
        action.append(rows)
    BM = FDModule(B, Q.dim, action, name or f"{B.name}(x){M.name}", check=False)
    unit_idx = B.unit
    unit = []
    for k in range(dM):
        v = [0] * n
        for i, c in enumerate(unit_idx):
            if c:
                v[i * dM + k] = c
        unit.append(Q.proj(v))
    BM.tensor_quotient, BM.tensor_factor = Q, M
    return BM, unit


def extend_scalars_map(f, M, BM, N, phi):
    """The B-linear map B (x)_A M -> N, b (x) m -> b phi(m), for A-linear phi: M -> N.

    N is a module over f.target; phi is a dim M x dim N matrix.
    """
    B = f.target
    p = B.p
    Q = BM.tensor_quotient
    dM = M.dim
    rows = []
    for j in range(BM.dim):
        w = Q.basis_lift(j)
        out = [0] * N.dim
        for i in range(B.dim):
            for k in range(dM):
                c = w[i * dM + k]
                if c:
                    img = N.act(B.basis(i), phi[k])
                    out = [(a + c * b) % p for a, b in zip(out, img)]
        rows.append(out)
    return rows


def is_bijective(matrix, n_src, n_tgt, p):
    return n_src == n_tgt and (n_src == 0 or rank(matrix, p) == n_src)


def image_span(matrix, p):
    return rref(matrix, p)[0] if matrix else []
