"""Smith normal form over Euclidean rings, plus row-space linear algebra over PIDs.

Matrices are lists of rows of raw ring values.  Modules use the row
convention: vectors are rows and a matrix acts by ``x -> x A``.
"""
from .errors import UnsupportedError
from .rings import IntegerRing, MonomialAlgebra, QuotientRing, ResidueRing, euclid_divides


def identity(R, n):
    return [[R.one() if i == j else R.zero() for j in range(n)] for i in range(n)]


def mat_mul(R, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([R.sum(R.mul(row[k], B[k][j]) for k in range(inner)) for j in range(cols)])
    return out


def vec_mat(R, v, A, cols=None):
    if cols is None:
        cols = len(A[0]) if A else 0
    return [R.sum(R.mul(v[k], A[k][j]) for k in range(len(A))) for j in range(cols)]


def _snf_euclid(R, M):
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(R, m)
    V = identity(R, n)
    z = R.zero()

    def row_op(i, k, c):  # row_i += c * row_k
        A[i] = [R.add(a, R.mul(c, b)) for a, b in zip(A[i], A[k])]
        U[i] = [R.add(a, R.mul(c, b)) for a, b in zip(U[i], U[k])]

    def col_op(j, k, c):  # col_j += c * col_k
        for r in A:
            r[j] = R.add(r[j], R.mul(c, r[k]))
        for r in V:
            r[j] = R.add(r[j], R.mul(c, r[k]))

    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] != z:
                        nm = R.euclid_norm(A[i][j])
                        if best is None or nm < best[0]:
                            best = (nm, i, j)
            if best is None:
                return A, U, V
            _, i, j = best
            if i != t:
                A[i], A[t] = A[t], A[i]
                U[i], U[t] = U[t], U[i]
            if j != t:
                for r in A:
                    r[j], r[t] = r[t], r[j]
                for r in V:
                    r[j], r[t] = r[t], r[j]
            piv = A[t][t]
            changed = False
            for i in range(t + 1, m):
                if A[i][t] != z:
                    q, r = R.euclid_divmod(A[i][t], piv)
                    row_op(i, t, R.neg(q))
                    changed = changed or r != z
            for j in range(t + 1, n):
                if A[t][j] != z:
                    q, r = R.euclid_divmod(A[t][j], piv)
                    col_op(j, t, R.neg(q))
                    changed = changed or r != z
            if changed:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not euclid_divides(R, piv, A[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_op(t, bad, R.one())
                continue
            break
        normed, u = R.unit_normal(A[t][t])
        if u != R.one():
            ui = R.inverse(u)
            A[t] = [R.mul(ui, a) for a in A[t]]
            U[t] = [R.mul(ui, a) for a in U[t]]
        t += 1
    return A, U, V


def _lift_setup(R):
    """(euclidean base, reduce function) for principal residue rings."""
    if isinstance(R, ResidueRing):
        return IntegerRing(), R.from_int, [R.m]
    if isinstance(R, MonomialAlgebra) and R.cut is not None and R.q == R.p:
        base = MonomialAlgebra(R.p, R.level, None, None, R.var)
        return base, lambda a: R._canon(a), [base._canon([(R.cut, 1)])]
    if isinstance(R, QuotientRing) and R.base.euclidean:
        return R.base, R.reduce, [R.modulus]
    return None


def smith_normal_form(M, R):
    """(D, U, V) with U*M*V = D diagonal, d_i | d_{i+1}, U and V invertible.

    Euclidean rings are handled directly; Z/n and truncated F_p[s] are
    lifted to Z resp. F_p[s] and the result reduced.

    >>> D, U, V = smith_normal_form([[2, 0], [0, 3]], IntegerRing())
    >>> D
    [[1, 0], [0, 6]]
    """
    if R.euclidean:
        return _snf_euclid(R, M)
    setup = _lift_setup(R)
    if setup is None:
        raise UnsupportedError(f"Smith normal form not available over {R.spec()}")
    base, red, _ = setup
    D, U, V = _snf_euclid(base, [list(r) for r in M])
    D = [[red(x) for x in r] for r in D]
    U = [[red(x) for x in r] for r in U]
    V = [[red(x) for x in r] for r in V]
    return D, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank_from_snf(R, D):
    return sum(1 for d in diagonal(D) if d != R.zero())


def determinant(R, A):
    """Cofactor expansion; only used on small matrices."""
    n = len(A)
    if n == 0:
        return R.one()
    if n == 1:
        return A[0][0]
    total = R.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = R.mul(A[0][j], determinant(R, minor))
        total = R.add(total, term if j % 2 == 0 else R.neg(term))
    return total


# -- PID row-space helpers -------------------------------------------------------

def solve_row(R, rows, v, ncols=None):
    """Some x with x * rows = v, or None.  R must be Euclidean."""
    z = R.zero()
    if ncols is None:
        ncols = len(v)
    if not rows:
        return [] if all(a == z for a in v) else None
    D, U, V = _snf_euclid(R, rows)
    w = vec_mat(R, v, V, ncols)
    d = diagonal(D)
    y = [z] * len(rows)
    for j in range(ncols):
        dj = d[j] if j < len(d) else z
        if dj == z:
            if w[j] != z:
                return None
        else:
            q, r = R.euclid_divmod(w[j], dj)
            if r != z:
                return None
            y[j] = q
    return vec_mat(R, y, U, len(U))


def row_space_contains(R, rows, v):
    return solve_row(R, rows, v) is not None


def left_kernel(R, A, nrows=None):
    """Basis of {x : x * A = 0}."""
    if nrows is None:
        nrows = len(A)
    if nrows == 0:
        return []
    if not A or not A[0]:
        return identity(R, nrows)
    D, U, V = _snf_euclid(R, A)
    r = rank_from_snf(R, D)
    return [U[i] for i in range(r, nrows)]
