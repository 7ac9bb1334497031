"""Integer polynomials (backed by FLINT's fmpz_mpoly) and exact division."""
import flint

from .errors import IndivisibleError


def poly_ring(names, order="lex"):
    return flint.fmpz_mpoly_ctx.get(tuple(names), order)


def monomial_str(ctx, exps):
    names = ctx.names()
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def exact_div_int(f, k):
    """f / k for an integer polynomial f whose coefficients are all divisible by k.

    >>> ctx = poly_ring(["x", "y"]); x, y = ctx.gens()
    >>> exact_div_int(2*x + 4*y, 2) == x + 2*y
    True
    """
    k = int(k)
    if k <= 0:
        raise ValueError("divisor must be positive")
    ctx = f.context()
    terms = f.to_dict()
    out = {}
    for exps, c in terms.items():
        c = int(c)
        if c % k:
            raise IndivisibleError(monomial_str(ctx, exps), c, k)
        out[exps] = c // k
    return ctx.from_dict(out)


def compile_poly(f):
    """Terms of f as [(coef, ((var_index, exponent), ...)), ...] for fast specialisation."""
    out = []
    for exps, c in f.to_dict().items():
        out.append((int(c), tuple((i, e) for i, e in enumerate(exps) if e)))
    out.sort(key=lambda t: t[1])
    return out


def evaluate_compiled(terms, R, values, powers=None):
    """Evaluate compiled terms at raw values of the ring R."""
    zero = R.zero()
    if powers is None:
        powers = {}
    acc = zero
    for c, mono in terms:
        t = None
        for i, e in mono:
            v = values[i]
            if v == zero:
                t = zero
                break
            key = (i, e)
            pw = powers.get(key)
            if pw is None:
                pw = R.power(v, e)
                powers[key] = pw
            t = pw if t is None else R.mul(t, pw)
        if t is None:
            t = R.one()
        elif t == zero:
            continue
        if c != 1:
            t = R.mul(R.from_int(c), t)
        acc = R.add(acc, t)
    return acc
