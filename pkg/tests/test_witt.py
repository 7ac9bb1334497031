import itertools
import random

import pytest
from hypothesis import given, strategies as st

from almostwitt.errors import LengthError, StructureError
from almostwitt.rings import IntegerRing, MonomialAlgebra, ResidueRing, finite_field
from almostwitt.witt import (WittRing, alpha_kernel, annihilator_of_p_power, gen_structure_polys, ghost,
                             witt_add, witt_F, witt_perfect_check, witt_truncate, witt_V)


def ghost_int(p, v):
    return [sum(p ** j * v[j] ** (p ** (i - j)) for j in range(i + 1)) for i in range(len(v))]


def invert_ghost(p, w):
    """Integer Witt vector with the given ghost components (which must come from one)."""
    v = []
    for i, wi in enumerate(w):
        rest = wi - sum(p ** j * v[j] ** (p ** (i - j)) for j in range(i))
        assert rest % p ** i == 0
        v.append(rest // p ** i)
    return v


def test_structure_polynomials_length_two():
    polys = gen_structure_polys(2, 2)
    x0, x1, y0, y1 = polys.ctx.gens()
    assert polys.S[0] == x0 + y0 and polys.P[0] == x0 * y0
    assert polys.S[1] == x1 + y1 - x0 * y0
    assert polys.P[1] == x0 ** 2 * y1 + x1 * y0 ** 2 + 2 * x1 * y1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_degree_zero_polynomials(p):
    polys = gen_structure_polys(p, 1)
    x0, y0 = polys.ctx.gens()
    assert polys.S[0] == x0 + y0 and polys.P[0] == x0 * y0


def test_ghost_examples():
    Z = IntegerRing()
    W2 = WittRing(Z, 2, 2)
    assert ghost(W2, (1, 0)) == [1, 1]
    assert ghost(W2, (0, 1)) == [0, 2]
    assert ghost(WittRing(Z, 3, 2), (2, 1)) == [2, 11]


def test_addition_over_f2_is_z4():
    W = WittRing(ResidueRing(2), 2, 2)
    assert witt_add(W, (1, 0), (1, 0)) == (0, 1)
    # oracle: lift to Z, add ghost components, invert
    lifted = invert_ghost(2, [x + y for x, y in zip(ghost_int(2, [1, 0]), ghost_int(2, [1, 0]))])
    assert tuple(c % 2 for c in lifted) == (0, 1)
    # W_2(F_2) is cyclic of order 4
    multiples = [W.from_int(k) for k in range(4)]
    assert len(set(multiples)) == 4 and W.from_int(4) == W.zero()


def test_identities():
    W = WittRing(ResidueRing(4), 2, 3)
    for a in [(1, 2, 3), (0, 1, 1), (3, 3, 0)]:
        assert W.add(a, W.zero()) == a
        assert W.mul(W.one(), a) == a


def test_frobenius_examples():
    for p in (2, 3):
        W = WittRing(ResidueRing(p), p, 2)
        for a in W.element_list():
            assert witt_F(W, a) == (pow(a[0], p, p),)
    assert witt_F(WittRing(IntegerRing(), 2, 2), (1, 1)) == (3,)


def test_fv_is_p_on_length_three_over_z8():
    W = WittRing(ResidueRing(8), 2, 3)
    W4 = W.longer()
    two = W.from_int(2)
    assert all(W4.F(W.V(a)) == W.mul(two, a) for a in W.element_list())


def test_verschiebung():
    W1 = WittRing(IntegerRing(), 2, 1)
    assert witt_V(W1, (1,)) == (0, 1)
    for p in (2, 3):
        assert ghost(WittRing(IntegerRing(), p, 2), (0, 1)) == [0, p]


def test_projection_formula_exhaustive():
    W = WittRing(ResidueRing(2), 2, 1)
    W2 = W.longer()
    pairs = [(a, b) for a in W.element_list() for b in W2.element_list()]
    assert all(W2.mul(W.V(a), b) == W.V(W.mul(a, W2.F(b))) for a, b in pairs)
    W2b = WittRing(ResidueRing(2), 2, 2)
    assert len(list(itertools.product(W2b.element_list(), repeat=2))) == 16


def test_truncation():
    W = WittRing(IntegerRing(), 2, 3)
    assert witt_truncate(W, (4, 5, 6)) == (4, 5)
    with pytest.raises(LengthError):
        WittRing(IntegerRing(), 2, 1).truncate((1,))


def test_truncation_additive_over_z9():
    rng = random.Random(1)
    W = WittRing(ResidueRing(9), 3, 3)
    W2 = W.shorter()
    for _ in range(50):
        a, b = W.random_element(rng), W.random_element(rng)
        assert W.truncate(W.add(a, b)) == W2.add(W.truncate(a), W.truncate(b))


def test_truncation_commutes_with_double_verschiebung():
    Z = IntegerRing()
    W2, W3, W4 = (WittRing(Z, 2, n) for n in (2, 3, 4))
    W1 = WittRing(Z, 2, 1)
    for a in [(1, 2), (3, -1), (0, 5)]:
        assert W4.truncate(W3.V(W2.V(a))) == W2.V(W1.V(W2.truncate(a)))


def test_alpha_kernel_over_f2():
    W = WittRing(ResidueRing(2), 2, 2)
    K = alpha_kernel(W)
    assert sorted(K.members) == [(0, 0), (0, 1)]
    assert K.square_zero
    assert K.size() == len(annihilator_of_p_power(ResidueRing(2), 1)) == 2


def test_alpha_kernel_over_integers_is_zero():
    K = alpha_kernel(WittRing(IntegerRing(), 3, 3))
    assert K.members == [(0, 0, 0)]


@pytest.mark.parametrize("R", [ResidueRing(4), ResidueRing(9), finite_field(2, 2)])
def test_alpha_kernel_size_matches_annihilator(R):
    W = WittRing(R, R.p, 2)
    K = alpha_kernel(W)
    assert K.square_zero and K.size() == len(annihilator_of_p_power(R, 1))


def test_witt_perfect_examples():
    assert witt_perfect_check(ResidueRing(2), 2).status == "Surjective"
    assert witt_perfect_check(ResidueRing(4), 2).status == "Surjective"
    U = MonomialAlgebra(2, 0, "2", var="u")
    v = witt_perfect_check(U, 2)
    assert v.status == "NotSurjective" and v.witness == (U.gen(),)
    # the image of F is the set of p-th powers
    assert v.image_size == 2


def test_vectors_must_have_the_ring_length():
    W = WittRing(IntegerRing(), 2, 2)
    with pytest.raises(StructureError):
        witt_add(W, (1, 0, 0), (1, 0))


# -- properties ------------------------------------------------------------------------------

vec = st.integers(-30, 30)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_ghost_is_a_ring_homomorphism(p, length, data):
    W = WittRing(IntegerRing(), p, length)
    a = tuple(data.draw(st.lists(vec, min_size=length, max_size=length)))
    b = tuple(data.draw(st.lists(vec, min_size=length, max_size=length)))
    ga, gb = ghost_int(p, a), ghost_int(p, b)
    assert ghost_int(p, W.add(a, b)) == [x + y for x, y in zip(ga, gb)]
    assert ghost_int(p, W.mul(a, b)) == [x * y for x, y in zip(ga, gb)]


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_ghost_of_verschiebung_and_frobenius(p, length, data):
    W = WittRing(IntegerRing(), p, length)
    a = tuple(data.draw(st.lists(vec, min_size=length, max_size=length)))
    g, gv = ghost_int(p, a), ghost_int(p, W.V(a))
    assert gv == [0] + [p * x for x in g]
    if length >= 2:
        assert ghost_int(p, W.F(a)) == g[1:]


@given(st.sampled_from([ResidueRing(4), ResidueRing(9), finite_field(2, 2)]), st.integers(0, 10 ** 6))
def test_witt_ring_axioms_over_finite_rings(R, seed):
    rng = random.Random(seed)
    W = WittRing(R, R.p, 2)
    a, b, c = (W.random_element(rng) for _ in range(3))
    assert W.add(a, b) == W.add(b, a)
    assert W.mul(a, W.add(b, c)) == W.add(W.mul(a, b), W.mul(a, c))
    assert W.add(a, W.neg(a)) == W.zero()
