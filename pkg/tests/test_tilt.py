import random

import pytest
from hypothesis import given, settings, strategies as st

from almostwitt.errors import PrecisionError, PreconditionError, StructureError
from almostwitt.rings import (IntegerRing, MonomialAlgebra, ProductRing, ResidueRing,
                              finite_field)
from almostwitt.tilt import isomorphism_report, perfection, tilt_construct


def test_tilt_of_z4_is_f2():
    for P in (0, 1, 3):
        T = tilt_construct(ResidueRing(4), 2, P)
        els = T.elements()
        assert len(els) == 2
        # iterated square roots in F_2 are constant
        assert {x.seq for x in els} == {(0,) * (P + 1), (1,) * (P + 1)}
        assert isomorphism_report(T)["iso"]


def test_tilt_of_perfect_ring():
    F4 = finite_field(2, 2)
    T = tilt_construct(F4, 2, 3)
    assert T.base is F4
    assert isomorphism_report(T) == {"iso": True, "checked": 4, "inverse": "last coordinate"}


def test_t_flat():
    R = MonomialAlgebra(2, 4, None, 4)
    T = tilt_construct(R, 2, 4)
    B = T.base
    assert B.spec() == MonomialAlgebra(2, 4).spec()
    tf = T.t_flat()
    assert tf.seq == tuple(B.monomial(e) for e in ("1", "1/2", "1/4", "1/8", "1/16"))
    assert T.equal(tf, T.from_root(B.gen()))


def test_t_flat_needs_enough_roots():
    T = tilt_construct(MonomialAlgebra(2, 2), 2, 4)
    with pytest.raises(PrecisionError):
        T.t_flat()


def test_incompatible_sequence_rejected():
    T = tilt_construct(MonomialAlgebra(2, 2), 2, 1)
    B = T.base
    with pytest.raises(StructureError):
        T.element([B.gen(), B.gen()])


def test_addition_consumes_precision():
    T = tilt_construct(ResidueRing(4), 2, 2)
    one = T.one()
    s = T.add(one, one)
    assert s.precision == 1 and s.seq == (0, 0)
    with pytest.raises(PrecisionError):
        T.add(T.truncate(one, 0), one)


def test_tilt_needs_a_prime():
    with pytest.raises(PreconditionError):
        tilt_construct(IntegerRing())


def test_perfection_of_polynomial_ring():
    S = MonomialAlgebra(2, 0, var="s")
    P = perfection(S, window=3)
    assert P.levels == (0, 3)
    assert P.spec() == "perfection{monomial_algebra{p=2, level=0, var=s}, window=0..3}"
    assert [c["root"] for c in P.certificates[:3]] == ["s^(1/2)", "s^(1/4)", "s^(1/8)"]


def test_perfection_is_a_fixed_point():
    P = perfection(MonomialAlgebra(2, 0))
    assert perfection(P) is P


def test_perfection_kills_nilpotents():
    U = MonomialAlgebra(2, 0, "2", var="u")
    assert perfection(U).spec() == ResidueRing(2).spec()
    Z2 = ProductRing([ResidueRing(2), U])
    P = perfection(Z2)
    assert len(P.ring.element_list()) == 4 and P.certificates[0] == {"nilradical_size": 2}


def test_perfection_needs_characteristic_p():
    with pytest.raises(PreconditionError):
        perfection(IntegerRing())
    with pytest.raises(PreconditionError):
        perfection(ResidueRing(6))


# -- properties ----------------------------------------------------------------------------

BASES = [(ResidueRing(4), 2), (ResidueRing(9), 3), (finite_field(2, 2), 2), (MonomialAlgebra(2, 1, "2"), 2),
         (MonomialAlgebra(2, 2, None, 4), 2), (ProductRing([ResidueRing(2), ResidueRing(8)]), 2)]


@given(st.sampled_from(BASES), st.integers(1, 4), st.integers(0, 10 ** 6))
@settings(max_examples=40)
def test_tilt_ring_axioms(base, P, seed):
    R, p = base
    T = tilt_construct(R, p, P)
    rng = random.Random(seed)
    a, b, c = (T.from_root(T.base.random_element(rng)) for _ in range(3))
    for x in (a, b, c):
        assert T.check(x)
    assert T.equal(T.add(a, b), T.add(b, a))
    assert T.equal(T.mul(a, b), T.mul(b, a))
    assert T.equal(T.mul(T.mul(a, b), c), T.mul(a, T.mul(b, c)))
    if P >= 2:
        assert T.equal(T.add(T.add(a, b), c), T.add(a, T.add(b, c)))
        assert T.equal(T.mul(a, T.add(b, c)), T.add(T.mul(a, b), T.mul(a, c)))
    assert T.equal(T.mul(a, T.one()), a)
    assert T.equal(T.add(a, T.zero()), a)
    assert T.equal(T.add(a, T.neg(a)), T.zero())
    assert T.check(T.add(a, b)) and T.check(T.mul(a, b))


@given(st.sampled_from(BASES), st.integers(0, 4), st.integers(0, 10 ** 6))
@settings(max_examples=40)
def test_sharp_is_multiplicative(base, P, seed):
    R, p = base
    T = tilt_construct(R, p, P)
    rng = random.Random(seed)
    a, b = (T.from_root(T.base.random_element(rng)) for _ in range(2))
    assert T.sharp(T.mul(a, b)) == T.base.mul(T.sharp(a), T.sharp(b))
    assert T.sharp(a) == T.base.power(T.last(a), p ** P)


@given(st.sampled_from([ResidueRing(2), ResidueRing(3), finite_field(2, 2), finite_field(3, 2),
                        MonomialAlgebra(2, 0, "2", var="u"), MonomialAlgebra(3, 1, "1"),
                        MonomialAlgebra(2, 0), ProductRing([ResidueRing(2), MonomialAlgebra(2, 0, "3")])]))
@settings(max_examples=20)
def test_perfection_idempotent(A):
    P = perfection(A)
    again = perfection(P)
    assert again is P
    if P.levels is None:
        assert perfection(P.ring).spec() == P.ring.spec()
        assert P.frobenius_bijective()[0]["frobenius_bijective"]


@given(st.sampled_from(BASES), st.integers(0, 3))
@settings(max_examples=20)
def test_last_coordinate_is_an_isomorphism(base, P):
    R, p = base
    T = tilt_construct(R, p, P)
    if T.base.is_finite and len(T.base.element_list()) > 64:
        return
    if not T.base.is_finite:
        rng = random.Random(P)
        rep = isomorphism_report(T, [T.base.random_element(rng) for _ in range(6)])
    else:
        rep = isomorphism_report(T)
    assert rep["iso"]
