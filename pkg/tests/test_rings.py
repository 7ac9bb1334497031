import flint
import pytest
from hypothesis import given, strategies as st

from almostwitt.errors import IndivisibleError, StructureError
from almostwitt.exponents import ExponentQ
from almostwitt.parse import parse_element, parse_ring
from almostwitt.poly import exact_div_int, poly_ring
from almostwitt.rings import IntegerRing, MonomialAlgebra, ProductRing, ResidueRing, finite_field
from almostwitt.snf import diagonal, mat_mul, smith_normal_form


def el(R, text):
    return parse_element(R, text)


def test_monomial_exponents_add():
    R = MonomialAlgebra(2, 2)
    assert R.mul(R.monomial("1/2"), R.monomial("1/4")) == R.monomial("3/4")


def test_residue_addition():
    Z4 = ResidueRing(4)
    assert Z4.add(3, 3) == 2


def test_truncated_square():
    R = MonomialAlgebra(2, 0, "3", var="s")
    a = el(R, "1+s")
    assert R.mul(a, a) == el(R, "1+s^2")


def test_exact_div_int():
    ctx = poly_ring(["x", "y"])
    x, y = ctx.gens()
    assert exact_div_int(2 * x + 4 * y, 2) == x + 2 * y
    assert exact_div_int(x ** 2 + y ** 2 - (x + y) ** 2, 2) == -x * y
    with pytest.raises(IndivisibleError) as e:
        exact_div_int(x ** 3 + y ** 3 - (x + y) ** 3, 2)
    assert e.value.coefficient % 2 == 1


def test_frobenius_examples():
    R2 = MonomialAlgebra(2, 2)
    assert R2.frobenius(R2.monomial("1/4")) == R2.monomial("1/2")
    R1 = MonomialAlgebra(2, 1)
    assert R1.frobenius(el(R1, "1+t^(1/2)")) == el(R1, "1+t")
    U = MonomialAlgebra(2, 0, "2", var="u")
    assert U.frobenius(U.gen()) == U.zero()


def test_snf_examples():
    Z = IntegerRing()
    D, U, V = smith_normal_form([[2, 0], [0, 3]], Z)
    assert D == [[1, 0], [0, 6]]
    D, _, _ = smith_normal_form([[1, 0], [0, 1]], Z)
    assert D == [[1, 0], [0, 1]]
    S = MonomialAlgebra(2, 0, var="s")
    s = S.gen()
    D, U, V = smith_normal_form([[s, S.mul(s, s)]], S)
    assert diagonal(D) == [s] and D[0][1] == S.zero()
    assert mat_mul(S, mat_mul(S, U, [[s, S.mul(s, s)]]), V) == D


def test_level_embedding():
    R1 = MonomialAlgebra(2, 1)
    assert R1.embed(R1.monomial("1/2")) == MonomialAlgebra(2, 2).monomial("2/4")
    assert R1.embed(R1.one()) == R1.at_level(2).one()
    R0 = MonomialAlgebra(2, 0)
    assert R0.embed(el(R0, "1+t"), 3) == el(MonomialAlgebra(2, 3), "1+t")


def test_exponent_normal_form():
    assert ExponentQ.make(2, 2, 2) == ExponentQ(1, 1, 2)
    assert ExponentQ.parse("2/4", 2) == ExponentQ.parse("1/2", 2)
    with pytest.raises(ValueError):
        ExponentQ(2, 1, 2)


def test_monomial_missing_at_level():
    with pytest.raises(StructureError):
        MonomialAlgebra(2, 0).monomial("1/2")


def test_ring_spec_round_trip():
    for text in ("residue{4}", "monomial_algebra{p=2, level=3}", "product{residue{2}, residue{4}}",
                 "monomial_algebra{p=3, level=1, quotient=[t^2], var=t}"):
        R = parse_ring(text)
        assert parse_ring(R.spec()).spec() == R.spec()


def test_finite_field_units():
    F = finite_field(2, 2)
    assert len(F.element_list()) == 4
    assert all(F.mul(a, F.inverse(a)) == F.one() for a in F.element_list() if a != F.zero())


# -- properties ------------------------------------------------------------------------------

RINGS = [ResidueRing(4), ResidueRing(9), finite_field(2, 2), MonomialAlgebra(2, 0, "3", var="s"),
         MonomialAlgebra(3, 1, "2"), ProductRing([ResidueRing(2), ResidueRing(4)]),
         MonomialAlgebra(2, 2), MonomialAlgebra(2, 1, None, 4)]


@st.composite
def ring_and_elements(draw, k=3):
    R = draw(st.sampled_from(RINGS))
    seed = draw(st.integers(0, 10 ** 6))
    import random
    rng = random.Random(seed)
    return (R,) + tuple(R.random_element(rng) for _ in range(k))


@given(ring_and_elements())
def test_ring_axioms(data):
    R, a, b, c = data
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.zero()) == a and R.mul(a, R.one()) == a
    assert R.add(a, R.neg(a)) == R.zero()


@given(ring_and_elements(1))
def test_canonical_form_idempotent(data):
    R, a = data
    assert parse_element(R, R.format(a)) == a
    assert R.add(a, R.zero()) == a


@given(st.sampled_from([MonomialAlgebra(2, 2), MonomialAlgebra(3, 1), MonomialAlgebra(2, 1, "3")]),
       st.integers(0, 10 ** 6))
def test_frobenius_is_ring_homomorphism(R, seed):
    import random
    rng = random.Random(seed)
    a, b = R.random_element(rng), R.random_element(rng)
    F = R.frobenius
    assert F(R.add(a, b)) == R.add(F(a), F(b))
    assert F(R.mul(a, b)) == R.mul(F(a), F(b))
    assert F(a) == R.power(a, R.p)


@given(st.integers(0, 10 ** 6))
def test_embedding_is_ring_homomorphism(seed):
    import random
    rng = random.Random(seed)
    R = MonomialAlgebra(2, 1)
    a, b = R.random_element(rng), R.random_element(rng)
    assert R.embed(R.add(a, b)) == R.at_level(2).add(R.embed(a), R.embed(b))
    assert R.embed(R.mul(a, b)) == R.at_level(2).mul(R.embed(a), R.embed(b))


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=3))
def test_snf_over_integers(M):
    Z = IntegerRing()
    D, U, V = smith_normal_form(M, Z)
    assert mat_mul(Z, mat_mul(Z, U, M), V) == D
    d = [abs(x) for x in diagonal(D)]
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])
    assert flint.fmpz_mat(M).rank() == sum(1 for x in d if x)
