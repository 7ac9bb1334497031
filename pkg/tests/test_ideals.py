import pytest

from almostwitt.errors import PreconditionError, StructureError
from almostwitt.ideals import (ColimitIdeal, FGIdeal, all_ideals, condition_b_check, idempotency_check,
                               standard_m)
from almostwitt.lifting import (GluingSquare, gluing_lift, gluing_lifts_all, idempotent_lifts, nilpotent_lift,
                                witt_lift, witt_lift_monomial)
from almostwitt.parse import parse_element
from almostwitt.rings import MonomialAlgebra, ProductRing, ResidueRing, RingMap


def test_product_of_principal_ideals():
    S = MonomialAlgebra(2, 0, var="s")
    s = S.gen()
    assert FGIdeal(S, [s]).product(FGIdeal(S, [s])).equals(FGIdeal(S, [S.mul(s, s)]))


def test_membership_by_division():
    S = MonomialAlgebra(2, 0, var="s")
    s2, s3 = S.power(S.gen(), 2), S.power(S.gen(), 3)
    assert FGIdeal(S, [s2]).contains(s3)
    assert not FGIdeal(S, [s3]).contains(s2)


def test_equality_ignores_generator_order():
    R = MonomialAlgebra(2, 0, "2", 4, var="x")
    two, x = R.from_int(2), R.gen()
    assert FGIdeal(R, [two, x]).equals(FGIdeal(R, [x, two]))
    assert not FGIdeal(R, [two]).equals(FGIdeal(R, [x, two]))


def test_ideals_of_different_rings():
    with pytest.raises(StructureError):
        FGIdeal(ResidueRing(4), [2]).product(FGIdeal(ResidueRing(2), [1]))


def test_condition_b_for_m():
    m = standard_m(2, 5)
    v = condition_b_check(m, 2)
    assert v.status == "Holds"
    first = v.certificates[0]
    assert first["level"] == 0 and first["power_level"] == 1


def test_condition_b_idempotent_generator():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    assert condition_b_check(FGIdeal(R, [(1, 0)]), 3).status == "Holds"


def test_condition_b_fails_for_s():
    S = MonomialAlgebra(2, 0, var="s")
    v = condition_b_check(FGIdeal(S, [S.gen()]), 2)
    assert v.status == "Fails" and v.witness == S.gen()


def test_idempotency_examples():
    assert idempotency_check(standard_m(2, 4)).status == "Idempotent"
    assert idempotency_check(FGIdeal(ResidueRing(4), [])).status == "Idempotent"
    S = MonomialAlgebra(2, 0, "4", var="s")
    v = idempotency_check(FGIdeal(S, [S.gen()]))
    assert v.status == "Not" and v.witness == S.gen()


def test_colimit_window_too_small_is_inconclusive():
    m = standard_m(2, 0)
    assert idempotency_check(m).status == "InconclusiveAtWindow"


def test_colimit_ideal_checks_compatibility():
    # (t^{1/2^N}) shrinking along the levels is not a compatible family
    with pytest.raises(StructureError):
        ColimitIdeal(2, lambda N: [MonomialAlgebra(2, N).monomial("1")] if N == 0 else
                     [MonomialAlgebra(2, N).monomial("2")], 2)


@pytest.mark.parametrize("n_max", [2, 3, 5])
def test_idempotency_certificates_name_finer_levels(n_max):
    v = idempotency_check(standard_m(2, n_max))
    levels = [(c["level"], c["square_level"]) for c in v.certificates if "level" in c]
    assert levels == [(N, N + 1) for N in range(n_max)]


# -- nilpotent lift ------------------------------------------------------------------------

def reduction(S, R, fn):
    return RingMap(S, R, fn, "reduce")


def test_nilpotent_lift_z4_squared():
    Z4, F2 = ResidueRing(4), ResidueRing(2)
    S, R = ProductRing([Z4, Z4]), ProductRing([F2, F2])
    f = reduction(S, R, lambda a: (a[0] % 2, a[1] % 2))
    res = nilpotent_lift(f, FGIdeal(R, [(1, 0)]))
    assert res.ideal.members == frozenset((a, 0) for a in range(4))
    # I = Z/4 x 2Z/4, then I^2 = Z/4 x 0 = I^3
    assert res.iterations == 1
    assert res.certificates["idempotent"] and res.certificates["maps_onto"]


def test_nilpotent_lift_of_isomorphism():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    m = FGIdeal(R, [(1, 0)])
    res = nilpotent_lift(RingMap(R, R, lambda a: a, "id"), m)
    assert res.ideal.members == m.members


def test_nilpotent_lift_mixed_product():
    U = MonomialAlgebra(2, 0, "3", var="u")
    S = ProductRing([ResidueRing(8), U])
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    f = reduction(S, R, lambda a: (a[0] % 2, 1 if a[1] and a[1][0][0] == 0 else 0))
    res = nilpotent_lift(f, FGIdeal(R, [(0, 1)]))
    assert res.ideal.members == frozenset((0, u) for u in U.element_list())


def test_nilpotent_lift_is_the_unique_idempotent_lift():
    Z4, F2 = ResidueRing(4), ResidueRing(2)
    S, R = ProductRing([Z4, Z4]), ProductRing([F2, F2])
    f = reduction(S, R, lambda a: (a[0] % 2, a[1] % 2))
    for members in all_ideals(R):
        m = FGIdeal.from_members(R, members)
        if idempotency_check(m).ok:
            lifts = idempotent_lifts(f, m)
            assert len(lifts) == 1 and lifts[0].members == nilpotent_lift(f, m).ideal.members


def test_nilpotent_lift_needs_nilpotent_kernel():
    Z4 = ResidueRing(4)
    R = ProductRing([Z4, Z4])
    f = RingMap(R, Z4, lambda a: a[0], "pr")
    with pytest.raises(PreconditionError) as e:
        nilpotent_lift(f, FGIdeal(Z4, [1]))
    assert e.value.hypothesis == "nilpotent kernel"


def test_nilpotent_lift_needs_idempotent_ideal():
    Z8, Z4 = ResidueRing(8), ResidueRing(4)
    f = RingMap(Z8, Z4, lambda a: a % 4, "reduce")
    with pytest.raises(PreconditionError):
        nilpotent_lift(f, FGIdeal(Z4, [2]))


# -- gluing lift -----------------------------------------------------------------------------

def coordinate_square():
    F2 = ResidueRing(2)
    A0, A1, A2, A3 = ProductRing([F2] * 3), ProductRing([F2] * 2), ProductRing([F2] * 2), ProductRing([F2])
    return GluingSquare(A0, A1, A2, A3,
                        RingMap(A0, A1, lambda a: (a[0], a[1]), "f1"),
                        RingMap(A0, A2, lambda a: (a[1], a[2]), "f2"),
                        RingMap(A1, A3, lambda a: (a[1],), "g1"),
                        RingMap(A2, A3, lambda a: (a[0],), "g2"))


def test_gluing_examples():
    sq = coordinate_square()
    assert sq.is_fiber_product()
    res = gluing_lift(sq, FGIdeal(sq.A1, [(1, 1)]), FGIdeal(sq.A2, [(1, 0)]))
    # oracle: an ideal of F2^3 is the set of vectors supported on a coordinate subset
    assert res.ideal.members == frozenset({(a, b, 0) for a in (0, 1) for b in (0, 1)})
    unit = gluing_lift(sq, FGIdeal(sq.A1, [(1, 1)]), FGIdeal(sq.A2, [(1, 1)]))
    assert unit.ideal.members == frozenset(sq.A0.element_list())
    zero = gluing_lift(sq, FGIdeal(sq.A1, []), FGIdeal(sq.A2, []))
    assert zero.ideal.members == frozenset({(0, 0, 0)})


def test_gluing_lift_unique():
    sq = coordinate_square()
    m1, m2 = FGIdeal(sq.A1, [(1, 1)]), FGIdeal(sq.A2, [(1, 0)])
    assert len(gluing_lifts_all(sq, m1, m2)) == 1


# -- Witt lift -----------------------------------------------------------------------------

def test_witt_lift_base_case():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    m = FGIdeal(R, [(1, 0)])
    res = witt_lift(R, m, 0)
    assert len(res.ideals) == 1
    assert {x[0] for x in res.ideals[0].members} == m.members


def test_witt_lift_length_two():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    res = witt_lift(R, FGIdeal(R, [(1, 0)]), 1)
    m1 = res.ideals[1]
    # W_2(F2 x F2) = W_2(F2) x W_2(F2); the lift is the whole first factor
    expected = {((a, 0), (b, 0)) for a in (0, 1) for b in (0, 1)}
    assert m1.members == frozenset(expected)
    c = res.certificates[1]
    assert c["omega_generates_m"] and c["pr_is_previous"] and c["idempotent"]


def test_witt_lift_monomial():
    res = witt_lift_monomial(2, 1, 4)
    assert res.status == "Holds"
    assert all(c.get("omega_generates_m", True) and c.get("pr_is_previous", True) for c in res.certificates)


def test_witt_lift_monomial_small_window():
    assert witt_lift_monomial(2, 2, 2).status == "InconclusiveAtWindow"


def test_parse_element_in_products():
    R = ProductRing([ResidueRing(4), ResidueRing(2)])
    assert parse_element(R, "(3, 1)") == (3, 1)
