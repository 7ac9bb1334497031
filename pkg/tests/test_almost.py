import random

import flint
import pytest
from hypothesis import given, settings, strategies as st

from almostwitt.almost import (AlmostSetup, almost_elements, almost_fg_check, almost_iso, almost_zero,
                               double_shriek_of_base, entourage_check, flatness_check, shriek, shriek_of_base)
from almostwitt.errors import PreconditionError, UnsupportedError
from almostwitt.exponents import ExponentQ
from almostwitt.ideals import ColimitIdeal, FGIdeal
from almostwitt.modules import FamilyMap, LevelFamily, ModuleMap, PresentedModule
from almostwitt.rings import IntegerRing, MonomialAlgebra, ProductRing, ResidueRing

SETUP = AlmostSetup(2, 6, 4)
R0 = MonomialAlgebra(2, 0)
T = R0.gen()


def power_ideal(c, setup=SETUP):
    """(t^{c/p^N})_N; its union over N is m for every c >= 1."""
    p = setup.p
    return ColimitIdeal(p, lambda N: [MonomialAlgebra(p, N).monomial(ExponentQ.make(c, N, p))], setup.n_max,
                        name=f"m{c}")


# -- almost zero ---------------------------------------------------------------------------

def test_zero_module_is_almost_zero():
    assert almost_zero(PresentedModule.zero_module(R0), SETUP).status == "Yes"


def test_residue_by_m_is_almost_zero():
    v = almost_zero(SETUP.residue_family(), SETUP)
    assert v.status == "Yes"
    assert all(c["at_level"] == c["level"] for c in v.certificates)


def test_structural_certificate_may_look_ahead():
    # t^{1/2^N} kills 1 in R_N/(t^{3/2^N}) only after two levels: 4/2^{N+2} >= 3/2^{N+2}
    v = almost_zero(SETUP.residue_family(power_ideal(3)), SETUP)
    assert v.status == "Yes"
    assert v.certificates[0]["at_level"] == 2
    assert v.certificates[-1] == {"lookahead_levels": [5, 6]}


def test_residue_by_t_is_not_almost_zero():
    v = almost_zero(PresentedModule.cyclic(R0, T), SETUP)
    assert v.status == "No"
    assert v.witness["epsilon"] == ExponentQ.make(1, 1, 2)
    assert v.witness["element"] == [R0.one()]


def test_finite_setup():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    S = AlmostSetup.finite(R, [(1, 0)])
    assert almost_zero(PresentedModule.cyclic(R, (1, 0)), S).status == "Yes"
    assert almost_zero(PresentedModule.free(R, 1), S).status == "No"
    with pytest.raises(PreconditionError):
        AlmostSetup.finite(ResidueRing(4), [2])


def test_window_must_cover_depth():
    with pytest.raises(PreconditionError):
        AlmostSetup(2, 3, 4)


# -- almost isomorphisms -----------------------------------------------------------------

def test_inclusion_of_m_is_almost_iso():
    assert almost_iso(SETUP.inclusion(), SETUP).status == "Yes"


def test_identity_is_almost_iso():
    assert almost_iso(PresentedModule.free(R0, 2).identity(), SETUP).status == "Yes"


def test_multiplication_into_quotient_is_not_almost_iso():
    Q = PresentedModule.cyclic(R0, R0.mul(T, T))
    f = ModuleMap(PresentedModule.free(R0, 1), Q, [[T]])
    v = almost_iso(f, SETUP)
    assert v.status == "No" and v.witness["part"] == "kernel"


def test_verdict_is_the_weaker_part():
    f = ModuleMap(PresentedModule.free(R0, 1), PresentedModule.free(R0, 1), [[T]])
    v = almost_iso(f, SETUP)
    assert v.status == "No" and v.witness["part"] == "cokernel"


# -- almost elements and adjoints ---------------------------------------------------------

def test_almost_elements_of_zero():
    E = almost_elements(PresentedModule.zero_module(R0), SETUP)
    assert E.module.is_zero()


def test_almost_elements_of_r():
    E = almost_elements(PresentedModule.free(R0, 1), SETUP)
    rep = E.canonical_report()
    assert rep["injective"] and rep["surjective"]


def test_almost_elements_of_torsion_module_have_no_torsion():
    E = almost_elements(PresentedModule.cyclic(R0, T), SETUP, depth=3)
    assert E.torsion_probe().status == "Holds"
    rep = E.canonical_report()
    assert rep["kernel_killed"] and rep["cokernel_killed"]


def test_almost_element_sequences_are_compatible():
    E = almost_elements(PresentedModule.free(R0, 2), SETUP, depth=3)
    seq = E.sequence([E.ambient.ring.one(), E.ambient.ring.gen()])
    assert len(seq) == 4 and E.is_compatible(seq)
    bad = list(seq)
    bad[0] = E.ambient.add(bad[0], E.ambient.gen(0))
    assert not E.is_compatible(bad)


def test_almost_elements_need_monomial_setup():
    R = ProductRing([ResidueRing(2), ResidueRing(2)])
    with pytest.raises(UnsupportedError):
        almost_elements(PresentedModule.free(R, 1), AlmostSetup.finite(R, [(1, 0)]))


def test_shriek_of_residue_by_m_vanishes():
    T_, _, _ = shriek(SETUP.residue_family(), SETUP)
    assert T_.is_zero()


def test_shriek_of_base_is_m():
    info = shriek_of_base(SETUP)
    assert info["is_iso"] and info["natural_map_injective"]


def test_double_shriek_of_base_is_base():
    assert double_shriek_of_base(SETUP)["is_iso"]


# -- flatness ----------------------------------------------------------------------------

def test_free_module_is_flat():
    assert flatness_check(PresentedModule.free(R0, 2)).status == "Flat"


def test_torsion_module_is_not_flat():
    S = MonomialAlgebra(2, 0, var="s")
    v = flatness_check(PresentedModule.cyclic(S, S.gen()))
    assert v.status == "NotFlat" and v.witness["text"] == "(s)"


def test_m_is_flat_at_every_level():
    v = flatness_check(SETUP.ideal_family())
    assert v.status == "Flat" and len(v.certificates) == SETUP.n_max + 1


def test_flatness_needs_euclidean_ring():
    with pytest.raises(UnsupportedError):
        flatness_check(PresentedModule.free(ResidueRing(4), 1))


def torsion_free_oracle(rows, ncols):
    """Cokernel of an integer matrix is torsion free iff the gcd of its maximal nonzero minors is 1."""
    if not rows:
        return True
    A = flint.fmpz_mat(rows)
    r = A.rank()
    if r == 0:
        return True
    import itertools
    g = 0
    for I in itertools.combinations(range(len(rows)), r):
        for J in itertools.combinations(range(ncols), r):
            g = flint.fmpz(g).gcd(flint.fmpz_mat([[rows[i][j] for j in J] for i in I]).det())
    return abs(int(g)) == 1


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_flatness_routes_agree_over_integers(nrows, ncols, data):
    rows = [data.draw(st.lists(st.integers(-6, 6), min_size=ncols, max_size=ncols)) for _ in range(nrows)]
    v = flatness_check(PresentedModule(IntegerRing(), ncols, rows))
    assert (v.status == "Flat") == torsion_free_oracle(rows, ncols)


@given(st.sampled_from([MonomialAlgebra(2, 0), MonomialAlgebra(3, 0), MonomialAlgebra(2, 1)]),
       st.integers(0, 10 ** 6))
def test_flatness_routes_agree_over_levels(R, seed):
    rng = random.Random(seed)
    rows = [[R.random_element(rng, degree=2) for _ in range(2)] for _ in range(rng.randint(1, 2))]
    # flatness_check raises InternalError if the two routes disagree
    v = flatness_check(PresentedModule(R, 2, rows))
    assert v.status in ("Flat", "NotFlat")


# -- entourages and almost finite generation ----------------------------------------------

def test_entourage_examples():
    R = MonomialAlgebra(2, 2)
    M = PresentedModule.cyclic(R, R.monomial("1"))
    h, q = R.monomial("1/2"), R.monomial("1/4")
    assert entourage_check(M, [[h]], [[h]], [q])
    assert entourage_check(M, [[h]], [[q]], [h])
    assert not entourage_check(M, [[R.one()]], [], [h])
    # symmetric in the two submodules
    assert entourage_check(M, [[q]], [[h]], [h])


def test_finitely_generated_module_is_its_own_witness():
    v = almost_fg_check(PresentedModule.free(R0, 2), FGIdeal(MonomialAlgebra(2, 1), [MonomialAlgebra(2, 1).gen()]))
    assert v.status == "Witness"


def test_m_is_almost_finitely_generated():
    R1 = MonomialAlgebra(2, 1)
    v = almost_fg_check(SETUP.ideal_family(), FGIdeal(R1, [R1.gen()]))
    assert v.status == "Witness" and v.witness == ["t^(1/2)"]


def growing_family(p=2, n_max=4):
    """M_N = R_N^(N+1), each level adding one new free generator."""
    mods = {N: PresentedModule.free(MonomialAlgebra(p, N), N + 1) for N in range(n_max + 1)}
    trans = {N: [mods[N + 1].gen(i) for i in range(N + 1)] for N in range(n_max)}
    return LevelFamily(p, mods, trans, "sum")


def test_growing_direct_sum_fails():
    R1 = MonomialAlgebra(2, 1)
    v = almost_fg_check(growing_family(), FGIdeal(R1, [R1.gen()]))
    assert v.status == "Fails"
    assert v.certificates[0]["free_rank_by_level"] == {N: N + 1 for N in range(5)}


# -- properties ----------------------------------------------------------------------------

@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=9)
def test_almost_zero_closed_under_extensions(a, b):
    # 0 -> R/(t^{b/p^N}) --t^{a/p^N}--> R/(t^{(a+b)/p^N}) -> R/(t^{a/p^N}) -> 0 level by level
    ends = [almost_zero(SETUP.residue_family(power_ideal(c)), SETUP).status for c in (a, b)]
    middle = almost_zero(SETUP.residue_family(power_ideal(a + b)), SETUP).status
    assert ends == ["Yes", "Yes"]
    assert middle != "No"


def inclusion_between(setup, c, d):
    """I_c -> I_d for c >= d, where I_c = (t^{c/p^N})."""
    Ic, Id = power_ideal(c, setup), power_ideal(d, setup)
    src, tgt = LevelFamily.from_ideal(Ic), LevelFamily.from_ideal(Id)
    p = setup.p
    mats = {N: [[MonomialAlgebra(p, N).monomial(ExponentQ.make(c - d, N, p))]] for N in src.levels}
    return FamilyMap(src, tgt, mats)


@given(st.integers(1, 3), st.integers(0, 2))
@settings(max_examples=9)
def test_composition_of_almost_isos(d, extra):
    c = d + extra
    f = inclusion_between(SETUP, c, d)
    g = inclusion_between(SETUP, d, 1)
    assert almost_iso(f, SETUP).status == "Yes"
    assert almost_iso(g, SETUP).status == "Yes"
    assert almost_iso(g.compose(f), SETUP).status == "Yes"
    # I_1 is m itself, so composing further with m -> R stays an almost isomorphism
    h = SETUP.inclusion()
    assert almost_iso(h.compose(g.compose(f)), SETUP).status == "Yes"


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25)
def test_canonical_map_is_almost_iso(seed):
    rng = random.Random(seed)
    rows = [[R0.random_element(rng, degree=2) for _ in range(2)] for _ in range(rng.randint(0, 2))]
    E = almost_elements(PresentedModule(R0, 2, rows), SETUP, depth=3)
    rep = E.canonical_report()
    assert rep["kernel_killed"] and rep["cokernel_killed"]


@pytest.mark.parametrize("name,M", [
    ("R/(t)", PresentedModule.cyclic(R0, T)),
    ("R", PresentedModule.free(R0, 1)),
    ("R/(t^2)", PresentedModule.cyclic(R0, R0.mul(T, T))),
    ("R/(1+t)", PresentedModule.cyclic(R0, R0.add(R0.one(), T)))])
def test_depth_monotonicity(name, M):
    statuses = [almost_zero(M, AlmostSetup(2, K + 2, K)).status for K in range(1, 6)]
    for a, b in zip(statuses, statuses[1:]):
        assert not (a in ("Yes", "YesUpToDepth") and b == "No")
