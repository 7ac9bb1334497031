import itertools

import pytest
from hypothesis import given, settings, strategies as st

from almostwitt.descent import (FiniteModule, counit_check, cyclic_module, fd_flatness, glue_pi, glue_T,
                                local_flatness_check, make_datum, milnor_square, relative_frobenius,
                                tor_image, unit_counit_check, witt_descent_check)
from almostwitt.errors import PreconditionError, StructureError
from almostwitt.fdalg import FDModule, is_bijective
from almostwitt.rings import MonomialAlgebra, ResidueRing, RingMap, finite_field

D2 = milnor_square(2)
D3 = milnor_square(3)


def basis(A):
    return [A.basis(i) for i in range(A.dim)]


def test_milnor_square_is_a_fiber_product():
    for D in (D2, D3):
        assert D.is_fiber_product()
        assert (D.A0.dim, D.A1.dim, D.A2.dim, D.A3.dim) == (5, 3, 3, 1)


def test_pi_of_a0():
    datum = glue_pi(FDModule.free(D2.A0, 1), D2)
    assert (datum.M1.dim, datum.M2.dim) == (3, 3)
    assert datum.xi == [[1]]


def test_pi_of_free_module():
    datum = glue_pi(FDModule.free(D3.A0, 2), D3)
    assert (datum.M1.dim, datum.M2.dim) == (6, 6)
    assert datum.xi == [[1, 0], [0, 1]]


def test_t_of_pi_of_a0():
    rep = unit_counit_check(FDModule.free(D2.A0, 1), D2)
    assert rep["epsilon_iso"] and rep["dim_T"] == 5


def test_zero_datum_glues_to_zero():
    datum = make_datum(D2, FDModule.zero(D2.A1), FDModule.zero(D2.A2), [])
    assert glue_T(datum).dim == 0


def test_twisted_datum():
    datum = make_datum(D3, FDModule.free(D3.A1, 1), FDModule.free(D3.A2, 1), [[2]])
    T = glue_T(datum)
    assert T.dim == 5
    assert fd_flatness(T).status == "Flat"
    assert counit_check(datum)["iso"]


def test_xi_must_be_invertible():
    with pytest.raises(StructureError):
        make_datum(D2, FDModule.free(D2.A1, 1), FDModule.free(D2.A2, 1), [[0]])


def test_residue_field_over_a0():
    # pi(k) = (k, k, id) glues back to k, so epsilon is an isomorphism
    k = cyclic_module(D2.A0, basis(D2.A0)[1:])
    rep = unit_counit_check(k, D2)
    assert rep["dim_M"] == 1 and rep["epsilon_iso"] and rep["dim_tor_image"] == 0


def test_kernel_of_epsilon_on_a0_mod_x_plus_y():
    # M = A0/(x+y) has k-basis 1, x; both A1 (x) M and A2 (x) M are k, so T = k and ker epsilon = (x)
    one, x, x2, y, y2 = basis(D2.A0)
    M = cyclic_module(D2.A0, [D2.A0.add(x, y)])
    rep = unit_counit_check(M, D2)
    assert (rep["dim_M"], rep["dim_T"], rep["dim_ker_epsilon"]) == (2, 1, 1)
    assert rep["dim_tor_image"] == 1 and rep["kernel_matches_tor"]
    assert fd_flatness(M).status == "NotFlat"


def test_fd_flatness():
    assert fd_flatness(FDModule.free(D2.A0, 2)).status == "Flat"
    one, x, x2, y, y2 = basis(D2.A0)
    v = fd_flatness(cyclic_module(D2.A0, [x]))
    assert v.status == "NotFlat" and v.witness == {"dim": 3, "expected": 5}


# -- local flatness --------------------------------------------------------------------------

def test_local_flatness_examples():
    Z4 = ResidueRing(4)
    assert local_flatness_check(Z4, [2], FiniteModule(Z4, 1)).status == "Flat"
    v = local_flatness_check(Z4, [2], FiniteModule(Z4, 1, [(2,)]))
    assert v.status == "NotFlat"
    assert v.witness == {"k": 1, "dim_gr_ideal_tensor_M0": 1, "dim_gr_M": 0}
    E = MonomialAlgebra(2, 0, "2", var="e")
    assert local_flatness_check(E, [E.gen()], FiniteModule(E, 1, [(E.gen(),)])).status == "NotFlat"
    assert local_flatness_check(E, [E.gen()], FiniteModule(E, 2)).status == "Flat"


def test_local_flatness_graded_piece_for_z2():
    # I/I^2 (x) M0 has dimension 1 but IM/I^2M = 0
    Z4 = ResidueRing(4)
    v = local_flatness_check(Z4, [2], FiniteModule(Z4, 1, [(2,)]))
    bad = [c for c in v.certificates if c["dim_gr_ideal_tensor_M0"] != c["dim_gr_M"]]
    assert bad == [{"k": 1, "dim_gr_ideal_tensor_M0": 1, "dim_gr_M": 0}]


def test_local_flatness_needs_nilpotent_ideal():
    Z4 = ResidueRing(4)
    with pytest.raises(PreconditionError):
        local_flatness_check(Z4, [1], FiniteModule(Z4, 1))


# -- relative Frobenius and Witt descent --------------------------------------------------

def inclusion(A, B):
    return RingMap(A, B, lambda a: B.from_int(a), "inc")


def test_relative_frobenius_examples():
    F2, F4 = ResidueRing(2), finite_field(2, 2)
    assert relative_frobenius(inclusion(F2, F4)).status == "Iso"
    U = MonomialAlgebra(2, 0, "2", var="u")
    v = relative_frobenius(inclusion(F2, U))
    assert v.status == "NotIso" and v.witness == U.gen()
    assert relative_frobenius(RingMap(F4, F4, lambda a: a, "id")).status == "Iso"


def test_witt_descent_f2_to_f4():
    r = witt_descent_check(inclusion(ResidueRing(2), finite_field(2, 2)), 1)
    assert r["rank"] == 2 and r["W_free"] and r["ok"]
    assert r["sizes"] == {"W(A)": 4, "W(B)": 16}
    assert all(r["ghost_base_change"].values()) and r["frobenius_pushout"]


def test_witt_descent_identity():
    F4 = finite_field(2, 2)
    r = witt_descent_check(RingMap(F4, F4, lambda a: a, "id"), 1)
    assert r["rank"] == 1 and r["ok"]


def test_witt_descent_needs_relative_frobenius_iso():
    U = MonomialAlgebra(2, 0, "2", var="u")
    with pytest.raises(PreconditionError) as e:
        witt_descent_check(inclusion(ResidueRing(2), U), 1)
    assert e.value.hypothesis == "relative Frobenius iso"


# -- properties ----------------------------------------------------------------------------

def invertible(p, r):
    return [[list(e[i * r:(i + 1) * r]) for i in range(r)]
            for e in itertools.product(range(p), repeat=r * r)
            if is_bijective([list(e[i * r:(i + 1) * r]) for i in range(r)], r, r, p)]


@given(st.sampled_from([D2, D3]), st.integers(0, 3))
@settings(max_examples=12)
def test_t_after_pi_on_flat_modules(D, r):
    M = FDModule.free(D.A0, r)
    rep = unit_counit_check(M, D)
    assert rep["epsilon_iso"] and rep["dim_T"] == 5 * r


@given(st.sampled_from([D2, D3]), st.integers(1, 2), st.data())
@settings(max_examples=20)
def test_pi_after_t_on_free_data(D, r, data):
    xi = data.draw(st.sampled_from(invertible(D.p, r)))
    datum = make_datum(D, FDModule.free(D.A1, r), FDModule.free(D.A2, r), xi)
    assert counit_check(datum)["iso"]


@given(st.sampled_from([D2, D3]), st.data())
@settings(max_examples=40)
def test_kernel_of_epsilon_is_the_tor_image(D, data):
    A = D.A0
    gens = []
    for _ in range(data.draw(st.integers(1, 2))):
        coeffs = data.draw(st.lists(st.integers(0, D.p - 1), min_size=5, max_size=5))
        gens.append(coeffs)
    M = cyclic_module(A, gens)
    rep = unit_counit_check(M, D)
    assert rep["kernel_matches_tor"]
    assert len(tor_image(M, D)) == rep["dim_ker_epsilon"]
