import random

import pytest

from muram.covering import Cocycle, KummerData, twist
from muram.errors import NotGorensteinHere, SizeLimit, UnsupportedGroup
from muram.fppoly import Place, Poly, RatFun
from muram.gorenstein import (
    derive_sign,
    det_M_phi_bruteforce,
    det_M_phi_formula,
    diagonal_coefficients,
    dual_generator,
    gorenstein_at,
    sign_table,
)
from muram.pgroup import PGroup
from muram.randgen import random_cyclic_cocycle, random_phi

X2, X3 = Poly.x(2), Poly.x(3)
AT_X2, AT_X3 = Place.finite(X2), Place.finite(X3)


def test_trivial_witness_is_zero():
    g = PGroup(3, (1,))
    ok, witness = gorenstein_at(Cocycle.trivial(g), AT_X3)
    assert ok and witness.is_zero()
    assert dual_generator(Cocycle.trivial(g), AT_X3).is_zero()


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)])
def test_untwisted_kummer_witness_is_top_index(p, n):
    q = p ** n
    c = KummerData(PGroup(p, (n,)), (Poly.x(p),)).to_cocycle()
    ok, witness = gorenstein_at(c, Place.finite(Poly.x(p)))
    assert ok and witness.rep() == (q - 1,)
    assert dual_generator(c, Place.finite(Poly.x(p))) == witness


def test_twisted_product_witness():
    g = PGroup(2, (1, 1))
    c = KummerData(g, (X2, X2)).to_cocycle()
    tw = twist(c, {g.elt((1, 0)): RatFun.from_poly(X2)})
    ok, witness = gorenstein_at(tw, AT_X2)
    assert ok and witness.rep() == (1, 0)


def test_pinned_non_gorenstein_model():
    # Z/4, f = x+1, twisted by (zeta^2, zeta^4, zeta^2) with zeta = x+1:
    # integral (but non-normal) model where every anti-diagonal carries a
    # non-unit at (x+1) -- the entry valuations are
    #   l=0: (1,3) has 1+2+2-0 = 5;   l=1: (2,3) has 1+4+2-2 = 5;
    #   l=2: (3,3) has 1+2+2-4 = 1;   l=3: (1,2) has 0+2+4-2 = 4.
    g = PGroup(2, (2,))
    zeta = Poly(2, [1, 1])
    base = KummerData(g, (zeta,)).to_cocycle()
    c = twist(
        base,
        {
            g.elt(1): RatFun.from_poly(zeta ** 2),
            g.elt(2): RatFun.from_poly(zeta ** 4),
            g.elt(3): RatFun.from_poly(zeta ** 2),
        },
    )
    place = Place.finite(zeta)
    ok, witness = gorenstein_at(c, place)
    assert not ok and witness is None
    with pytest.raises(NotGorensteinHere):
        dual_generator(c, place)


def test_det_2x2_expansion():
    g = PGroup(2, (1,))
    f = Poly(2, [1, 1])
    c = KummerData(g, (f,)).to_cocycle()
    phi0, phi1 = Poly(2, [1, 1, 1]), Poly(2, [0, 1])
    phi = {g.zero(): phi0, g.elt(1): phi1}
    expected = f * phi0 * phi0 + phi1 * phi1
    assert det_M_phi_bruteforce(c, phi) == expected
    assert det_M_phi_formula(c, phi) == expected


def test_det_trivial_cocycle_char2_is_power_of_sum():
    g = PGroup(2, (1,))
    c = Cocycle.trivial(g)
    phi0, phi1 = Poly(2, [1, 0, 1]), Poly(2, [1, 1])
    phi = {g.zero(): phi0, g.elt(1): phi1}
    total = phi0 + phi1
    assert det_M_phi_bruteforce(c, phi) == total * total


def test_det_indicator_is_diagonal_coefficient():
    g = PGroup(3, (1,))
    c = KummerData(g, (X3,)).to_cocycle()
    eps = derive_sign(3, 1)
    coeffs = diagonal_coefficients(c)
    for l in g.elements():
        det = det_M_phi_bruteforce(c, {l: Poly.one(3)})
        expected = coeffs[l] if eps == 1 else -coeffs[l]
        assert det == expected


def test_signs():
    assert derive_sign(2, 1) == 1
    assert derive_sign(2, 2) == 1
    assert derive_sign(2, 3) == 1
    assert derive_sign(3, 1) == -1
    assert derive_sign(5, 1) == 1
    assert derive_sign(7, 1) == -1
    assert derive_sign(3, 2) == 1
    # odd-p closed form (-1)^((q-1)/2)
    for (p, n), s in sign_table().items():
        if p != 2:
            q = p ** n
            assert s == (-1) ** ((q - 1) // 2)


def test_derive_sign_size_guard():
    with pytest.raises(SizeLimit):
        derive_sign(17, 1)


def test_formula_needs_cyclic():
    g = PGroup(2, (1, 1))
    c = KummerData(g, (X2, X2)).to_cocycle()
    with pytest.raises(UnsupportedGroup):
        det_M_phi_formula(c, {m: Poly.one(2) for m in g.elements()})


def test_bruteforce_size_guard():
    g = PGroup(2, (5,))
    c = Cocycle.trivial(g)
    with pytest.raises(SizeLimit):
        det_M_phi_bruteforce(c, {m: Poly.one(2) for m in g.elements()})


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)])
def test_brute_equals_formula_random(p, n):
    rng = random.Random(31 * p + n)
    for _ in range(5):
        c = random_cyclic_cocycle(rng, p, n)
        phi = random_phi(rng, c.group)
        assert det_M_phi_bruteforce(c, phi) == det_M_phi_formula(c, phi)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 1), (3, 2)])
def test_diagonal_coefficient_degrees_untwisted(p, n):
    # c_l = f^{q-1-s(l)} for untwisted data: carries count pairs i+j = l
    q = p ** n
    f = Poly(p, [1, 2 % p, 1])
    c = KummerData(PGroup(p, (n,)), (f,)).to_cocycle()
    for l, c_l in diagonal_coefficients(c).items():
        assert c_l.degree() == f.degree() * (q - 1 - l.rep()[0])


def test_gorenstein_iff_witness_det_unit():
    from muram.fppoly import valuation

    g = PGroup(3, (1,))
    c = KummerData(g, (X3,)).to_cocycle()
    ok, witness = gorenstein_at(c, AT_X3)
    assert ok
    det = det_M_phi_bruteforce(c, {witness: Poly.one(3)})
    assert valuation(det, AT_X3) == 0
