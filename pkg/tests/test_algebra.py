import random

import pytest

from muram.algebra import AlgebraElt, algebra_inverse
from muram.covering import KummerData
from muram.errors import NotInvertible
from muram.fppoly import Poly, RatFun
from muram.pgroup import PGroup


def kummer_table(p, n, f_coeffs):
    group = PGroup(p, (n,))
    return group, KummerData(group, (Poly(p, f_coeffs),)).to_cocycle()


def test_unit_is_its_own_inverse():
    group, table = kummer_table(3, 1, [0, 1])
    e0 = AlgebraElt.unit(group)
    assert algebra_inverse(e0, table) == e0


def test_kummer_basis_inverse():
    # p=3, f=x: e_1 * e_2 = x e_0, so e_1^{-1} = (1/x) e_2
    group, table = kummer_table(3, 1, [0, 1])
    inv = algebra_inverse(AlgebraElt.basis(group, group.elt(1)), table)
    expected = AlgebraElt(group, {group.elt(2): RatFun(Poly.one(3), Poly.x(3))})
    assert inv == expected


def test_split_element_inverse():
    # p=2, f=x: (e_0+e_1)^2 = (1+x) e_0
    group, table = kummer_table(2, 1, [0, 1])
    a = AlgebraElt(group, {group.zero(): RatFun.one(2), group.elt(1): RatFun.one(2)})
    sq = a.mul(a, table)
    assert sq == AlgebraElt(group, {group.zero(): RatFun.from_poly(Poly(2, [1, 1]))})
    inv = algebra_inverse(a, table)
    expected = a.scale(RatFun(Poly.one(2), Poly(2, [1, 1])))
    assert inv == expected
    assert a.mul(inv, table) == AlgebraElt.unit(group)


def test_zero_divisor_detected():
    # p=2, f=x^2: (x e_0 + e_1)(x e_0 - e_1) = (x^2 - x^2) e_0 = 0
    group, table = kummer_table(2, 1, [0, 0, 1])
    a = AlgebraElt(group, {group.zero(): RatFun.from_poly(Poly.x(2)), group.elt(1): RatFun.one(2)})
    with pytest.raises(NotInvertible):
        algebra_inverse(a, table)


def test_zero_not_invertible():
    group, table = kummer_table(2, 1, [0, 1])
    with pytest.raises(NotInvertible):
        algebra_inverse(AlgebraElt.zero(group), table)


@pytest.mark.parametrize("p,n,f", [(2, 1, [0, 1]), (3, 1, [1, 1]), (2, 2, [0, 1])])
def test_random_inverses_multiply_to_unit(p, n, f):
    group, table = kummer_table(p, n, f)
    rng = random.Random(11)
    elements = list(group.elements())
    checked = 0
    while checked < 8:
        comps = {
            m: RatFun.from_poly(Poly(p, [rng.randrange(p) for _ in range(2)]))
            for m in elements
            if rng.random() < 0.7
        }
        a = AlgebraElt(group, comps)
        if a.is_zero():
            continue
        try:
            inv = algebra_inverse(a, table)
        except NotInvertible:
            continue
        assert a.mul(inv, table) == AlgebraElt.unit(group)
        assert inv.mul(a, table) == AlgebraElt.unit(group)
        checked += 1
