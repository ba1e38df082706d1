import pytest

from muram.errors import GroupMismatch
from muram.pgroup import PGroup, sigma, subgroup_generated

SMALL_GROUPS = [
    PGroup(2, (1,)),
    PGroup(2, (2,)),
    PGroup(2, (3,)),
    PGroup(2, (2, 1)),
    PGroup(2, (2, 2)),
    PGroup(3, (1,)),
    PGroup(3, (2,)),
    PGroup(3, (1, 1)),
    PGroup(3, (2, 2)),  # order 81
]


def test_rep_examples():
    z4 = PGroup(2, (2,))
    assert z4.elt(3).rep() == (3,)
    assert z4.elt(0).rep() == (0,)
    g = PGroup(2, (2, 1))
    assert g.elt((3, 1)).rep() == (3, 1)


def test_rep_reduces():
    z4 = PGroup(2, (2,))
    assert z4.elt(7).rep() == (3,)
    assert z4.elt(-1).rep() == (3,)


def test_sigma_examples():
    z3 = PGroup(3, (1,))
    assert sigma(z3.elt(2), z3.elt(2)) == (1,)
    z4 = PGroup(2, (2,))
    assert sigma(z4.elt(3), z4.elt(3)) == (1,)
    for g in SMALL_GROUPS:
        j = g.elt(tuple(1 for _ in g.exponents))
        assert sigma(g.zero(), j) == (0,) * g.rank


def test_sigma_mismatch():
    with pytest.raises(GroupMismatch):
        sigma(PGroup(2, (1,)).elt(1), PGroup(2, (2,)).elt(1))


@pytest.mark.parametrize("group", SMALL_GROUPS, ids=str)
def test_sigma_symmetric_and_binary(group):
    for i in group.elements():
        for j in group.elements():
            s = sigma(i, j)
            assert s == sigma(j, i)
            assert all(b in (0, 1) for b in s)


@pytest.mark.parametrize("group", [g for g in SMALL_GROUPS if g.order <= 81], ids=str)
def test_sigma_cocycle_identity(group):
    # sigma(l,m) + sigma(l+m,n) == sigma(m,n) + sigma(l,m+n) componentwise
    elements = list(group.elements())
    for l in elements:
        for m in elements:
            slm = sigma(l, m)
            lm = l + m
            for n in elements:
                lhs = tuple(a + b for a, b in zip(slm, sigma(lm, n)))
                rhs = tuple(a + b for a, b in zip(sigma(m, n), sigma(l, m + n)))
                assert lhs == rhs


def test_subgroup_generated_examples():
    z4 = PGroup(2, (2,))
    assert subgroup_generated(z4, []).members == (z4.zero(),)
    assert [g.rep() for g in subgroup_generated(z4, [z4.elt(2)])] == [(0,), (2,)]
    g = PGroup(2, (2, 1))
    got = subgroup_generated(g, [g.elt((2, 1))])
    # brute-force closure of a single generator
    expected = {g.zero(), g.elt((2, 1))}
    assert set(got) == expected


@pytest.mark.parametrize("group", [g for g in SMALL_GROUPS if g.order <= 16], ids=str)
def test_lagrange(group):
    elements = list(group.elements())
    for a in elements:
        for b in elements:
            sub = subgroup_generated(group, [a, b])
            assert group.order % sub.order == 0


def test_subgroup_closure_holds():
    g = PGroup(3, (2,))
    sub = subgroup_generated(g, [g.elt(3)])
    for a in sub:
        for b in sub:
            assert a + b in sub
            assert -a in sub


def test_order_bound():
    with pytest.raises(ValueError):
        PGroup(2, (17,))  # 2^17 > 2^16


def test_exponent_ordering_enforced():
    with pytest.raises(ValueError):
        PGroup(2, (1, 2))


def test_canonical_element_order():
    g = PGroup(2, (1, 1))
    assert [e.rep() for e in g.elements()] == [(0, 0), (0, 1), (1, 0), (1, 1)]
