import random

import pytest

from muram.algebra import AlgebraElt
from muram.covering import KummerData
from muram.errors import CancellationRisk, NotTorsion
from muram.fppoly import Place, Poly, RatFun
from muram.pgroup import PGroup
from muram.ramification import normalize_local_model
from muram.randgen import random_normal_cyclic_kummer
from muram.snf_oracle import (
    PresentationMatrix,
    algebra_valuation,
    build_presentation,
    oracle_multiplicity,
    snf_length,
)

X2, X3 = Poly.x(2), Poly.x(3)
AT_X2, AT_X3 = Place.finite(X2), Place.finite(X3)


def model(p, n, f_coeffs, at=None):
    f = Poly(p, f_coeffs)
    place = at or Place.finite(Poly.x(p))
    return normalize_local_model(KummerData(PGroup(p, (n,)), (f,)), place)


# presentation shape ---------------------------------------------------------

def test_presentation_shape_z2():
    m = model(2, 1, [0, 1])
    pm = build_presentation(m)
    assert pm.shape == (1, 4)
    nonzero = [c for c in pm.columns if c]
    # the two surviving columns carry +e_1 and -e_1 in the single row
    assert len(nonzero) == 2
    e1 = AlgebraElt.basis(m.group, m.group.elt(1))
    assert {str(c[0]) for c in nonzero} == {str(e1), str(-e1)}


def test_presentation_trivial_group_is_empty():
    from muram.ramification import LocalModel

    trivial = LocalModel(
        p=2, n=0, place=AT_X2, pi=X2, f_red=Poly.one(2), c=0, t=(0,), vA=(0,),
        normality="verified",
    )
    pm = build_presentation(trivial)
    assert pm.shape == (0, 1)
    assert all(not col for col in pm.columns)
    assert oracle_multiplicity(trivial) == 0


def test_presentation_column_entries_z3():
    m = model(3, 1, [0, 1])
    pm = build_presentation(m)
    assert pm.shape == (2, 9)
    g = m.group
    j = pm.labels.index((g.elt(1), g.elt(1)))
    col = pm.columns[j]
    # +e_1 in the row of 2 = 1+1, -e_1 in the row of 1
    row_of = {m_: i for i, m_ in enumerate(pm.rows)}
    e1 = AlgebraElt.basis(g, g.elt(1))
    assert col[row_of[g.elt(2)]] == e1
    assert col[row_of[g.elt(1)]] == -e1
    assert all(len(c) <= 2 for c in pm.columns)


# algebra valuations ---------------------------------------------------------

def test_algebra_valuation_examples():
    m = model(2, 1, [0, 1])
    g = m.group
    assert algebra_valuation(AlgebraElt.unit(g), m) == 0
    a = AlgebraElt(g, {g.zero(): RatFun.from_poly(X2), g.elt(1): RatFun.one(2)})
    assert algebra_valuation(a, m) == 1  # min(2*1, 1)
    m43 = model(2, 2, [0, 0, 0, 1])  # f = x^3
    assert algebra_valuation(AlgebraElt.basis(m43.group, m43.group.elt(3)), m43) == 1


def test_algebra_valuation_additive_on_products():
    m = model(3, 1, [0, 1])
    g = m.group
    rng = random.Random(3)
    for _ in range(10):
        a = AlgebraElt(
            g, {mm: RatFun.from_poly(Poly(3, [rng.randrange(3) for _ in range(2)])) for mm in g.elements()}
        )
        b = AlgebraElt.basis(g, g.elt(rng.randrange(1, 3)))
        if a.is_zero():
            continue
        assert algebra_valuation(a.mul(b, m), m) == algebra_valuation(a, m) + algebra_valuation(b, m)


def test_cancellation_risk_on_split_models():
    m = model(2, 1, [1, 1])  # f = x+1, unit at (x): all basis valuations 0
    with pytest.raises(CancellationRisk):
        algebra_valuation(AlgebraElt.unit(m.group), m)


# snf length -----------------------------------------------------------------

def _diag_presentation(m, entries):
    g = m.group
    rows = tuple(list(g.elements())[: len(entries)])
    cols = [{i: e} for i, e in enumerate(entries)]
    labels = tuple((g.zero(), g.zero()) for _ in entries)
    return PresentationMatrix(rows=rows, labels=labels, columns=cols)


def test_snf_diagonal_uniformizer_powers():
    # diagonal (pi_A, pi_A^2): entries of valuation 1 and 2, length 3
    m = model(2, 1, [0, 1])
    g = m.group
    pi_A = AlgebraElt.basis(g, g.elt(1))  # v_A = 1
    pi_A_sq = AlgebraElt(g, {g.zero(): RatFun.from_poly(X2)})  # v_A = 2
    pm = _diag_presentation(m, [pi_A, pi_A_sq])
    assert snf_length(pm, m) == 3


def test_snf_invariant_under_permutation_and_unit_scaling():
    m = model(3, 1, [0, 1])
    g = m.group
    e1 = AlgebraElt.basis(g, g.elt(1))
    e2 = AlgebraElt.basis(g, g.elt(2))
    pm1 = _diag_presentation(m, [e1, e2])
    pm2 = _diag_presentation(m, [e2.scale(RatFun.from_poly(Poly.const(3, 2))), e1])
    pm2 = PresentationMatrix(rows=pm1.rows, labels=pm1.labels, columns=list(reversed(pm2.columns)))
    assert snf_length(pm1, m) == snf_length(pm2, m) == 3
    # duplicated columns change nothing
    pm3 = PresentationMatrix(
        rows=pm1.rows, labels=pm1.labels + pm1.labels, columns=pm1.columns + pm1.columns
    )
    assert snf_length(pm3, m) == 3


def test_snf_block_additivity():
    m = model(2, 2, [0, 0, 0, 1])
    g = m.group
    blocks = [AlgebraElt.basis(g, g.elt(3)), AlgebraElt.basis(g, g.elt(2)), AlgebraElt.basis(g, g.elt(1))]
    total = snf_length(_diag_presentation(m, blocks), m)
    parts = sum(snf_length(_diag_presentation(m, [b]), m) for b in blocks)
    assert total == parts == 1 + 2 + 3


def test_not_torsion_detected():
    m = model(3, 1, [0, 1])
    g = m.group
    pm = PresentationMatrix(
        rows=tuple(mm for mm in g.elements() if not mm.is_zero()),
        labels=((g.zero(), g.zero()),),
        columns=[{0: AlgebraElt.basis(g, g.elt(1))}],  # row 1 never hit
    )
    with pytest.raises(NotTorsion):
        snf_length(pm, m)


# oracle ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "p,n,f,expected",
    [
        (2, 1, [0, 1], 1),
        (3, 1, [0, 1], 2),
        (2, 2, [0, 1], 3),
        (2, 2, [0, 0, 0, 1], 3),
    ],
)
def test_oracle_examples(p, n, f, expected):
    assert oracle_multiplicity(model(p, n, f)) == expected


def test_oracle_split_place_is_zero():
    assert oracle_multiplicity(model(2, 1, [1, 1])) == 0


def test_oracle_agrees_with_formula_on_random_models():
    rng = random.Random(17)
    for p, n in [(2, 1), (3, 1), (2, 2)]:
        for _ in range(5):
            kd = random_normal_cyclic_kummer(rng, p, n, max_deg=4)
            from muram.ramification import ramification_divisor

            _, reports = ramification_divisor(kd, include_infinity=True)
            for r in reports:
                lm = normalize_local_model(kd, r.place)
                assert oracle_multiplicity(lm) == r.multiplicity


# independent validation of the presentation ---------------------------------
#
# For concrete normalizations A = F_p[t] (t the uniformizer upstairs) the
# augmentation module can be computed by raw F_p linear algebra: truncate
# A at t^T, expand the relation columns into F_p-vectors, and count
# dimensions.  This checks the presentation itself, using neither the
# closed-form multiplicity nor the SNF pivoting.

def _fp_rank(vectors, p):
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(c * inv) % p for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _dimension_count(p, n, f_coeffs, embed_vals, T=None):
    """dim_{F_p} of the presented module inside A = F_p[t]/(t^T),
    with x = t^{p^n} and e_m embedded as t^{embed_vals[s(m)]}."""
    q = p ** n
    T = T or q + 2
    m = model(p, n, f_coeffs)
    assert list(m.vA) == list(embed_vals)
    pm = build_presentation(m)

    def embed(elt: AlgebraElt):
        # A_T element as F_p coefficient list in t
        out = [0] * T
        for mm, coeff in elt.comps.items():
            poly = coeff.as_poly()
            shift = embed_vals[mm.residues[0]]
            for i, a in enumerate(poly.coeffs):
                e = q * i + shift
                if e < T:
                    out[e] = (out[e] + a) % p
        return out

    vectors = []
    nrows = len(pm.rows)
    for col in pm.columns:
        if not col:
            continue
        base = []
        for i in range(nrows):
            base.append(embed(col[i]) if i in col else [0] * T)
        for s in range(T):
            vec = []
            for cell in base:
                shifted = [0] * T
                for e, a in enumerate(cell):
                    if e + s < T:
                        shifted[e + s] = a
                vec.extend(shifted)
            vectors.append(vec)
    rank = _fp_rank(vectors, p)
    return nrows * T - rank


def test_presentation_dimension_count_z2():
    assert _dimension_count(2, 1, [0, 1], (0, 1)) == 1


def test_presentation_dimension_count_z3():
    assert _dimension_count(3, 1, [0, 1], (0, 1, 2)) == 2


def test_presentation_dimension_count_z4_twisted():
    # f = x^3: normalized basis valuations (0, 3, 2, 1)
    assert _dimension_count(2, 2, [0, 0, 0, 1], (0, 3, 2, 1)) == 3
