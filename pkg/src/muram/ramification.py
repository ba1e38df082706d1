"""Ramification data of graded coverings of the line.

The central objects are per-place local models.  At a finite place pi
with local exponent c = v_pi(f) mod p^n coprime to p, the graded basis
can be rescaled by pi-powers t(m) = floor(s(m) c / p^n) so that the
basis valuations s(m) c - p^n t(m) run over exactly {0, ..., p^n - 1};
hitting every residue class certifies that the rescaled model is the
full normalization (its value semigroup is all of Z_{>=0}) and one basis
element is a uniformizer.  When c = 0 the model is integrally closed
above pi exactly when the unit part w = f / pi^{v(f)} keeps a nonzero
derivative mod pi (the chart equation z^{p^n} = w has no other partial
in characteristic p).  Local exponents with 0 < gcd(c, p^n) < p^n leave
this model class and are refused.

Multiplicities: the stabilizer subgroup at a place is
N = { m : alpha(m, -m) is a unit there } and the ramification divisor
has multiplicity |M| / |N| - 1.  All reported data refers to the
normalized covering; cyclic inputs are certified place by place, product
inputs are layer-checked per factor but their global normality is the
caller's assertion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covering import (
    Cocycle,
    KummerData,
    forward_decompose,
    support_places,
)
from .divisors import Divisor, SymbolicPlace, pullback
from .errors import (
    ModelRejection,
    NonIntegralModel,
    NonNormalModel,
    NotASubgroup,
    NotTotallyRamified,
    UnsupportedGroup,
    UnsupportedPartialRamification,
)
from .fppoly import (
    Place,
    Poly,
    RatFun,
    factor,
    is_pth_power,
    poly_valuation,
    valuation,
)
from .pgroup import GElt, PGroup, Subgroup, sigma


# ---------------------------------------------------------------------------
# local models

@dataclass(frozen=True)
class LocalModel:
    """Localized cyclic covering with certified basis valuations.

    ``place`` is the reporting place; ``pi`` is the uniformizer of the
    working chart (for the infinity place the data has already been
    transported to the u-chart and pi is the variable u).  ``f_red`` has
    v_pi in [0, p^n) except for models built by ``untwisted_local_model``,
    which keep the raw exponent so that non-normal value semigroups stay
    visible.  ``t`` and ``vA`` are indexed by the canonical representative
    s(m).
    """

    p: int
    n: int
    place: Place
    pi: Poly
    f_red: Poly
    c: int
    t: tuple[int, ...]
    vA: tuple[int, ...]
    normality: str  # "verified" | "assumed" | "rejected:<reason>"

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def group(self) -> PGroup:
        return PGroup(self.p, (self.n,) if self.n else ())

    def basis_valuation(self, m: GElt) -> int:
        return self.vA[m.residues[0]]

    def entry(self, i: GElt, j: GElt) -> RatFun:
        """Structure constant of the rescaled basis:
        f_red^{sigma(i,j)} * pi^{t(i+j) - t(i) - t(j)}."""
        si, sj = i.residues[0], j.residues[0]
        sk = (si + sj) % self.q
        carry = sigma(i, j)[0]
        num = self.f_red ** carry if carry else Poly.one(self.p)
        exp = self.t[sk] - self.t[si] - self.t[sj]
        if exp >= 0:
            return RatFun.from_poly(num * self.pi ** exp)
        return RatFun(num, self.pi ** (-exp))

    def uniformizer_index(self) -> GElt:
        for s, v in enumerate(self.vA):
            if v == 1:
                return self.group.elt(s)
        raise NonNormalModel("no basis element of valuation 1")

    @property
    def is_certified_normal(self) -> bool:
        return self.normality == "verified"

    @property
    def is_totally_ramified(self) -> bool:
        return self.c != 0


def _require_cyclic(kd: KummerData) -> Poly:
    if not kd.is_cyclic:
        raise UnsupportedGroup("local models are cyclic-only; split product data per factor")
    return kd.factors[0]


def infinity_chart_equation(f: Poly, q: int) -> Poly:
    """Chart equation at infinity: u^{(q*ceil(deg f / q)) - deg f} * rev(f)."""
    d1 = -((-f.degree()) // q)
    exp = q * d1 - f.degree()
    return f.reversed_coeffs() * Poly(f.p, [0] * exp + [1])


def normalize_local_model(kd: KummerData, v: Place) -> LocalModel:
    """Certified-normal local model of a cyclic covering at v.

    Reduces the local exponent mod p^n, rescales the basis, and either
    certifies normality (value semigroup / unit-part derivative) or
    raises the matching rejection.
    """
    f = _require_cyclic(kd)
    p, n = kd.group.p, kd.group.exponents[0]
    return _normalize(p, n, f, v)


def _normalize(p: int, n: int, f: Poly, v: Place) -> LocalModel:
    q = p ** n
    if is_pth_power(f):
        raise NonIntegralModel(f"chart equation {f} is a p-th power; the covering is not integral")
    if v.is_infinity:
        f_chart = infinity_chart_equation(f, q)
        working = Place.finite(Poly.x(p))
        try:
            model = _normalize_finite(p, n, f_chart, working)
        except ModelRejection as exc:
            raise type(exc)(f"at infinity (u-chart): {exc}") from None
        return LocalModel(
            p, n, v, model.pi, model.f_red, model.c, model.t, model.vA, model.normality
        )
    return _normalize_finite(p, n, f, v)


def _normalize_finite(p: int, n: int, f: Poly, v: Place) -> LocalModel:
    q = p ** n
    pi = v.poly
    c0 = poly_valuation(f, v)
    c = c0 % q
    f_red = f
    for _ in range(c0 - c):
        f_red = f_red // pi
    if c == 0:
        # c0 is a multiple of q here, so f_red is already the unit part
        if (f_red.derivative() % pi).is_zero():
            raise NonNormalModel(
                f"unit-part derivative vanishes at {v}; the chart equation is singular there"
            )
        zeros = (0,) * q
        return LocalModel(p, n, v, pi, f_red, 0, zeros, zeros, "verified")
    if c % p == 0:
        raise UnsupportedPartialRamification(
            f"local exponent {c} at {v} shares a factor with p={p}; "
            "the normalization leaves this model class"
        )
    t = tuple((s * c) // q for s in range(q))
    vA = tuple(s * c - q * t[s] for s in range(q))
    assert set(vA) == set(range(q))
    return LocalModel(p, n, v, pi, f_red, c, t, vA, "verified")


def untwisted_local_model(kd: KummerData, v: Place) -> LocalModel:
    """Local model with the basis as given (no rescaling).

    Keeps the raw local exponent; normality is certified only when the
    raw basis valuations already realize {0, ..., p^n - 1}.
    """
    f = _require_cyclic(kd)
    p, n = kd.group.p, kd.group.exponents[0]
    q = p ** n
    if is_pth_power(f):
        raise NonIntegralModel(f"chart equation {f} is a p-th power; the covering is not integral")
    if v.is_infinity:
        raise UnsupportedGroup("untwisted models are for finite places; transport the chart first")
    c0 = poly_valuation(f, v)
    vA = tuple(s * c0 for s in range(q))
    if set(vA) == set(range(q)):
        normality = "verified"
    else:
        normality = "rejected:value semigroup misses a residue class"
    return LocalModel(p, n, v, v.poly, f, c0, (0,) * q, vA, normality)


def fixed_ideal_valuation_at(model: LocalModel) -> int:
    """Valuation of the ideal generated by all e_m, m != 0.

    Equals 1 at totally ramified places of normal models, where some
    basis element is a uniformizer.
    """
    if model.normality.startswith("rejected"):
        raise NonNormalModel(model.normality.split(":", 1)[1])
    return min(model.vA[s] for s in range(1, model.q))


# ---------------------------------------------------------------------------
# stabilizers and multiplicities

def stabilizer_subgroup_at(c: Cocycle, v: Place) -> Subgroup:
    """N = { m : alpha(m, -m) is a unit at v }, with closure asserted."""
    members = [
        m for m in c.group.elements() if valuation(c.entry(m, -m), v) == 0 or m.is_zero()
    ]
    member_set = set(members)
    for a in members:
        if -a not in member_set:
            raise NotASubgroup(f"{a} is a unit index but -{a} is not; invalid covering data")
        for b in members:
            if a + b not in member_set:
                raise NotASubgroup(
                    f"unit indices {a}, {b} with non-unit sum; invalid covering data"
                )
    return Subgroup(c.group, tuple(members))


def multiplicity_at(c: Cocycle, v: Place, verify: bool = False) -> int:
    """|M| / |N_v| - 1.

    Meaningful on normal models.  With verify=True a cyclic table is
    decomposed and its local model certified at v first, propagating the
    rejection if certification fails; non-cyclic verification is not
    available (only caller-asserted normality).
    """
    if verify:
        if not c.group.is_cyclic:
            raise UnsupportedGroup("normality verification is cyclic-only")
        _, f = forward_decompose(c)
        _normalize(c.group.p, c.group.exponents[0], f, v)
    return c.group.order // stabilizer_subgroup_at(c, v).order - 1


@dataclass
class RamReport:
    place: Place
    stabilizer: Subgroup
    multiplicity: int
    totally_ramified: bool
    torsor: bool
    normality: str

    def __post_init__(self):
        group = self.stabilizer.group
        assert self.multiplicity == group.order // self.stabilizer.order - 1
        assert self.totally_ramified == self.stabilizer.is_trivial()
        assert self.torsor == (self.multiplicity == 0)


def _trivial_subgroup(group: PGroup) -> Subgroup:
    return Subgroup(group, (group.zero(),))


def _full_subgroup(group: PGroup) -> Subgroup:
    return Subgroup(group, tuple(group.elements()))


def _off_support_normality_sweep(f: Poly, q: int) -> None:
    """Reject singular points hiding over places where f is a unit.

    The chart z^{p^n} = f is singular over pi exactly when the reduced
    unit part has derivative divisible by pi; for places outside the
    support this means pi | f'.  Without this sweep a cuspidal model
    (e.g. z^2 = 1 + x^3 over x = 0) would sail through with a wrong
    divisor.
    """
    df = f.derivative()
    if df.is_zero():
        raise NonIntegralModel(f"chart equation {f} is a p-th power; the covering is not integral")
    for zeta in factor(df):
        c0 = poly_valuation(f, Place.finite(zeta))
        if c0 % q == 0:
            w = f
            for _ in range(c0):
                w = w // zeta
            if (w.derivative() % zeta).is_zero():
                raise NonNormalModel(
                    f"unit-part derivative vanishes at ({zeta}); "
                    "the chart equation is singular there"
                )


def _kummer_factors(cov) -> tuple[PGroup, tuple[Poly, ...]] | None:
    """Per-factor chart equations, decomposing cyclic raw tables."""
    if isinstance(cov, KummerData):
        return cov.group, cov.factors
    if cov.group.is_cyclic:
        _, f = forward_decompose(cov)
        return cov.group, (f,)
    return None


def ramification_divisor(cov, include_infinity: bool = False, infinity_degrees=None):
    """The ramification divisor with one report per touched place.

    ``cov`` is a Cocycle or KummerData.  Cyclic and per-factor data is
    certified via local models (normalized semantics); raw non-cyclic
    tables use the entries as given with normality marked "assumed".
    Divisors are indexed by base places, which is faithful because the
    covering is a homeomorphism on points.
    """
    group = cov.group
    factored = _kummer_factors(cov)
    reports: list[RamReport] = []
    if factored is not None:
        group, factors = factored
        qs = group.factor_orders
        for f, q in zip(factors, qs):
            # constant chart equations are units everywhere: torsor factor
            if not f.is_constant():
                _off_support_normality_sweep(f, q)
        support: set[Place] = set()
        for f in factors:
            if not f.is_constant():
                support.update(Place.finite(irr) for irr in factor(f))
        places = sorted(support, key=Place.sort_key)
        if include_infinity:
            places.append(Place.infinity(group.p))
        for v in places:
            trivial_factors = []
            for f, q, n_i in zip(factors, qs, group.exponents):
                if f.is_constant():
                    trivial_factors.append(False)
                    continue
                model = _normalize(group.p, n_i, f, v)
                trivial_factors.append(model.c != 0)
            members = [
                m
                for m in group.elements()
                if all(not t or r == 0 for t, r in zip(trivial_factors, m.residues))
            ]
            stab = Subgroup(group, tuple(members))
            mult = group.order // stab.order - 1
            reports.append(
                RamReport(
                    place=v,
                    stabilizer=stab,
                    multiplicity=mult,
                    totally_ramified=stab.is_trivial(),
                    torsor=mult == 0,
                    normality="verified" if group.is_cyclic else "assumed",
                )
            )
    else:
        cocycle = cov
        places = support_places(cocycle)
        if include_infinity:
            if infinity_degrees is None:
                raise ValueError(
                    "non-cyclic raw tables need explicit chart degrees at infinity"
                )
            from .covering import chart_at_infinity

            chart = chart_at_infinity(cocycle, infinity_degrees)
            u_place = Place.finite(Poly.x(group.p))
            stab = stabilizer_subgroup_at(chart, u_place)
            mult = group.order // stab.order - 1
            reports.append(
                RamReport(
                    place=Place.infinity(group.p),
                    stabilizer=stab,
                    multiplicity=mult,
                    totally_ramified=stab.is_trivial(),
                    torsor=mult == 0,
                    normality="assumed",
                )
            )
        for v in places:
            stab = stabilizer_subgroup_at(cocycle, v)
            mult = group.order // stab.order - 1
            reports.append(
                RamReport(
                    place=v,
                    stabilizer=stab,
                    multiplicity=mult,
                    totally_ramified=stab.is_trivial(),
                    torsor=mult == 0,
                    normality="assumed",
                )
            )
    reports.sort(key=lambda r: r.place.sort_key())
    divisor = Divisor({r.place: r.multiplicity for r in reports if r.multiplicity})
    return divisor, reports


# ---------------------------------------------------------------------------
# devissage

@dataclass
class DevissageReport:
    """R for the full covering against the two-layer factorization.

    The covering z^{p^n} = f over the base factors through the partial
    quotient w = z^{p^{n-m}} (so w^{p^m} = f downstairs and z^{p^{n-m}} = w
    upstairs); divisors are indexed by base places and the pullback
    multiplies by the layer degree p^{n-m}.
    """

    total: Divisor
    lower: Divisor  # covering w^{p^m} = f of the base
    upper: Divisor  # covering z^{p^{n-m}} = w of the intermediate curve
    pullback_indices: dict
    equal: bool
    oracle_agrees: bool | None = None


def devissage_check(
    kd: KummerData, m: int, include_infinity: bool = False, with_oracle: bool = False
) -> DevissageReport:
    """Verify R_total = R_upper + pullback(R_lower) place by place."""
    f = _require_cyclic(kd)
    p, n = kd.group.p, kd.group.exponents[0]
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < {n}, got {m}")
    q = p ** n
    if f.is_constant():
        zero = Divisor.zero()
        return DevissageReport(
            total=zero, lower=zero, upper=zero, pullback_indices={}, equal=True,
            oracle_agrees=True if with_oracle else None,
        )
    _off_support_normality_sweep(f, q)
    places = sorted({Place.finite(irr) for irr in factor(f)}, key=Place.sort_key)
    if include_infinity:
        places.append(Place.infinity(p))
    total: dict[Place, int] = {}
    lower: dict[Place, int] = {}
    upper: dict[Place, int] = {}
    indices: dict[Place, int] = {}
    oracle_ok: bool | None = True if with_oracle else None
    for v in places:
        model_total = _normalize(p, n, f, v)
        model_lower = _normalize(p, m, f, v)
        # v_Y(w) at the intermediate place equals the local exponent of f:
        # w^{p^m} = f and the lower layer is totally ramified or split.
        c_upper = model_total.c % (p ** (n - m))
        mult_total = q - 1 if model_total.c else 0
        mult_lower = p ** m - 1 if model_lower.c else 0
        mult_upper = p ** (n - m) - 1 if c_upper else 0
        total[v] = mult_total
        lower[v] = mult_lower
        upper[v] = mult_upper
        indices[v] = p ** (n - m)
        if with_oracle:
            from .snf_oracle import oracle_multiplicity

            model_upper = _stand_in_model(p, n - m, c_upper)
            for model, expected in (
                (model_total, mult_total),
                (model_lower, mult_lower),
                (model_upper, mult_upper),
            ):
                if oracle_multiplicity(model) != expected:
                    oracle_ok = False
    total_div = Divisor(total)
    lower_div = Divisor(lower)
    upper_div = Divisor(upper)
    pulled = pullback(lower_div, indices) if not lower_div.is_zero() else Divisor.zero()
    equal = total_div == upper_div + pulled
    return DevissageReport(
        total=total_div,
        lower=lower_div,
        upper=upper_div,
        pullback_indices=indices,
        equal=equal,
        oracle_agrees=oracle_ok,
    )


def _stand_in_model(p: int, n: int, c: int) -> LocalModel:
    """Local model of z^{p^n} = T^c at T = 0, standing in for a layer
    whose base curve is not the line; lengths only depend on (p, n, c)."""
    x = Poly.x(p)
    if c == 0:
        zeros = (0,) * (p ** n)
        return LocalModel(
            p, n, Place.finite(x), x, Poly.one(p), 0, zeros, zeros, "verified"
        )
    f = Poly(p, [0] * c + [1])
    return _normalize(p, n, f, Place.finite(x))


# ---------------------------------------------------------------------------
# fixed ideal

@dataclass
class FixedIdealReport:
    place: Place
    ideal_valuation: int
    multiplicity: int
    order: int
    holds: bool


def fixed_ideal_relation_check(model: LocalModel) -> FixedIdealReport:
    """At a totally ramified place the fixed ideal is the maximal ideal
    and the divisor multiplicity is |G| - 1, so the local relation reads
    (|G| - 1) * v(I) = multiplicity.  Verified, not assumed."""
    if not model.is_totally_ramified:
        raise NotTotallyRamified(f"stabilizer at {model.place} is not trivial")
    v_ideal = fixed_ideal_valuation_at(model)
    mult = model.q - 1
    return FixedIdealReport(
        place=model.place,
        ideal_valuation=v_ideal,
        multiplicity=mult,
        order=model.q,
        holds=(v_ideal == 1 and (model.q - 1) * v_ideal == mult),
    )


# ---------------------------------------------------------------------------
# matrix-space regression

@dataclass
class GlnRegressionReport:
    lhs: Divisor
    base_part: Divisor
    pulled: Divisor
    rhs: Divisor
    equal: bool
    degenerate_height_one: bool


def gln_regression(p: int, n: int, beta: int, gamma: int) -> GlnRegressionReport:
    """Divisor arithmetic for the Frobenius-kernel tower on matrix space.

    The three divisors live on the vanishing locus of the determinant;
    the lower-layer divisor pulls back with index p^beta.  For n = 1 the
    two sides coincide, a degeneracy the report flags explicitly; for
    n >= 2 they differ.
    """
    if not 0 < beta < gamma:
        raise ValueError(f"need 0 < beta < gamma, got beta={beta} gamma={gamma}")
    delta = SymbolicPlace("Delta", 1)
    lhs = Divisor({delta: p ** (n * gamma) - 1})
    base_part = Divisor({delta: p ** (n * beta) - 1})
    residual = Divisor({delta: p ** (n * (gamma - beta)) - 1})
    pulled = pullback(residual, {delta: p ** beta})
    rhs = base_part + pulled
    return GlnRegressionReport(
        lhs=lhs,
        base_part=base_part,
        pulled=pulled,
        rhs=rhs,
        equal=lhs == rhs,
        degenerate_height_one=(n == 1),
    )
