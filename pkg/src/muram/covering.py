"""Covering data: symmetric multiplication tables and their normal forms.

A covering of the affine line graded by a finite abelian p-group M is
recorded by its structure constants alpha(m, n) in F_p[x], subject to
normalization alpha(0, m) = 1, symmetry, and the associativity relation
alpha(l,m) alpha(l+m,n) = alpha(m,n) alpha(l,m+n).  For cyclic M every
table is determined by the column alpha(i, 1): the coboundary betas and
the chart equation f are recovered by a telescoping recursion and the
full table is rebuilt as

    alpha(i, j) = beta_{i+j} * beta_i^{-1} * beta_j^{-1} * f^{sigma(i,j)}

with the index i+j taken modulo the group order.  Rebuilt entries must
be polynomials; columns that force denominators are rejected.

KummerData is the normal form: one chart equation per invariant factor
plus an optional coboundary twist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CharMismatch,
    NonIntegralCocycle,
    UnsupportedDecomposition,
    ZeroEntry,
)
from .fppoly import Place, Poly, RatFun, factor, valuation
from .pgroup import GElt, PGroup, sigma


class Cocycle:
    """Full symmetric table of structure constants with Poly entries."""

    __slots__ = ("group", "_entries")

    def __init__(self, group: PGroup, entries: dict):
        self.group = group
        self._entries = entries
        for (m, n), a in entries.items():
            if a.p != group.p:
                raise CharMismatch(f"entry ({m},{n}) has characteristic {a.p}")
            if a.is_zero():
                raise ZeroEntry(f"entry ({m},{n}) is zero")

    @classmethod
    def trivial(cls, group: PGroup):
        one = Poly.one(group.p)
        return cls(group, {(m, n): one for m in group.elements() for n in group.elements()})

    @classmethod
    def from_entries(cls, group: PGroup, entries: dict):
        """Build from a partial table; missing mirror pairs are filled by
        symmetry and missing identity pairs by 1.  Provided entries are
        never rewritten, so invalid input stays visible to validate()."""
        one = Poly.one(group.p)
        full = {}
        for (m, n), a in entries.items():
            full[(m, n)] = a
            full.setdefault((n, m), a)
        for m in group.elements():
            for n in group.elements():
                if (m, n) in full:
                    continue
                if m.is_zero() or n.is_zero():
                    full[(m, n)] = one
                else:
                    raise ZeroEntry(f"missing entry ({m},{n})")
        return cls(group, full)

    def entry(self, m: GElt, n: GElt) -> Poly:
        return self._entries[(m, n)]

    def pairs(self):
        """Canonically ordered (m, n, alpha(m,n)) with m <= n."""
        elements = list(self.group.elements())
        for i, m in enumerate(elements):
            for n in elements[i:]:
                yield m, n, self.entry(m, n)

    def __eq__(self, other):
        return (
            isinstance(other, Cocycle)
            and self.group == other.group
            and all(
                self.entry(m, n) == other.entry(m, n)
                for m in self.group.elements()
                for n in self.group.elements()
            )
        )


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)  # (invariant name, offending tuple)

    def first(self, name):
        for n, info in self.failures:
            if n == name:
                return info
        return None


def validate(c: Cocycle) -> ValidationReport:
    """Check normalization, symmetry, and the associativity relation,
    reporting the first violating tuple per invariant."""
    failures = []
    group = c.group
    elements = list(group.elements())
    one = Poly.one(group.p)
    zero_elt = group.zero()
    for m in elements:
        if c.entry(zero_elt, m) != one or c.entry(m, zero_elt) != one:
            failures.append(("normalization", (str(zero_elt), str(m))))
            break
    for i, m in enumerate(elements):
        done = False
        for n in elements[i:]:
            if c.entry(m, n) != c.entry(n, m):
                failures.append(("symmetry", (str(m), str(n))))
                done = True
                break
        if done:
            break
    for l in elements:
        done = False
        for m in elements:
            for n in elements:
                if c.entry(l, m) * c.entry(l + m, n) != c.entry(m, n) * c.entry(l, m + n):
                    failures.append(("cocycle identity", (str(l), str(m), str(n))))
                    done = True
                    break
            if done:
                break
        if done:
            break
    return ValidationReport(ok=not failures, failures=failures)


@dataclass(frozen=True)
class KummerData:
    """Per-factor chart equations f_i, with an optional coboundary twist.

    The induced table is prod_i f_i^{sigma_i(m,n)} * b(m) b(n) / b(m+n);
    to_cocycle() insists the result is integral.
    """

    group: PGroup
    factors: tuple[Poly, ...]
    twist: dict | None = None  # GElt -> RatFun, b(0) = 1

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.group.rank:
            raise ValueError(
                f"need one chart equation per invariant factor "
                f"({self.group.rank}), got {len(self.factors)}"
            )
        for f in self.factors:
            if f.is_zero():
                raise ZeroEntry("chart equation is zero")
            if f.p != self.group.p:
                raise CharMismatch("chart equation characteristic differs from the group's")
        if self.twist is not None:
            b0 = self.twist.get(self.group.zero())
            if b0 is not None and not _as_rf(b0).is_one():
                raise ValueError("twist must send 0 to 1")

    @property
    def is_cyclic(self):
        return self.group.is_cyclic

    def twist_at(self, m: GElt) -> RatFun:
        """Twist value at m; elements without an explicit value twist by 1."""
        if self.twist is None:
            return RatFun.one(self.group.p)
        b = self.twist.get(m)
        if b is None:
            return RatFun.one(self.group.p)
        if _as_rf(b).is_zero():
            raise ZeroEntry(f"twist is zero at {m}")
        return _as_rf(b)

    def raw_entry(self, m: GElt, n: GElt) -> RatFun:
        out = RatFun.one(self.group.p)
        for f, s in zip(self.factors, sigma(m, n)):
            if s:
                out = out * f
        if self.twist is not None:
            out = out * self.twist_at(m) * self.twist_at(n) / self.twist_at(m + n)
        return out

    def to_cocycle(self) -> Cocycle:
        entries = {}
        for m in self.group.elements():
            for n in self.group.elements():
                a = self.raw_entry(m, n)
                if not a.is_poly():
                    raise NonIntegralCocycle(
                        f"entry ({m},{n}) = {a} is not a polynomial"
                    )
                entries[(m, n)] = a.as_poly()
        return Cocycle(self.group, entries)


def _as_rf(v) -> RatFun:
    return v if isinstance(v, RatFun) else RatFun.from_poly(v)


def cocycle_from_column(group: PGroup, column) -> Cocycle:
    """Rebuild the full table of a cyclic covering from its first column
    (alpha(1,1), ..., alpha(q-1,1)).

    Raises NonIntegralCocycle when some rebuilt entry has a denominator;
    the rebuilt table always satisfies the table invariants and slices
    back to the input column.
    """
    if not group.is_cyclic or group.order < 2:
        raise UnsupportedDecomposition("column reconstruction needs a cyclic group of order >= 2")
    q = group.order
    column = list(column)
    if len(column) != q - 1:
        raise ValueError(f"column must have {q - 1} entries, got {len(column)}")
    for a in column:
        if a.is_zero():
            raise ZeroEntry("column entries must be nonzero")
    col = {i: column[i - 1] for i in range(1, q)}  # col[i] = alpha(i, 1)
    beta = _betas_from_column(group, col)
    f = Poly.one(group.p)
    for i in range(1, q):
        f = f * col[i]
    entries = {}
    for m in group.elements():
        for n in group.elements():
            a = _reconstructed_entry(beta, f, m, n)
            if not a.is_poly():
                raise NonIntegralCocycle(f"entry ({m},{n}) = {a} is not a polynomial")
            entries[(m, n)] = a.as_poly()
    c = Cocycle(group, entries)
    report = validate(c)
    assert report.ok, f"reconstructed table failed validation: {report.failures}"
    one = group.elt(1)
    for i in range(1, q):
        assert c.entry(group.elt(i), one) == col[i]
    return c


def _betas_from_column(group: PGroup, col) -> list[RatFun]:
    q = group.order
    beta = [RatFun.one(group.p)] * q  # beta[0] = beta[1] = 1
    for i in range(1, q - 1):
        beta[i + 1] = beta[i] * col[i]
    return beta


def _reconstructed_entry(beta, f: Poly, m: GElt, n: GElt) -> RatFun:
    q = m.group.order
    si, sj = m.residues[0], n.residues[0]
    carry = sigma(m, n)[0]
    out = beta[(si + sj) % q] / (beta[si] * beta[sj])
    if carry:
        out = out * f
    return out


def forward_decompose(c: Cocycle):
    """Recover (betas, f) with alpha(i,j) = beta_{i+j} beta_i^{-1}
    beta_j^{-1} f^{sigma(i,j)} from a validated cyclic table.

    beta_0 = beta_1 = 1 and f is the product of the first column.  The
    identity is checked for every pair before returning.
    """
    group = c.group
    if not group.is_cyclic:
        raise UnsupportedDecomposition(
            "only cyclic tables decompose; present product data as KummerData"
        )
    q = group.order
    one = group.elt(1)
    col = {i: c.entry(group.elt(i), one) for i in range(1, q)}
    beta = _betas_from_column(group, col)
    f = Poly.one(group.p)
    for i in range(1, q):
        f = f * col[i]
    for m in group.elements():
        for n in group.elements():
            if _reconstructed_entry(beta, f, m, n) != _as_rf(c.entry(m, n)):
                raise UnsupportedDecomposition(
                    f"table is not a valid symmetric cocycle at ({m},{n})"
                )
    return beta, f


def twist(c: Cocycle, b: dict) -> Cocycle:
    """Change of graded basis e_m -> b(m) e_m:
    alpha'(m,n) = alpha(m,n) b(m) b(n) / b(m+n), which must stay integral."""
    group = c.group
    bmap = {m: _as_rf(v) for m, v in b.items()}
    zero = group.zero()
    bmap.setdefault(zero, RatFun.one(group.p))
    if not bmap[zero].is_one():
        raise ValueError("twist must send 0 to 1")
    for m in group.elements():
        bmap.setdefault(m, RatFun.one(group.p))
        if bmap[m].is_zero():
            raise ZeroEntry(f"twist is zero at {m}")
    entries = {}
    for m in group.elements():
        for n in group.elements():
            a = _as_rf(c.entry(m, n)) * bmap[m] * bmap[n] / bmap[m + n]
            if not a.is_poly():
                raise NonIntegralCocycle(f"twisted entry ({m},{n}) = {a} is not a polynomial")
            entries[(m, n)] = a.as_poly()
    return Cocycle(group, entries)


def chart_at_infinity(c: Cocycle, degrees: dict) -> Cocycle:
    """Transport the table to the chart at infinity.

    Substitutes x = 1/u into every entry and twists by b(m) = u^{d(m)}:
    the entry of degree e becomes rev(entry) * u^{d(m)+d(n)-d(m+n)-e},
    which must have a nonnegative u-exponent to stay a polynomial in u.
    """
    group = c.group
    p = group.p
    for m in group.elements():
        if not m.is_zero() and m not in degrees:
            raise ValueError(f"no chart degree given for {m}")
    d = {m: (0 if m.is_zero() else degrees[m]) for m in group.elements()}
    entries = {}
    for m in group.elements():
        for n in group.elements():
            a = c.entry(m, n)
            exponent = d[m] + d[n] - d[m + n] - a.degree()
            if exponent < 0:
                raise NonIntegralCocycle(
                    f"entry ({m},{n}) needs u-exponent {exponent}; "
                    "increase the chart degrees"
                )
            u_pow = Poly(p, [0] * exponent + [1])
            entries[(m, n)] = a.reversed_coeffs() * u_pow
    return Cocycle(group, entries)


def canonical_infinity_degrees(kd: KummerData) -> dict:
    """Default chart degrees d(m) = sum_i ceil(s(m_i) deg f_i / p^{n_i}).

    Superadditivity of the ceiling makes every untwisted entry integral
    at infinity; twisted data may need caller-supplied degrees.
    """
    degs = {}
    for m in kd.group.elements():
        total = 0
        for s, f, q in zip(m.residues, kd.factors, kd.group.factor_orders):
            total += -((-s * f.degree()) // q)  # ceil
        degs[m] = total
    return degs


def torsor_at(c: Cocycle, v: Place) -> bool:
    """Freeness test at v: every alpha(m, -m) is a unit there."""
    return all(
        valuation(c.entry(m, -m), v) == 0
        for m in c.group.elements()
        if not m.is_zero()
    )


def support_places(c: Cocycle) -> list[Place]:
    """Finite places where some alpha(m, -m) is a non-unit, sorted."""
    seen = set()
    for m in c.group.elements():
        if m.is_zero():
            continue
        for irr in factor(c.entry(m, -m)):
            seen.add(Place.finite(irr))
    return sorted(seen, key=Place.sort_key)
