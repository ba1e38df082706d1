"""Elements of the graded covering algebra over the rational function field.

An AlgebraElt is a finite sum of graded components a_m e_m with a_m in
F_p(x).  Multiplication needs the structure constants e_m e_n =
alpha(m,n) e_{m+n}; every operation takes a `table` argument, an object
exposing ``group`` and ``entry(m, n)`` (a Cocycle or a LocalModel).
Inversion solves the |M| x |M| multiplication-by-a system exactly over
F_p(x), so it also doubles as the zero-divisor detector.
"""

from __future__ import annotations

from .errors import CharMismatch, NotInvertible
from .fppoly import RatFun
from .pgroup import GElt, PGroup


def _as_ratfun(v) -> RatFun:
    return v if isinstance(v, RatFun) else RatFun.from_poly(v)


class AlgebraElt:
    """Finitely many nonzero graded components, immutable by convention."""

    __slots__ = ("group", "comps")

    def __init__(self, group: PGroup, comps):
        clean = {}
        for m, v in comps.items():
            v = _as_ratfun(v)
            if v.p != group.p:
                raise CharMismatch(
                    f"component at {m} has characteristic {v.p}, group has {group.p}"
                )
            if not v.is_zero():
                clean[m] = v
        self.group = group
        self.comps = clean

    @classmethod
    def unit(cls, group: PGroup):
        return cls(group, {group.zero(): RatFun.one(group.p)})

    @classmethod
    def basis(cls, group: PGroup, m: GElt, coeff=None):
        return cls(group, {m: RatFun.one(group.p) if coeff is None else coeff})

    @classmethod
    def zero(cls, group: PGroup):
        return cls(group, {})

    def is_zero(self):
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElt)
            and self.group == other.group
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.comps.items(), key=lambda kv: kv[0].residues))))

    def __add__(self, other):
        out = dict(self.comps)
        for m, v in other.comps.items():
            out[m] = out[m] + v if m in out else v
        return AlgebraElt(self.group, out)

    def __neg__(self):
        return AlgebraElt(self.group, {m: -v for m, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r: RatFun):
        r = _as_ratfun(r)
        return AlgebraElt(self.group, {m: v * r for m, v in self.comps.items()})

    def mul(self, other: "AlgebraElt", table) -> "AlgebraElt":
        out: dict[GElt, RatFun] = {}
        for m, a in self.comps.items():
            for n, b in other.comps.items():
                k = m + n
                term = a * b * _as_ratfun(table.entry(m, n))
                out[k] = out[k] + term if k in out else term
        return AlgebraElt(self.group, out)

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for m in sorted(self.comps, key=lambda g: g.residues):
            parts.append(f"({self.comps[m]})*e_{m}")
        return " + ".join(parts)

    __repr__ = __str__


def solve_linear(matrix: list[list[RatFun]], rhs: list[RatFun]):
    """Solve matrix * x = rhs exactly over F_p(x); None when singular."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col].inverse()
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def algebra_inverse(a: AlgebraElt, table) -> AlgebraElt:
    """Two-sided inverse of a in the generic-fiber algebra.

    Solves (a . x) = e_0 on the full basis; raises NotInvertible when
    multiplication by a is singular, i.e. a is a zero divisor.
    """
    group = a.group
    if a.is_zero():
        raise NotInvertible("zero is not invertible")
    elements = list(group.elements())
    index = {g: i for i, g in enumerate(elements)}
    size = len(elements)
    zero = RatFun.zero(group.p)
    matrix = [[zero] * size for _ in range(size)]
    # (a*x)_k = sum_n a_{k-n} alpha(k-n, n) x_n
    for n in elements:
        for m, coeff in a.comps.items():
            k = m + n
            matrix[index[k]][index[n]] = matrix[index[k]][index[n]] + coeff * _as_ratfun(
                table.entry(m, n)
            )
    rhs = [zero] * size
    rhs[index[group.zero()]] = RatFun.one(group.p)
    sol = solve_linear(matrix, rhs)
    if sol is None:
        raise NotInvertible(f"{a} is a zero divisor in the generic fiber")
    return AlgebraElt(group, {g: sol[i] for g, i in index.items()})
