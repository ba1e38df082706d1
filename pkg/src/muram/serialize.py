"""JSON encodings for polynomials, places, groups, coverings, reports.

Polynomials travel as coefficient arrays lowest-degree first; a
standalone polynomial is {"p": 2, "coeffs": [0, 1]} (that is x over
F_2).  Covering files carry the ambient group, so chart equations and
twists inside them are bare coefficient arrays:

    {"group": {"p": 3, "exponents": [1]},
     "kind": "kummer",
     "f": [[0, 1]],
     "twist": [{"elt": [1], "num": [0, 1], "den": [1]}],
     "infinity_degrees": [0, 1, 1],
     "g_X": 0}

    {"group": {"p": 2, "exponents": [2]},
     "kind": "cocycle",
     "entries": [[[1], [1], [0, 1]], ...]}        # i, j, alpha(i, j); i <= j

Cyclic group elements may be given as bare integers instead of
one-element arrays.  Reports include a schema_version field.
"""

from __future__ import annotations

from .covering import Cocycle, KummerData
from .divisors import Divisor, SymbolicPlace
from .fppoly import Place, Poly, RatFun
from .pgroup import GElt, PGroup

SCHEMA_VERSION = 1


# polynomials / places ----------------------------------------------------

def poly_to_obj(f: Poly) -> dict:
    return {"p": f.p, "coeffs": list(f.coeffs)}

def poly_from_obj(obj) -> Poly:
    return Poly(obj["p"], obj["coeffs"])


def place_to_obj(v) -> dict:
    if isinstance(v, SymbolicPlace):
        return {"kind": "symbolic", "name": v.name, "degree": v.degree_value}
    if v.is_infinity:
        return {"kind": "infinity"}
    return {"kind": "finite", "poly": poly_to_obj(v.poly)}

def place_from_obj(obj, p=None) -> Place:
    if obj["kind"] == "infinity":
        if p is None:
            raise ValueError("infinity place needs the ambient characteristic")
        return Place.infinity(p)
    return Place.finite(poly_from_obj(obj["poly"]))


# groups ------------------------------------------------------------------

def group_to_obj(g: PGroup) -> dict:
    return {"p": g.p, "exponents": list(g.exponents)}

def group_from_obj(obj) -> PGroup:
    return PGroup(obj["p"], tuple(obj["exponents"]))


def elt_to_obj(m: GElt):
    return list(m.residues)

def elt_from_obj(group: PGroup, obj) -> GElt:
    return group.elt(obj)


# coverings ---------------------------------------------------------------

def covering_to_obj(cov, infinity_degrees=None, g_X: int = 0) -> dict:
    if isinstance(cov, KummerData):
        out = {
            "group": group_to_obj(cov.group),
            "kind": "kummer",
            "f": [list(f.coeffs) for f in cov.factors],
        }
        if cov.twist:
            out["twist"] = [
                {
                    "elt": elt_to_obj(m),
                    "num": list(_rf(b).num.coeffs),
                    "den": list(_rf(b).den.coeffs),
                }
                for m, b in sorted(cov.twist.items(), key=lambda kv: kv[0].residues)
            ]
    else:
        out = {
            "group": group_to_obj(cov.group),
            "kind": "cocycle",
            "entries": [
                [elt_to_obj(m), elt_to_obj(n), list(a.coeffs)]
                for m, n, a in cov.pairs()
            ],
        }
    if infinity_degrees is not None:
        order = list(cov.group.elements())
        out["infinity_degrees"] = [
            0 if m.is_zero() else infinity_degrees[m] for m in order
        ]
    out["g_X"] = g_X
    return out


def _rf(v):
    return v if isinstance(v, RatFun) else RatFun.from_poly(v)


def covering_from_obj(obj):
    """-> (covering, infinity_degrees or None, g_X)."""
    group = group_from_obj(obj["group"])
    p = group.p
    kind = obj.get("kind", "kummer")
    if kind == "kummer":
        factors = tuple(Poly(p, cs) for cs in obj["f"])
        twist = None
        if obj.get("twist"):
            twist = {
                group.elt(rec["elt"]): RatFun(Poly(p, rec["num"]), Poly(p, rec["den"]))
                for rec in obj["twist"]
            }
        cov = KummerData(group, factors, twist)
    elif kind == "cocycle":
        entries = {}
        for i, j, cs in obj["entries"]:
            entries[(group.elt(i), group.elt(j))] = Poly(p, cs)
        cov = Cocycle.from_entries(group, entries)
    else:
        raise ValueError(f"unknown covering kind {kind!r}")
    degrees = None
    if obj.get("infinity_degrees") is not None:
        order = list(group.elements())
        given = obj["infinity_degrees"]
        if len(given) != len(order):
            raise ValueError(
                f"infinity_degrees must list {len(order)} integers in canonical element order"
            )
        degrees = {m: d for m, d in zip(order, given) if not m.is_zero()}
    return cov, degrees, int(obj.get("g_X", 0))


# divisors ----------------------------------------------------------------

def divisor_to_obj(d: Divisor) -> dict:
    return {
        "places": [
            {"place": place_to_obj(v), "mult": m} for v, m in d.items()
        ],
        "degree": d.degree(),
    }
