"""Command-line front end.

Subcommands: validate, ramify, oracle, devissage, gorenstein, genus,
regress-gln, fuzz.  Reports are JSON on stdout (deterministic ordering,
schema_version field) or an aligned table with --format table.  Exit
codes: 0 success, 1 usage error, 2 model rejection, 3 internal
invariant violation (including a formula/oracle mismatch, which would
mean the mathematics and the implementation disagree).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .covering import KummerData, validate
from .errors import ExactArithError, InternalInvariant, ModelRejection
from .fppoly import Place, Poly
from .gorenstein import (
    derive_sign,
    det_M_phi_bruteforce,
    det_M_phi_formula,
    gorenstein_at,
    sign_table,
)
from .pgroup import PGroup
from .ramification import (
    devissage_check,
    gln_regression,
    normalize_local_model,
    ramification_divisor,
)
from .randgen import (
    random_cyclic_cocycle,
    random_integral_column,
    random_integral_twist,
    random_normal_cyclic_kummer,
    random_phi,
)
from .rh_genus import GlobalModel, predict_genus
from .serialize import (
    SCHEMA_VERSION,
    covering_from_obj,
    covering_to_obj,
    divisor_to_obj,
    elt_to_obj,
    place_to_obj,
)
from .snf_oracle import oracle_multiplicity


def _load_covering(path):
    with open(path) as fh:
        obj = json.load(fh)
    return covering_from_obj(obj)


def _parse_place(text: str, p: int) -> Place:
    if text.strip().lower() in ("infinity", "inf", "oo"):
        return Place.infinity(p)
    coeffs = [int(c) for c in text.split(",")]
    return Place.finite(Poly(p, coeffs))


def _report_base(command: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command}


def _ram_reports(reports) -> list:
    return [
        {
            "place": place_to_obj(r.place),
            "multiplicity": r.multiplicity,
            "stabilizer": [elt_to_obj(m) for m in r.stabilizer],
            "stabilizer_order": r.stabilizer.order,
            "totally_ramified": r.totally_ramified,
            "torsor": r.torsor,
            "normality": r.normality,
        }
        for r in reports
    ]


# handlers ------------------------------------------------------------------

def _cmd_validate(args):
    cov, _, _ = _load_covering(args.input)
    cocycle = cov.to_cocycle() if isinstance(cov, KummerData) else cov
    rep = validate(cocycle)
    out = _report_base("validate")
    out["ok"] = rep.ok
    out["failures"] = [{"invariant": name, "at": list(info)} for name, info in rep.failures]
    return out, 0 if rep.ok else 2


def _cmd_ramify(args):
    cov, degrees, _ = _load_covering(args.input)
    divisor, reports = ramification_divisor(
        cov, include_infinity=args.include_infinity, infinity_degrees=degrees
    )
    out = _report_base("ramify")
    out["divisor"] = divisor_to_obj(divisor)
    out["degree"] = divisor.degree()
    out["reports"] = _ram_reports(reports)
    return out, 0


def _cmd_oracle(args):
    cov, _, _ = _load_covering(args.input)
    if not isinstance(cov, KummerData):
        from .covering import forward_decompose

        _, f = forward_decompose(cov)
        cov = KummerData(cov.group, (f,))
    place = _parse_place(args.place, cov.group.p)
    model = normalize_local_model(cov, place)
    formula = model.q - 1 if model.c else 0
    oracle = oracle_multiplicity(model)
    out = _report_base("oracle")
    out["place"] = place_to_obj(place)
    out["formula"] = formula
    out["oracle"] = oracle
    out["agree"] = formula == oracle
    if not out["agree"]:
        raise InternalInvariant(
            f"formula {formula} != oracle {oracle} at {place}: the two routes disagree"
        )
    return out, 0


def _cmd_devissage(args):
    cov, _, _ = _load_covering(args.input)
    if not isinstance(cov, KummerData):
        raise ModelRejection("devissage expects Kummer-form input")
    rep = devissage_check(
        cov, args.layer, include_infinity=args.include_infinity, with_oracle=args.with_oracle
    )
    out = _report_base("devissage")
    out["total"] = divisor_to_obj(rep.total)
    out["lower"] = divisor_to_obj(rep.lower)
    out["upper"] = divisor_to_obj(rep.upper)
    out["pullback_indices"] = [
        {"place": place_to_obj(v), "index": e} for v, e in sorted(
            rep.pullback_indices.items(), key=lambda kv: kv[0].sort_key()
        )
    ]
    out["equal"] = rep.equal
    if rep.oracle_agrees is not None:
        out["oracle_agrees"] = rep.oracle_agrees
    if not rep.equal or rep.oracle_agrees is False:
        raise InternalInvariant("devissage identity failed on a certified-normal model")
    return out, 0


def _cmd_gorenstein(args):
    if args.search:
        return _gorenstein_search(args)
    cov, degrees, _ = _load_covering(args.input)
    cocycle = cov.to_cocycle() if isinstance(cov, KummerData) else cov
    divisor, reports = ramification_divisor(
        cov, include_infinity=args.include_infinity, infinity_degrees=degrees
    )
    out = _report_base("gorenstein")
    rows = []
    bad = []
    gm = GlobalModel(cov, degrees) if args.include_infinity else None
    for r in reports:
        if r.place.is_infinity:
            chart = gm.infinity_chart()
            ok, witness = gorenstein_at(chart, Place.finite(Poly.x(cov.group.p)))
        else:
            ok, witness = gorenstein_at(cocycle, r.place)
        rows.append(
            {
                "place": place_to_obj(r.place),
                "gorenstein": ok,
                "witness": None if witness is None else elt_to_obj(witness),
            }
        )
        if not ok:
            bad.append(place_to_obj(r.place))
    out["places"] = rows
    out["non_gorenstein_places"] = bad
    if cov.group.is_cyclic:
        p, n = cov.group.p, cov.group.exponents[0]
        out["sign"] = derive_sign(p, n)
    out["sign_table"] = [
        {"p": p, "n": n, "sign": s} for (p, n), s in sorted(sign_table().items())
    ]
    return out, 0


def _gorenstein_search(args):
    """Fuzz for a non-Gorenstein place on integral twisted models.

    Records whatever it finds without asserting existence either way.
    """
    rng = random.Random(args.seed)
    shapes = [(2, (1, 1)), (3, (1, 1)), (2, (2,)), (3, (2,)), (2, (2, 1))]
    found = []
    checked = 0
    for _ in range(args.count):
        p, exps = shapes[rng.randrange(len(shapes))]
        group = PGroup(p, exps)
        factors = tuple(
            f for f in (random_normal_cyclic_kummer(rng, p, n, max_deg=3).factors[0] for n in exps)
        )
        kd = KummerData(group, factors, random_integral_twist(rng, group))
        try:
            cocycle = kd.to_cocycle()
        except ModelRejection:
            continue
        from .covering import support_places

        for v in support_places(cocycle):
            checked += 1
            ok, _ = gorenstein_at(cocycle, v)
            if not ok:
                found.append(
                    {
                        "covering": covering_to_obj(kd),
                        "place": place_to_obj(v),
                    }
                )
    out = _report_base("gorenstein-search")
    out["checked_places"] = checked
    out["counterexamples"] = found
    return out, 0


def _cmd_genus(args):
    cov, degrees, g_X = _load_covering(args.input)
    gm = GlobalModel(cov, degrees, g_X)
    rep = predict_genus(gm, assume_normal=args.assume_normal)
    out = _report_base("genus")
    out["group_order"] = rep.group_order
    out["g_X"] = rep.g_X
    out["deg_R"] = rep.deg_R
    out["divisor"] = divisor_to_obj(rep.divisor)
    out["rhs"] = rep.rhs
    out["g_Y"] = rep.g_Y
    out["non_integer"] = rep.non_integer
    out["per_place"] = [
        {
            "place": place_to_obj(row["place"]),
            "multiplicity": row["multiplicity"],
            "stabilizer_order": row["stabilizer_order"],
            "totally_ramified": row["totally_ramified"],
            "torsor": row["torsor"],
            "normality": row["normality"],
            "gorenstein": row["gorenstein"],
            "witness": None if row["witness"] is None else elt_to_obj(row["witness"]),
        }
        for row in rep.per_place
    ]
    out["notes"] = rep.notes
    return out, 0


def _cmd_regress_gln(args):
    rep = gln_regression(args.p, args.n, args.beta, args.gamma)
    out = _report_base("regress-gln")
    out["lhs"] = rep.lhs.degree()
    out["base_part"] = rep.base_part.degree()
    out["pulled"] = rep.pulled.degree()
    out["rhs"] = rep.rhs.degree()
    out["equal"] = rep.equal
    out["degenerate_height_one"] = rep.degenerate_height_one
    out["summary"] = (
        f"{rep.lhs.degree()} "
        + ("==" if rep.equal else "!=")
        + f" {rep.base_part.degree()} + {rep.pulled.degree()}"
    )
    return out, 0


def _cmd_fuzz(args):
    rng = random.Random(args.seed)
    pn_list = [tuple(int(t) for t in s.split(",")) for s in args.pn]
    failures = []
    checked = {"models": 0, "oracle_places": 0, "columns": 0, "determinants": 0, "devissage": 0}
    for p, n in pn_list:
        q = p ** n
        for _ in range(args.count):
            kd = random_normal_cyclic_kummer(rng, p, n)
            checked["models"] += 1
            divisor, reports = ramification_divisor(kd, include_infinity=True)
            rep = predict_genus(GlobalModel(kd))
            if rep.deg_R != 2 * (q - 1) or rep.g_Y != 0:
                failures.append(
                    f"accepted model {kd.factors[0]} over p^n={q} has deg_R={rep.deg_R}, g={rep.g_Y}"
                )
            for r in reports:
                model = normalize_local_model(kd, r.place)
                checked["oracle_places"] += 1
                if oracle_multiplicity(model) != r.multiplicity:
                    failures.append(
                        f"oracle mismatch at {r.place} for {kd.factors[0]} (p^n={q})"
                    )
            if n >= 2:
                checked["devissage"] += 1
                dev = devissage_check(kd, rng.randrange(1, n))
                if not dev.equal:
                    failures.append(f"devissage failed for {kd.factors[0]} (p^n={q})")
            if q >= 2:
                from .covering import cocycle_from_column, forward_decompose

                col = random_integral_column(rng, p, n)
                checked["columns"] += 1
                c = cocycle_from_column(PGroup(p, (n,)), col)
                if not validate(c).ok:
                    failures.append(f"rebuilt column table failed validation (p^n={q})")
                betas, f = forward_decompose(c)
                one = c.group.elt(1)
                if [c.entry(c.group.elt(i), one) for i in range(1, q)] != col:
                    failures.append(f"column round trip failed (p^n={q})")
            if q <= 9:
                c = random_cyclic_cocycle(rng, p, n)
                phi = random_phi(rng, c.group)
                checked["determinants"] += 1
                if det_M_phi_bruteforce(c, phi) != det_M_phi_formula(c, phi):
                    failures.append(f"determinant identity failed (p^n={q})")
    out = _report_base("fuzz")
    out["seed"] = args.seed
    out["checked"] = checked
    out["failures"] = failures
    if failures:
        raise InternalInvariant("; ".join(failures))
    return out, 0


# rendering -----------------------------------------------------------------

def _render_table(obj, indent=0):
    lines = []
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.extend(_render_table(v, indent))
                lines.append("")
            else:
                lines.append(f"{pad}- {v}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="muram",
        description="Exact ramification data of inseparable Kummer-type coverings of the line",
    )
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("--input", required=True, help="covering JSON file")

    sp = sub.add_parser("validate", help="check the table invariants of a covering file")
    with_input(sp)

    sp = sub.add_parser("ramify", help="ramification divisor with per-place reports")
    with_input(sp)
    sp.add_argument("--include-infinity", action="store_true")

    sp = sub.add_parser("oracle", help="formula vs module-length oracle at one place")
    with_input(sp)
    sp.add_argument("--place", required=True, help='"infinity" or coefficients "c0,c1,..."')

    sp = sub.add_parser("devissage", help="two-layer factorization identity")
    with_input(sp)
    sp.add_argument("-m", "--layer", type=int, required=True, help="lower-layer exponent")
    sp.add_argument("--include-infinity", action="store_true")
    sp.add_argument("--with-oracle", action="store_true")

    sp = sub.add_parser("gorenstein", help="per-place Gorenstein verdicts and sign table")
    sp.add_argument("--input", help="covering JSON file")
    sp.add_argument("--include-infinity", action="store_true")
    sp.add_argument("--search", action="store_true", help="fuzz for non-Gorenstein places")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("genus", help="genus prediction from the ramification divisor")
    with_input(sp)
    sp.add_argument("--assume-normal", action="store_true")

    sp = sub.add_parser("regress-gln", help="matrix-space Frobenius-kernel divisor regression")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--beta", type=int, required=True)
    sp.add_argument("--gamma", type=int, required=True)

    sp = sub.add_parser("fuzz", help="randomized cross-checks of all invariants")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument(
        "--pn",
        action="append",
        default=None,
        help='group shape "p,n"; repeatable (default: 2,1 2,2 3,1 3,2)',
    )

    return ap


_HANDLERS = {
    "validate": _cmd_validate,
    "ramify": _cmd_ramify,
    "oracle": _cmd_oracle,
    "devissage": _cmd_devissage,
    "gorenstein": _cmd_gorenstein,
    "genus": _cmd_genus,
    "regress-gln": _cmd_regress_gln,
    "fuzz": _cmd_fuzz,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; remap to the documented code 1
        return 0 if exc.code == 0 else 1
    if args.command == "fuzz" and args.pn is None:
        args.pn = ["2,1", "2,2", "3,1", "3,2"]
    if args.command == "gorenstein" and not args.search and not args.input:
        print("gorenstein needs --input or --search", file=sys.stderr)
        return 1
    try:
        report, code = _HANDLERS[args.command](args)
    except (FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariant as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except ModelRejection as exc:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "rejected": type(exc).__name__,
                          "detail": str(exc)}, sort_keys=True))
        return 2
    except ExactArithError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.format == "table":
        print("\n".join(_render_table(report)))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
