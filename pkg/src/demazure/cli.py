"""Command-line driver.

Exit codes: 0 when every check holds, 1 when a check fails, 2 on bad input.
"""

import argparse
import json
import os
import sys
import time
from itertools import product
from pathlib import Path

from . import roots
from .fga import TAGS, AxiomViolation, check_axioms, FGAContext, NotRegular, fgl_from_json, make_fgl
from .hecke import affine_bindings, affine_relation_check, verify_iso
from .roots import GCM, Lattice, RootSystemError, check_fdl, classify_gcm, coxeter_order, lattice_compare, lattice_quotient
from .scalars import MU1, MU2, Scalar, hecke_bindings
from .series import SeriesError
from .twisted import QFraction, UnsupportedOrder, check_independence, qf_eq, verify_relation

PASS, FAIL, BAD_INPUT = 0, 1, 2
FIXTURES = Path(__file__).resolve().parent / "fixtures"
GUARD = 2
# one rank-2 system for each of m = 3, 4, 6
RANK2_DEFAULTS = ([[2, -1], [-1, 2]], [[2, -1], [-2, 2]], [[2, -1], [-3, 2]])


class InputError(Exception):
    pass


def _default_order():
    raw = os.environ.get("DEMAZURE_ORDER")
    if raw is None:
        return 8
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"DEMAZURE_ORDER must be an integer, got {raw!r}") from exc


def _resolve(path):
    """A file path, or the name of a bundled fixture (with or without .json)."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (FIXTURES / path, FIXTURES / f"{path}.json"):
        if cand.exists():
            return cand
    raise InputError(f"no such file or fixture: {path}")


def _load_json(path):
    try:
        return json.loads(_resolve(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_gcm(path):
    data = _load_json(path)
    if isinstance(data, list):
        data = {"matrix": data}
    if "matrix" not in data:
        if "gcm" in data:
            return GCM(data["gcm"]["matrix"] if isinstance(data["gcm"], dict) else data["gcm"])
        raise InputError(f"{path}: expected a 'matrix' field")
    return GCM(data["matrix"], name=data.get("name"))


def load_lattice(path, gcm=None):
    return Lattice.from_json(_load_json(path), gcm=gcm)


def parse_bindings(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--bind expects PARAM=EXPR, got {item!r}")
        key, expr = item.split("=", 1)
        key = key.strip()
        if key not in ("mu1", "mu2", "t", "u"):
            raise InputError(f"unknown parameter {key!r}")
        try:
            out[key] = Scalar.parse(expr)
        except Exception as exc:
            raise InputError(f"cannot parse {expr!r}: {exc}") from exc
    return out


def build_fgl(spec, order, bindings, check=True):
    if spec.startswith("custom:"):
        data = _load_json(spec.split(":", 1)[1])
        return fgl_from_json(data, order=order, bindings=bindings or None, check=check)
    if spec not in TAGS[:3]:
        raise InputError(f"unknown --fgl {spec!r}")
    return make_fgl(spec, order, bindings or None, check=check)


def _context(args, bindings, order=None):
    lat = _lattice_from_args(args)
    fgl = build_fgl(args.fgl, (order or args.order) + GUARD, bindings)
    return FGAContext(fgl, lat, order=order or args.order, guard=GUARD)


def _lattice_from_args(args):
    gcm = load_gcm(args.gcm) if args.gcm else None
    if args.lattice:
        return load_lattice(args.lattice, gcm)
    if gcm is None:
        raise InputError("--gcm or --lattice is required")
    return Lattice.root_lattice(gcm)


def report(check, holds, certified_order=None, details=None, **extra):
    out = {"check": check, "holds": bool(holds), "certified_order": certified_order}
    out.update(extra)
    out["details"] = details or {}
    return out


# -- commands -------------------------------------------------------------------
def cmd_classify(args):
    g = load_gcm(args.gcm)
    blocks = []
    for idx in g.blocks():
        ct = classify_gcm(g.submatrix(idx))
        entry = {"nodes": list(idx), "type": ct.tag}
        if ct.tag == "Aff":
            entry["delta"] = list(ct.labels)
        blocks.append(entry)
    extra = {"type": blocks[0]["type"]} if len(blocks) == 1 else {"type": [b["type"] for b in blocks]}
    if len(blocks) == 1 and "delta" in blocks[0]:
        extra["delta"] = blocks[0]["delta"]
    return report("classify", True, None, {"blocks": blocks, "rank": g.l}, **extra)


def cmd_lattice_check(args):
    gcm = load_gcm(args.gcm) if args.gcm else None
    try:
        lat = load_lattice(args.lattice, gcm)
    except roots.PairingNotIntegral as exc:
        return report("fdl", False, None, {"failures": [str(exc)]}, fdl1="unknown", fdl2="fail")
    fdl = check_fdl(lat)
    js = fdl.to_json()
    orders, free = lattice_quotient(lat)
    details = {"failures": js["failures"], "quotient_of_root_lattice": orders, "free_rank": free, "rank": lat.n}
    return report("fdl", fdl.ok, None, details, fdl1=js["fdl1"], fdl2=js["fdl2"])


def cmd_lattice_compare(args):
    if not (args.a and args.b):
        raise InputError("lattice compare needs --a and --b")
    gcm = load_gcm(args.gcm) if args.gcm else None
    a = load_lattice(args.a, gcm)
    b = load_lattice(args.b, gcm or a.gcm)
    cmp = lattice_compare(a, b)
    details = {k: v for k, v in cmp.items() if k != "contains"}
    return report("compare", cmp["contains"], None, details, contains=cmp["contains"])


def _kappa_suite(ctx, expect_alpha, expect_pair):
    rows, ok, order = [], True, ctx.target
    lat = ctx.lat
    for i in range(lat.l):
        val = QFraction(ctx, ctx.kappa_alpha(ctx.simple_root(i)))
        good, o = qf_eq(val, QFraction(ctx, ctx.constant(expect_alpha))) if expect_alpha is not None else (True, val.reliable)
        rows.append({"kappa": f"alpha_{i}", "value": val.display(), "matches": good})
        ok, order = ok and good, min(order, o)
    for i in range(lat.l):
        for j in range(lat.l):
            if i == j:
                continue
            lam = lat.root_to_lattice([int(k == i) for k in range(lat.l)])
            mu = lat.root_to_lattice([int(k == j) for k in range(lat.l)])
            try:
                val = QFraction(ctx, ctx.kappa_pair(lam, mu))
            except NotRegular as exc:
                rows.append({"kappa": f"{i},{j}", "error": str(exc)})
                ok = False
                continue
            good, o = qf_eq(val, QFraction(ctx, ctx.constant(expect_pair))) if expect_pair is not None else (True, val.reliable)
            rows.append({"kappa": f"{i},{j}", "value": val.display(), "matches": good})
            ok, order = ok and good, min(order, o)
    return ok, order, rows


def _expected_kappas(fgl):
    b = fgl.bindings
    if fgl.tag == "additive":
        return Scalar(0), Scalar(0)
    mu1 = b.get("mu1", MU1)
    if fgl.tag == "multiplicative":
        return mu1, Scalar(0)
    if fgl.tag == "hyperbolic":
        return mu1, b.get("mu2", MU2)
    return None, None


def cmd_verify_fgl(args, bindings):
    fgl = build_fgl(args.fgl, args.order, bindings, check=False)
    axioms = check_axioms(fgl.F)
    details = {"axioms": {k: {"holds": ok, "order": o} for k, (ok, o) in axioms.items()}}
    holds = all(ok for ok, _ in axioms.values())
    order = min(o for _, o in axioms.values())
    if not holds:
        return report("fgl", False, order, details)
    inv = fgl.inverse()
    details["inverse"] = str(inv)
    if args.gcm or args.lattice:
        lattices = [_lattice_from_args(args)]
    else:
        lattices = [Lattice.root_lattice(GCM(m)) for m in RANK2_DEFAULTS]
    ea, ep = _expected_kappas(fgl)
    suites = []
    for lat in lattices:
        g = lat.gcm
        ctx = FGAContext(fgl.extended(args.order + GUARD), lat, order=args.order, guard=GUARD)
        ok, o, rows = _kappa_suite(ctx, ea, ep)
        suites.append({"gcm": [list(r) for r in g.a], "holds": ok, "certified_order": o, "kappas": rows})
        holds = holds and ok
        order = min(order, o)
    details["kappa_suite"] = suites
    return report("fgl", holds, order, details)


def cmd_verify_relations(args, bindings):
    ctx = _context(args, bindings)
    lat = ctx.lat
    checks = []
    for i in range(lat.l):
        checks.append(verify_relation(ctx, "quadratic", i))
    infinite = []
    for i in range(lat.l):
        for j in range(i + 1, lat.l):
            m = coxeter_order(lat.gcm, i, j)
            if m not in (2, 3, 4, 6):
                infinite.append([i, j])
                continue
            checks.append(verify_relation(ctx, "braid", i, j))
            if ctx.fgl.tag == "hyperbolic":
                checks.append(verify_relation(ctx, "braid-hyperbolic", i, j))
            elif ctx.fgl.tag != "custom":
                checks.append(verify_relation(ctx, "braid-plain", i, j))
    max_deg = 3
    for i in range(lat.l):
        for exps in product(range(max_deg + 1), repeat=lat.n):
            if sum(exps) > max_deg:
                continue
            g = ctx.one()
            for k, e in enumerate(exps):
                for _ in range(e):
                    g = g * ctx.variable(k)
            rep = verify_relation(ctx, "commutation", i, gamma=g)
            rep.details["gamma"] = list(exps)
            checks.append(rep)
    if infinite:
        checks.append(check_independence(ctx, args.length))
    rows = []
    for rep in checks:
        js = rep.to_json()
        js.pop("eta", None)
        rows.append(js)
    rows.sort(key=lambda r: (r["relation"], r["i"], r["j"], r["details"].get("gamma", [])))
    holds = all(r["holds"] for r in rows)
    order = min(r["certified_order"] for r in rows)
    details = {"checks": rows, "infinite_pairs": infinite, "count": len(rows)}
    return report("relations", holds, order, details)


def cmd_verify_hecke(args, bindings):
    u = bindings.pop("u", None)
    b = hecke_bindings() if u is None else hecke_bindings(u)
    b.update(bindings)
    args.fgl = "hyperbolic"
    ctx = _context(args, b)
    rep = verify_iso(ctx, args.length, u if u is not None else Scalar.gen("u"))
    js = rep.to_json()
    return report("iso", js["holds"], js["certified_order"], js["details"], max_word_length=js["max_word_length"])


def cmd_verify_affine(args, bindings):
    b = affine_bindings()
    b.update(bindings)
    args.fgl = "hyperbolic"
    ctx = _context(args, b)
    rows, holds, order = [], True, ctx.target
    for i in range(ctx.lat.l):
        for exps in product(range(4), repeat=ctx.lat.n):
            if sum(exps) > 3:
                continue
            g = ctx.one()
            for k, e in enumerate(exps):
                for _ in range(e):
                    g = g * ctx.variable(k)
            rep = affine_relation_check(ctx, g, i)
            rows.append({"i": i, "gamma": list(exps), "holds": rep.holds, "certified_order": rep.certified_order})
            holds = holds and rep.holds
            order = min(order, rep.certified_order)
    return report("affine", holds, order, {"checks": rows})


# -- plumbing -----------------------------------------------------------------
def _common(p):
    p.add_argument("--gcm")
    p.add_argument("--lattice")
    p.add_argument("--fgl", default="hyperbolic")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--bind", action="append", metavar="PARAM=EXPR")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(prog="demazure", description="Formal affine Demazure algebra checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", help="finite / affine / indefinite type of a GCM")
    _common(p)
    p = sub.add_parser("lattice", help="formal Demazure lattice checks")
    p.add_argument("action", choices=("check", "compare"))
    p.add_argument("--a")
    p.add_argument("--b")
    _common(p)
    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("target", choices=("fgl", "relations", "hecke-iso", "affine-hecke"))
    _common(p)
    return parser


def _text(rep):
    status = "PASS" if rep["holds"] else "FAIL"
    lines = [f"{rep['check']}: {status}" + (f" (certified order {rep['certified_order']})" if rep["certified_order"] is not None else "")]
    for key, value in rep.items():
        if key in ("check", "holds", "certified_order", "details"):
            continue
        lines.append(f"  {key}: {value}")
    details = rep["details"]
    if "checks" in details:
        for row in details["checks"]:
            name = row.get("relation", rep["check"])
            where = f"{row.get('i')},{row.get('j')}" if "j" in row else str(row.get("i"))
            extra = f" gamma={row['details']['gamma']}" if "details" in row and "gamma" in row["details"] else ""
            extra += f" gamma={row['gamma']}" if "gamma" in row else ""
            info = row.get("details", {})
            extra += f" m={info['m']}" if "m" in info else ""
            extra += "".join(f" {k}={info[k]}" for k in ("xi_ij", "xi_ji") if k in info)
            lines.append(f"  {name}[{where}]{extra}: {'ok' if row['holds'] else 'FAIL'} order {row['certified_order']}")
        rest = {k: v for k, v in details.items() if k != "checks"}
    else:
        rest = details
    for key, value in rest.items():
        lines.append(f"  {key}: {json.dumps(value) if not isinstance(value, str) else value}")
    return "\n".join(lines)


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.order is None:
            args.order = _default_order()
        if args.length < 1:
            raise InputError("--length must be at least 1")
        bindings = parse_bindings(args.bind)
        if args.command == "classify":
            if not args.gcm:
                raise InputError("classify needs --gcm")
            rep = cmd_classify(args)
        elif args.command == "lattice":
            if args.action == "check":
                if not args.lattice:
                    raise InputError("lattice check needs --lattice")
                rep = cmd_lattice_check(args)
            else:
                rep = cmd_lattice_compare(args)
        else:
            if args.target != "fgl" and args.order < 4:
                raise InputError("relation checks need --order of at least 4")
            start = time.perf_counter()
            rep = {
                "fgl": cmd_verify_fgl,
                "relations": cmd_verify_relations,
                "hecke-iso": cmd_verify_hecke,
                "affine-hecke": cmd_verify_affine,
            }[args.target](args, bindings)
            rep["details"]["seconds"] = round(time.perf_counter() - start, 3)
    except (InputError, RootSystemError, AxiomViolation, UnsupportedOrder, SeriesError, KeyError, ValueError) as exc:
        return {"check": "input", "holds": False, "certified_order": None, "details": {"error": str(exc)}}, BAD_INPUT, args
    return rep, (PASS if rep["holds"] else FAIL), args


def main(argv=None):
    rep, code, args = run(argv)
    if args.format == "json":
        print(json.dumps(rep, indent=2, default=str))
    elif code == BAD_INPUT:
        print(f"error: {rep['details']['error']}", file=sys.stderr)
    else:
        print(_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
