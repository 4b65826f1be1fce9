"""Command-line interface.

Exit codes: 0 on success, 1 when a verification fails (the first failing check is
named on stderr), 2 for usage errors and parameters the requested command cannot handle.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import aut as aut_mod
from . import lgroup as lg
from .core import (
    Element,
    conjugate,
    element_order,
    format_element,
    make_params,
    multiply,
    parse_element,
)
from .errors import MacdonaldError
from .iso import iso_decision, sylow_local_iso
from .numtheory import totient
from .presentation import export_gap, l_relators, torsion_relators, word_to_text
from .structure import center_generators, lower_central_series
from .torsion import torsion_structure
from .verify import SUITES, SuiteSkipped, Verdict, run_suite


class UsageError(Exception):
    pass


def _jsonable(value):
    """Integers become decimal strings so that huge values survive any JSON reader."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "infinite" if value == float("inf") else repr(value)
    if isinstance(value, Element):
        return format_element(value.params, value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    return str(value)


def _info(args, params):
    rep = torsion_structure(params)
    lcs = lower_central_series(params)
    results = {
        "torsion_order": rep.order,
        "split": rep.is_split,
        "extension": rep.extension,
        "sylow": [{"p": s.p, "m": s.m, "order": s.order, "kind": s.kind} for s in rep.sylow],
        "split_witness": rep.split_witness,
        "center_generators": center_generators(params),
        "gamma3_order": lcs["gamma3_order"],
    }
    verdicts = [Verdict("nilpotency class 3", "3", str(lcs["class"]), lcs["class"] == 3)]
    return results, verdicts


def _mul(args, params):
    x, y = parse_element(params, args.x), parse_element(params, args.y)
    return {"product": multiply(params, x, y)}, []


def _ord(args, params):
    x = parse_element(params, args.x)
    return {"element": x, "order": element_order(params, x)}, []


def _conj(args, params):
    x, g = parse_element(params, args.x), parse_element(params, args.g)
    return {"conjugate": conjugate(params, x, g)}, []


def _automorphism_from(params, images):
    return aut_mod.automorphism(params, parse_element(params, images[0]), parse_element(params, images[1]))


def _aut(args, params):
    if args.list:
        group = aut_mod.aut_group(params, args.cap)
        return {"order": len(group),
                "automorphisms": [{"A": f.img_a, "B": f.img_b} for f in group]}, []
    if args.matrix:
        mat = aut_mod.matrix_of(params, _automorphism_from(params, args.matrix))
        return {"modulus": mat.modulus, "matrix": [list(r) for r in mat.entries]}, []
    if args.decompose:
        dec = aut_mod.decompose(params, _automorphism_from(params, args.decompose))
        return {"delta1_exponent": dec.eps, "inner_by": dec.g, "delta2_exponent": dec.k}, []
    order = len(aut_mod.aut_group(params, args.cap))
    expected = 2 * params.n**4
    return {"order": order}, [Verdict("|Aut(G)| = 2|beta-1|^4", str(expected), str(order), order == expected)]


def _iso(args, params):
    if args.p is not None:
        res = sylow_local_iso(params.beta, args.gamma, args.p)
        results = {"gamma": args.gamma, "p": args.p, "isomorphic": res.isomorphic, "m": res.m,
                   "i": res.i, "j": res.j, "reason": res.reason}
        if res.isomorphic:
            results["forward"] = {"X": res.forward[0], "Y": res.forward[1]}
            results["backward"] = {"A": res.backward[0], "B": res.backward[1]}
        return results, [Verdict("local maps verified", str(res.isomorphic), str(res.verified),
                                 res.verified == res.isomorphic)]
    res = iso_decision(params.beta, args.gamma)
    results = {"gamma": args.gamma, "isomorphic": res.isomorphic, "reason": res.reason}
    verdicts = []
    if res.witness is not None:
        w = res.witness
        results["forward"] = {"A": w.forward_a, "B": w.forward_b}
        results["backward"] = {"X": w.backward_x, "Y": w.backward_y}
        verdicts.append(Verdict("isomorphism witness verified", "True", str(w.verified), w.verified))
    return results, verdicts


def _lgroup(args, params):
    lg.l_params(params.beta)
    if args.omega:
        u, v = (lg.l_reduce(params, parse_element(params, s)) for s in args.omega)
        return {"omega": [list(r) for r in lg.omega_matrix(params, lg.LAutomorphism(u, v))]}, []
    results = {"order": params.n**4, "center_order": len(lg.l_center(params))}
    verdicts = []
    if args.aut_order:
        rep = lg.l_structure_report(params.beta, args.cap)
        expected = totient(params.n) * params.n**5
        results.update({"aut_order": rep.aut_order, "inner_order": rep.inner_order,
                        "omega_kernel_order": rep.kernel_order, "omega_image_order": rep.quotient_order})
        verdicts.append(Verdict("|Aut(L)| = phi(|beta-1|) |beta-1|^5", str(expected), str(rep.aut_order),
                                rep.aut_order == expected))
    return results, verdicts


def _verify(args, params):
    try:
        verdicts, skipped = run_suite(params.beta, args.suite)
    except SuiteSkipped as exc:
        raise UsageError(f"suite {args.suite} does not apply: {exc}") from exc
    return {"suite": args.suite, "skipped": skipped, "checks": len(verdicts)}, verdicts


def _export(args, params):
    include_l = params.n % 2 != 0 and params.n % 3 != 0
    if args.format == "gap":
        return {"text": export_gap(params, include_l)}, []
    gens, rels = torsion_relators(params)
    results, verdicts = _info(args, params)
    results["torsion_presentation"] = {"generators": gens, "relators": [word_to_text(w) for w in rels]}
    if include_l:
        gens, rels = l_relators(params)
        results["l_presentation"] = {"generators": gens, "relators": [word_to_text(w) for w in rels]}
    return results, verdicts


COMMANDS = {
    "info": _info, "mul": _mul, "ord": _ord, "conj": _conj, "aut": _aut,
    "iso": _iso, "lgroup": _lgroup, "verify": _verify, "export": _export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=int, required=True, help="group parameter")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    parser = argparse.ArgumentParser(prog="macdonald", description="Computations in the groups G(beta).")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="torsion structure and center")
    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("ord", parents=[common], help="order of an element")
    p.add_argument("x")
    p = sub.add_parser("conj", parents=[common], help="x^g = g^-1 x g")
    p.add_argument("x")
    p.add_argument("g")

    p = sub.add_parser("aut", parents=[common], help="the automorphism group")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--order", action="store_true", help="order of Aut(G) (default)")
    group.add_argument("--list", action="store_true", help="list all automorphisms")
    group.add_argument("--matrix", nargs=2, metavar=("IMG_A", "IMG_B"), help="matrix of A->IMG_A, B->IMG_B")
    group.add_argument("--decompose", nargs=2, metavar=("IMG_A", "IMG_B"), help="normal form of an automorphism")
    p.add_argument("--cap", type=int, default=aut_mod.DEFAULT_CAP)

    p = sub.add_parser("iso", parents=[common], help="isomorphism with G(gamma), optionally localized at p")
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("-p", type=int, default=None)

    p = sub.add_parser("lgroup", parents=[common], help="the quotient L(beta) and its automorphisms")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--aut-order", action="store_true")
    group.add_argument("--omega", nargs=2, metavar=("IMG_A", "IMG_B"))
    p.add_argument("--cap", type=int, default=lg.DEFAULT_CAP)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")

    p = sub.add_parser("export", parents=[common], help="export a report or presentations")
    p.add_argument("--format", choices=("json", "gap"), default="json")
    return parser


def _print_text(report: dict) -> None:
    results = report["results"]
    if report["command"] == "export" and "text" in results:
        sys.stdout.write(results["text"])
        return
    for key, value in results.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}")
    for v in report["verdicts"]:
        status = "PASS" if v["pass"] else "FAIL"
        print(f"{status} {v['locus']}: expected {v['expected']}, computed {v['computed']}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = make_params(args.beta)
        results, verdicts = COMMANDS[args.command](args, params)
    except (MacdonaldError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "beta": str(args.beta),
        "command": args.command,
        "results": _jsonable(results),
        "verdicts": [v.as_dict() for v in verdicts],
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_text(report)
    failed = [v for v in verdicts if not v.passed]
    if failed:
        print(f"verification failed: {failed[0].locus}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
