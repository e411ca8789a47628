"""Batch command-line front end.

Subcommands: pideg, build, verify, iso, classify, verma, smash, suite.
Reports are JSON by default (``--format csv`` for flat tables); scalars
on the command line use the cyclotomic literal grammar with ``q`` as an
alias for ``z``.  Exit codes: 0 all checks pass, 1 a mathematical check
failed, 2 invalid input, 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cyclo import CycloNum, parse_cyclo
from .errors import ParseError, QsaaError, ResourceLimitError
from .pbw import PRESENTATIONS, parse_element, verify_identity
from .pidegree import (
    SkewIntMatrix,
    image_cardinality_bruteforce,
    pi_degree_from_factors,
    pideg_smash,
    skew_normal_form,
    QSAA_EXPONENTS,
    SMASH_EXPONENTS,
)
from .rep import module_from_json, module_to_json, verify_relations
from .simple_mods import build_m1, build_m2, build_m3, classify, iso_m1, iso_m2, iso_m3
from .smash import build_n1, lift_to_A
from .suite import run_suite
from .verma import build_q, chain_submodules, verdicts

_BUILDERS = {"m1": (build_m1, 4), "m2": (build_m2, 3), "m3": (build_m3, 2)}
_DECIDERS = {"m1": iso_m1, "m2": iso_m2, "m3": iso_m3}


def _parse_scalars(text: str, l: int, count: int | None = None) -> list[CycloNum]:
    values = [parse_cyclo(part.strip(), l) for part in text.split(",") if part.strip()]
    if count is not None and len(values) != count:
        raise ParseError(f"expected {count} comma-separated scalars, got {len(values)}")
    return values


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "csv":
        results = payload.get("results")
        if results is None:
            for key, value in payload.items():
                print(f"{key},{json.dumps(value) if not isinstance(value, str) else value}")
        else:
            print("check,status,details")
            for row in results:
                detail = str(row.get("details", "")).replace(",", ";")
                print(f"{row['check']},{row['status']},{detail}")
    else:
        print(json.dumps(payload, indent=2, default=str))


def _exit_code(results: list[dict]) -> int:
    # worst individual status wins: math failure, then a tripped guard
    if any(r["status"] == "fail" for r in results):
        return 1
    if any(r["status"] == "undetermined"
           and str(r.get("details", "")).startswith("guard:") for r in results):
        return 3
    return 0


def _write_or_print(data: dict, out: str | None, fmt: str) -> None:
    if out:
        with open(out, "w") as handle:
            json.dump(data, handle, indent=2)
    else:
        _emit(data, fmt)


def _cmd_pideg(args) -> int:
    if args.matrix:
        mat = SkewIntMatrix.of(json.loads(args.matrix))
        m = args.m
        if m is None:
            raise ParseError("--matrix needs --m (order of the root of unity)")
    else:
        mat = QSAA_EXPONENTS if args.algebra == "qsaa" else SMASH_EXPONENTS
        m = args.l
        if m is None:
            raise ParseError("--algebra needs --l")
    snf = skew_normal_form(mat)
    payload = {
        "factors": list(snf.doubled_factors),
        "kernel_dim": snf.kernel_dim,
        "pideg": pi_degree_from_factors(snf.factors, m),
    }
    if args.bruteforce:
        card = image_cardinality_bruteforce(mat, m)
        payload["bruteforce_h"] = card
        if payload["pideg"] ** 2 != card:
            payload["consistent"] = False
            _emit(payload, args.format)
            return 1
        payload["consistent"] = True
    _emit(payload, args.format)
    return 0


def _cmd_build(args) -> int:
    builder, count = _BUILDERS[args.family]
    mu = _parse_scalars(args.mu, args.l, count)
    module = builder(args.l, mu)
    _write_or_print(module_to_json(module), args.out, args.format)
    return 0


def _cmd_verify(args) -> int:
    started = time.time()
    if args.identity:
        if "=" not in args.identity:
            raise ParseError("--identity expects 'LHS = RHS'")
        pres = PRESENTATIONS[args.presentation]
        lhs_text, rhs_text = args.identity.split("=", 1)
        lhs = parse_element(lhs_text.strip(), args.l, pres)
        rhs = parse_element(rhs_text.strip(), args.l, pres)
        ok = verify_identity(lhs, rhs)
        results = [{"check": "identity", "status": "pass" if ok else "fail",
                    "details": args.identity}]
        report = {"command": "verify", "l": args.l, "results": results,
                  "timing": round(time.time() - started, 6)}
        _emit(report, args.format)
        return _exit_code(results)
    with open(args.module) as handle:
        module = module_from_json(json.load(handle), check=False)
    violations = verify_relations(module)
    broken = {v["relation"]: v for v in violations}
    from .rep import _relation_table
    results = []
    for name, _, _ in _relation_table(module.pres, module.l):
        if name in broken:
            v = broken[name]
            detail = (f"basis index {v['basis_index']}, column {v['column']}, "
                      f"residual {v['residual']}")
            results.append({"check": name, "status": "fail", "details": detail})
        else:
            results.append({"check": name, "status": "pass", "details": ""})
    report = {"command": "verify", "l": module.l, "results": results,
              "timing": round(time.time() - started, 6)}
    _emit(report, args.format)
    return _exit_code(results)


def _cmd_iso(args) -> int:
    decider = _DECIDERS[args.family]
    count = _BUILDERS[args.family][1]
    mu = _parse_scalars(args.mu, args.l, count)
    gamma = _parse_scalars(args.gamma, args.l, count)
    witness = decider(args.l, mu, gamma)
    payload: dict = {"isomorphic": witness is not None}
    if witness is not None:
        if witness.r2 is None:
            payload["r"] = witness.r1
        else:
            payload["r1"] = witness.r1
            payload["r2"] = witness.r2
    _emit(payload, args.format)
    return 0


def _cmd_classify(args) -> int:
    with open(args.module) as handle:
        module = module_from_json(json.load(handle))
    hints = _parse_scalars(args.hints, module.l) if args.hints else ()
    result = classify(module, hints)
    payload = {
        "type": result.kind,
        "params": [str(v) for v in result.params.astuple()],
        "eigen": {
            "alpha": str(result.eigen.alpha),
            "beta": str(result.eigen.beta),
            "xi": str(result.eigen.xi),
            "lambda1": str(result.eigen.lam1),
            "lambda2": str(result.eigen.lam2),
        },
        "notes": list(result.notes),
    }
    if result.eigen.alpha_p is not None:
        payload["eigen"]["alpha_prime"] = str(result.eigen.alpha_p)
        payload["eigen"]["beta_prime"] = str(result.eigen.beta_p)
    _emit(payload, args.format)
    return 0


def _cmd_verma(args) -> int:
    started = time.time()
    lam1 = parse_cyclo(args.lambda1, args.l)
    lam2 = parse_cyclo(args.lambda2, args.l)
    module = build_q(args.l, args.p, (lam1, lam2))
    answer = verdicts(args.l, args.p, (lam1, lam2))
    results = [{"check": f"verdict.{key}", "status": "pass", "details": str(value)}
               for key, value in answer.items()]
    payload = {
        "command": "verma",
        "l": args.l,
        "module": module_to_json(module),
        "verdicts": answer,
        "chain_dims": [w.dim for w in chain_submodules(args.l, args.p)],
        "results": results,
        "timing": round(time.time() - started, 6),
    }
    if args.out:
        with open(args.out, "w") as handle:
            json.dump(module_to_json(module), handle, indent=2)
        payload.pop("module")
    _emit(payload, args.format)
    return 0


def _cmd_smash(args) -> int:
    if args.smash_command == "pideg":
        payload = {"pideg": pideg_smash(args.l)}
        _emit(payload, args.format)
        return 0
    if args.smash_command == "build-n1":
        params = _parse_scalars(args.params, args.l, 5)
        module = build_n1(args.l, params)
        _write_or_print(module_to_json(module), args.out, args.format)
        return 0
    with open(args.module) as handle:
        module = module_from_json(json.load(handle))
    lifted = lift_to_A(module)
    _write_or_print(module_to_json(lifted), args.out, args.format)
    return 0


def _cmd_suite(args) -> int:
    started = time.time()
    results = run_suite(args.l, args.seed)
    report = {
        "command": "suite",
        "l": args.l,
        "seed": args.seed,
        "results": results,
        "timing": round(time.time() - started, 6),
    }
    _emit(report, args.format)
    return _exit_code(results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsaa",
        description="Exact workbench for the quantum spatial ageing algebra "
                    "at a root of unity")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pideg", parents=[common],
                       help="PI degree from a skew exponent matrix")
    p.add_argument("--algebra", choices=("qsaa", "smash"), default="qsaa")
    p.add_argument("--l", type=int)
    p.add_argument("--matrix", help="JSON rows of a skew-symmetric integer matrix")
    p.add_argument("--m", type=int, help="order of q (with --matrix)")
    p.add_argument("--bruteforce", action="store_true",
                   help="cross-check against subgroup enumeration")
    p.set_defaults(fn=_cmd_pideg)

    p = sub.add_parser("build", parents=[common], help="construct a simple-family module")
    p.add_argument("family", choices=("m1", "m2", "m3"))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mu", required=True, help="comma-separated cyclotomic literals")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("verify", parents=[common], help="check defining relations or an identity")
    p.add_argument("--module", help="module JSON file")
    p.add_argument("--identity", help="element identity 'LHS = RHS'")
    p.add_argument("--l", type=int)
    p.add_argument("--presentation", choices=tuple(PRESENTATIONS), default="qsaa")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two modules of one family")
    p.add_argument("family", choices=("m1", "m2", "m3"))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--gamma", required=True)
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("classify", parents=[common], help="match a module to a constructed family")
    p.add_argument("--module", required=True)
    p.add_argument("--hints", help="comma-separated eigenvalue/root hints")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("verma", parents=[common], help="build a quotient module and its verdicts")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda1", required=True)
    p.add_argument("--lambda2", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_verma)

    p = sub.add_parser("smash", parents=[common], help="phi/psi-subalgebra constructions")
    smash_sub = p.add_subparsers(dest="smash_command", required=True)
    b = smash_sub.add_parser("build-n1", parents=[common])
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--params", required=True,
                   help="lambda1,lambda2,lambda3,xi,alpha")
    b.add_argument("--out")
    b.set_defaults(fn=_cmd_smash)
    lift = smash_sub.add_parser("lift", parents=[common])
    lift.add_argument("--module", required=True)
    lift.add_argument("--out")
    lift.set_defaults(fn=_cmd_smash)
    pd = smash_sub.add_parser("pideg", parents=[common])
    pd.add_argument("--l", type=int, required=True)
    pd.set_defaults(fn=_cmd_smash)

    p = sub.add_parser("suite", parents=[common], help="run the verification battery for one order")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_suite)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except ResourceLimitError as exc:
        print(json.dumps({"error": str(exc), "kind": "resource-limit"}), file=sys.stderr)
        return 3
    except (QsaaError, OSError, json.JSONDecodeError, ValueError,
            ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}),
              file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
