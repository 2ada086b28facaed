"""Command-line front end: input parsing, verification runs, JSON reports.

Subcommands: qform inspect | ks build | ks verify | weil analyze |
sym decompose | betti audit | betti bound | corr verify | suite.

All structured output is a single report object; --json prints it as
deterministic pretty JSON, otherwise a human-readable rendering of the
same object.  Exit codes: 0 all checks passed or vacuous, 1 a check
failed, 2 malformed input or usage.

KSW_CAP_H in the environment overrides the Clifford dimension cap.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import betti, formal_corr, kuga_satake, sympow
from .errors import (
    CapExceeded,
    MissingHypothesisData,
    UsageError,
    WorkbenchError,
)
from .hodge import HKStructure
from .linalg import Matrix
from .qspace import QuadraticSpace
from .serialize import (
    catalog_from_json,
    clifford_element_to_json,
    content_hash,
    load_json_file,
    matrix_to_json,
    period_from_json,
    phi_from_json,
    pretty_json,
    rational_str,
    space_from_json,
    weight1_from_json,
)
from .suite import RunReport, exit_code_from_checks, run_full_suite
from .weil import analyze as weil_analyze


def resolve_cap(explicit: int | None = None) -> int | None:
    env = os.environ.get("KSW_CAP_H")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError("KSW_CAP_H must be an integer, got %r" % env) from exc
    return explicit


def _emit(report: RunReport, as_json: bool) -> int:
    if as_json:
        print(pretty_json(report.to_dict()))
    else:
        print("# %s" % report.command)
        for key, value in report.data.items():
            if not isinstance(value, (dict, list)):
                print("%s: %s" % (key, value))
        for check in report.checks:
            line = "[%s] %s" % (check["status"].upper(), check["name"])
            if check.get("detail"):
                line += " -- " + check["detail"]
            print(line)
        counts = report.counts()
        if counts:
            print(
                "summary: "
                + ", ".join("%d %s" % (counts[k], k) for k in sorted(counts))
            )
        print("exit: %d" % report.exit_code)
    return report.exit_code


def _load_space(path: str) -> tuple[QuadraticSpace, str]:
    data, digest = load_json_file(path)
    try:
        return space_from_json(data), digest
    except UsageError:
        raise
    except WorkbenchError as exc:  # Degenerate / NotSymmetric are input errors here
        raise UsageError("bad quadratic space in %s: %s" % (path, exc)) from exc


def _load_hk(form_path: str, period_path: str) -> tuple[HKStructure, dict]:
    space, form_hash = _load_space(form_path)
    data, period_hash = load_json_file(period_path)
    alpha, beta = period_from_json(data)
    try:
        hk = HKStructure.build(space, alpha, beta)
    except WorkbenchError as exc:
        raise UsageError("invalid period: %s" % exc) from exc
    return hk, {"form": form_hash, "period": period_hash}


# -- subcommand implementations ----------------------------------------------------


def cmd_qform_inspect(args) -> int:
    space, digest = _load_space(args.form)
    checks = [
        {
            "name": "qform.diagonalization",
            "status": "pass",
            "detail": "T^t G T diagonal with nonzero entries",
        }
    ]
    report = RunReport(
        command="qform inspect",
        inputs={"form": digest},
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data={
            "dim": space.h,
            "signature": list(space.signature),
            "diag_values": [rational_str(x) for x in space.diag_values],
            "discriminant_square_class": space.discriminant_square_class,
        },
    )
    return _emit(report, args.json)


def _ks_identity_checks(ks, verbose_families: bool, seed: int = 0) -> list[dict]:
    checks = []
    checks.append(
        {
            "name": "ks.e_square",
            "status": "pass" if kuga_satake.verify_e_square(ks) else "fail",
            "detail": "e.e == -unit",
        }
    )
    checks.append(
        {
            "name": "ks.j_square",
            "status": "pass" if kuga_satake.verify_j_square(ks) else "fail",
            "detail": "J^2 == -I on C+",
        }
    )
    report = kuga_satake.structure_commutators(
        ks, rng=random.Random(seed), raise_on_failure=False
    )
    if verbose_families:
        for name, ok, detail in report.checks:
            checks.append(
                {
                    "name": "ks.commutators.%s" % name,
                    "status": "pass" if ok else "fail",
                    "detail": detail,
                }
            )
    else:
        checks.append(
            {
                "name": "ks.commutators",
                "status": "pass" if report.ok else "fail",
                "detail": "four identity families"
                if report.ok
                else "failed: %s" % ", ".join(report.failed_names()),
            }
        )
    return checks


def cmd_ks_build(args) -> int:
    hk, inputs = _load_hk(args.form, args.period)
    try:
        ks = kuga_satake.build(hk, cap=resolve_cap())
    except CapExceeded as exc:
        raise UsageError(str(exc)) from exc
    if args.v0 is not None:
        h = hk.space.h
        if not 0 <= args.v0 < h:
            raise UsageError("--v0 index %d outside 0..%d" % (args.v0, h - 1))
        coords = tuple(1 if i == args.v0 else 0 for i in range(h))
        v0 = hk.space.from_diag_coords(coords)
        if not hk.space.quadratic(v0):
            raise UsageError("--v0 names a null vector")
    else:
        v0 = kuga_satake.default_v0(ks)
    checks = _ks_identity_checks(ks, verbose_families=False)
    report = RunReport(
        command="ks build",
        inputs=inputs,
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data={
            "dims": {
                "h": hk.space.h,
                "cliff": ks.algebra.dim,
                "c_plus": len(ks.algebra.even_masks),
                "torus_complex_dim": ks.torus_complex_dim,
            },
            "e": clifford_element_to_json(ks.e),
            "j_checksum": content_hash(matrix_to_json(ks.j_even)),
            "v0": [rational_str(x) for x in v0],
        },
    )
    return _emit(report, args.json)


def cmd_ks_verify(args) -> int:
    hk, inputs = _load_hk(args.form, args.period)
    try:
        ks = kuga_satake.build(hk, cap=resolve_cap())
    except CapExceeded as exc:
        raise UsageError(str(exc)) from exc
    checks = _ks_identity_checks(ks, verbose_families=True, seed=args.seed)
    v0 = kuga_satake.default_v0(ks)
    h = hk.space.h
    checks.append(
        {
            "name": "ks.endo_rank",
            "status": "pass" if kuga_satake.embedding_has_full_rank(ks, v0) else "fail",
            "detail": "rank of v -> E_v equals h",
        }
    )
    checks.append(
        {
            "name": "ks.endo_sign_laws",
            "status": "pass"
            if kuga_satake.embedding_sign_laws(ks, v0, matrix_level=h <= 5)
            else "fail",
            "detail": "J (anti)commutes with E_v by plane membership",
        }
    )
    riso = kuga_satake.odd_even_isomorphism(ks, v0)
    rinv = kuga_satake.odd_even_inverse(ks, v0)
    checks.append(
        {
            "name": "ks.odd_even_iso",
            "status": "pass"
            if rinv * riso == Matrix.identity(1 << (h - 1))
            else "fail",
            "detail": "R_v0 has exact two-sided inverse R_v0/(v0,v0)",
        }
    )
    report = RunReport(
        command="ks verify",
        inputs=inputs,
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        seed=args.seed,
        data={"dims": {"h": h, "c_plus": 1 << (h - 1)}},
    )
    return _emit(report, args.json)


def cmd_weil_analyze(args) -> int:
    data, w_hash = load_json_file(args.form)
    weight1 = weight1_from_json(data)
    pdata, p_hash = load_json_file(args.phi)
    phi = phi_from_json(pdata)
    try:
        result = weil_analyze(weight1.j, phi)
    except WorkbenchError as exc:
        raise UsageError("weil analysis rejected the input: %s" % exc) from exc
    checks = [
        {
            "name": "weil.quadratic_endo",
            "status": "pass",
            "detail": "phi^2 scalar negative, commutes with J",
        }
    ]
    if result.weil_space_dim is not None:
        checks.append(
            {
                "name": "weil.class_space_dim",
                "status": "pass" if result.weil_space_dim == 2 else "fail",
                "detail": "K-line kernel is 2-dimensional",
            }
        )
    report = RunReport(
        command="weil analyze",
        inputs={"weight1": w_hash, "phi": p_hash},
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data={
            "mult_plus": result.mult_plus,
            "mult_minus": result.mult_minus,
            "is_weil": result.is_weil,
            "weil_space_dim": result.weil_space_dim,
            "all_weil_classes_22": result.all_weil_classes_22,
        },
    )
    return _emit(report, args.json)


def cmd_sym_decompose(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    space, digest = _load_space(args.form)
    inputs = {"form": digest}
    try:
        dec = sympow.decompose(space, args.k)
    except CapExceeded as exc:
        raise UsageError(str(exc)) from exc
    blocks = [{"l": l, "dim": d} for l, d in dec.block_dims]
    checks = [
        {
            "name": "sympow.decompose_certificate",
            "status": "pass",
            "detail": dec.certificate,
        },
        {
            "name": "sympow.block_totals",
            "status": "pass"
            if dec.total == sympow.sym_dim(space.h, args.k)
            else "fail",
            "detail": "dims sum to dim Sym^k",
        },
    ]
    data = {
        "k": args.k,
        "dim": sympow.sym_dim(space.h, args.k),
        "blocks": blocks,
    }
    if args.period:
        pdata, p_hash = load_json_file(args.period)
        alpha, beta = period_from_json(pdata)
        try:
            hk = HKStructure.build(space, alpha, beta)
        except WorkbenchError as exc:
            raise UsageError("invalid period: %s" % exc) from exc
        inputs["period"] = p_hash
        levels = sympow.block_max_level(hk, args.k)
        for entry, (l, lvl) in zip(blocks, levels):
            entry["level"] = lvl
        checks.append(
            {
                "name": "sympow.block_level",
                "status": "pass"
                if all(lvl == 2 * (args.k - 2 * l) for l, lvl in levels)
                else "fail",
                "detail": "max |p-q| on block l is 2(k-2l)",
            }
        )
        if args.k % 2 == 1:
            part = sympow.level_two_part(hk, args.k)
            checks.append(
                {
                    "name": "sympow.level_filtration",
                    "status": "pass" if len(part) == space.h else "fail",
                    "detail": "level <= 2 part is Q^((k-1)/2).H^2, dim h",
                }
            )
    report = RunReport(
        command="sym decompose",
        inputs=inputs,
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data=data,
    )
    return _emit(report, args.json)


def cmd_betti_audit(args) -> int:
    if args.catalog:
        data, digest = load_json_file(args.catalog)
        entries = catalog_from_json(data)
        inputs = {"catalog": digest}
    else:
        entries = betti.default_catalog()
        inputs = {"catalog": "default"}
    checks = []
    rows = []
    for entry in entries:
        b3_result = betti.audit_b3(entry)
        checks.append(
            {
                "name": "betti.audit_b3[%s]" % entry.name,
                "status": b3_result.status
                if b3_result.status != betti.STATUS_TIGHT
                else "pass",
                "detail": "bound 2^%d = %d: %s (%s)"
                % (b3_result.k, b3_result.bound, b3_result.status, b3_result.detail),
            }
        )
        row = {
            "name": entry.name,
            "b3": {
                "k": b3_result.k,
                "bound": b3_result.bound,
                "status": b3_result.status,
            },
        }
        try:
            odd_result = betti.audit_b2n_minus_1(entry)
            row["b2n_minus_1"] = {
                "k": odd_result.k,
                "bound": odd_result.bound,
                "status": odd_result.status,
            }
            status = "pass" if odd_result.status != betti.STATUS_FAIL else "fail"
            if odd_result.status == betti.STATUS_VACUOUS:
                status = "vacuous"
            checks.append(
                {
                    "name": "betti.audit_b2n_minus_1[%s]" % entry.name,
                    "status": status,
                    "detail": odd_result.detail,
                }
            )
        except MissingHypothesisData as exc:
            row["b2n_minus_1"] = {"status": "missing-data"}
            checks.append(
                {
                    "name": "betti.audit_b2n_minus_1[%s]" % entry.name,
                    "status": "vacuous",
                    "detail": str(exc),
                }
            )
        rows.append(row)
    report = RunReport(
        command="betti audit",
        inputs=inputs,
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data={"entries": rows},
    )
    return _emit(report, args.json)


def cmd_betti_bound(args) -> int:
    try:
        k = betti.bound_exponent(args.b2, div4_improve=args.div4_improve)
    except WorkbenchError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        {
            "name": "betti.bound",
            "status": "pass",
            "detail": "b2 = %d gives k = %d, bound %d" % (args.b2, k, 2 ** k),
        }
    ]
    report = RunReport(
        command="betti bound",
        inputs={},
        checks=checks,
        exit_code=0,
        data={"b2": args.b2, "k": k, "bound": 2 ** k},
    )
    return _emit(report, args.json)


def cmd_corr_verify(args) -> int:
    sign_rule = formal_corr.SIGN_BROKEN if args.broken_sign else formal_corr.SIGN_KOSZUL
    try:
        gamma = formal_corr.kunneth_square(args.b3, args.n, sign_rule)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    pairs, coef, uniform = formal_corr.kunneth_coefficient(gamma, args.b3, args.n)
    ok = uniform and coef is not None and coef != 0
    checks = [
        {
            "name": "corr.uniform_coefficient",
            "status": "pass" if ok else "fail",
            "detail": "single nonzero c over all pairs"
            if ok
            else "no uniform nonzero coefficient",
        },
        {
            "name": "corr.kunneth_block",
            "status": "pass" if formal_corr.is_kunneth_concentrated(gamma) else "fail",
            "detail": "no terms outside the (f^2, e^2) block",
        },
    ]
    report = RunReport(
        command="corr verify",
        inputs={},
        checks=checks,
        exit_code=exit_code_from_checks(checks),
        data={
            "b3": args.b3,
            "n": args.n,
            "pairs": pairs,
            "coefficient": rational_str(coef) if coef is not None else None,
            "uniform": bool(uniform),
            "sign_rule": sign_rule,
        },
    )
    return _emit(report, args.json)


def cmd_suite(args) -> int:
    overrides = {}
    if args.config:
        data, _digest = load_json_file(args.config)
        if not isinstance(data, dict):
            raise UsageError("suite config must be a JSON object")
        overrides.update(data)
    if args.seed is not None:
        overrides["seed"] = args.seed
    cap = resolve_cap()
    if cap is not None:
        overrides["cap_h"] = cap
    report = run_full_suite(overrides)
    return _emit(report, args.json)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksw",
        description="Exact rational workbench for Clifford / Kuga-Satake / "
        "Weil / symmetric-power verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    qform = sub.add_parser("qform", help="quadratic form utilities")
    qform_sub = qform.add_subparsers(dest="subcommand", required=True)
    inspect = qform_sub.add_parser("inspect", help="diagonalize and report invariants")
    inspect.add_argument("-f", "--form", required=True, help="quadratic_space JSON file")
    inspect.add_argument("--json", action="store_true")
    inspect.set_defaults(func=cmd_qform_inspect)

    ks = sub.add_parser("ks", help="Kuga-Satake construction")
    ks_sub = ks.add_subparsers(dest="subcommand", required=True)
    build_p = ks_sub.add_parser("build", help="build e, J and report identities")
    build_p.add_argument("-f", "--form", required=True)
    build_p.add_argument("-p", "--period", required=True)
    build_p.add_argument("--v0", type=int, default=None, help="diagonal basis index for v0")
    build_p.add_argument("--json", action="store_true")
    build_p.set_defaults(func=cmd_ks_build)
    verify_p = ks_sub.add_parser("verify", help="full identity-family verification")
    verify_p.add_argument("-f", "--form", required=True)
    verify_p.add_argument("-p", "--period", required=True)
    verify_p.add_argument("--seed", type=int, default=0)
    verify_p.add_argument("--json", action="store_true")
    verify_p.set_defaults(func=cmd_ks_verify)

    weil_p = sub.add_parser("weil", help="quadratic endomorphism analysis")
    weil_sub = weil_p.add_subparsers(dest="subcommand", required=True)
    analyze_p = weil_sub.add_parser("analyze", help="multiplicities and class space")
    analyze_p.add_argument("-f", "--form", required=True, help="weight1 JSON file")
    analyze_p.add_argument("--phi", required=True, help="phi JSON file")
    analyze_p.add_argument("--json", action="store_true")
    analyze_p.set_defaults(func=cmd_weil_analyze)

    sym = sub.add_parser("sym", help="symmetric power decomposition")
    sym_sub = sym.add_subparsers(dest="subcommand", required=True)
    dec = sym_sub.add_parser("decompose", help="harmonic block decomposition")
    dec.add_argument("-f", "--form", "--gram", dest="form", required=True)
    dec.add_argument("--k", type=int, required=True)
    dec.add_argument("-p", "--period", default=None)
    dec.add_argument("--json", action="store_true")
    dec.set_defaults(func=cmd_sym_decompose)

    betti_p = sub.add_parser("betti", help="Betti bound calculus")
    betti_sub = betti_p.add_subparsers(dest="subcommand", required=True)
    audit = betti_sub.add_parser("audit", help="audit a catalog")
    audit.add_argument("--catalog", default=None, help="catalog JSON file (default: shipped)")
    audit.add_argument("--json", action="store_true")
    audit.set_defaults(func=cmd_betti_audit)
    bound = betti_sub.add_parser("bound", help="bound exponent for a b2")
    bound.add_argument("--b2", type=int, required=True)
    bound.add_argument("--div4-improve", action="store_true")
    bound.add_argument("--json", action="store_true")
    bound.set_defaults(func=cmd_betti_bound)

    corr = sub.add_parser("corr", help="formal correspondence check")
    corr_sub = corr.add_subparsers(dest="subcommand", required=True)
    verify_c = corr_sub.add_parser("verify", help="Kunneth square uniformity")
    verify_c.add_argument("--b3", type=int, required=True)
    verify_c.add_argument("--n", type=int, required=True)
    verify_c.add_argument("--broken-sign", action="store_true")
    verify_c.add_argument("--json", action="store_true")
    verify_c.set_defaults(func=cmd_corr_verify)

    suite_p = sub.add_parser("suite", help="run the full invariant suite")
    suite_p.add_argument("--config", default=None, help="config JSON overriding defaults")
    suite_p.add_argument("--seed", type=int, default=None)
    suite_p.add_argument("--json", action="store_true")
    suite_p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except WorkbenchError as exc:
        print("violation: %s" % exc, file=sys.stderr)
        return 1


def entry():  # console_scripts hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
