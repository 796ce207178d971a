"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 computational error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import artinring as ar
from .errors import ComputationError, ModCartanError, UsageError
from .exactla.rings import is_field, parse_coeff_spec
from .groupalg import group_algebra
from .groups import parse_group_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec, e.g. S3, C2xC4, D8, table:<path>")
    common.add_argument("--coeff", help="coefficient ring, e.g. F3, Z/2^2, F3[t]/t^2")
    common.add_argument("--seed", type=int, default=1, help="random seed (default 1)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--stable", action="store_true", help="omit timing fields from JSON")

    parser = _Parser(prog="modcartan", description="Cartan matrices and modular representations of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("describe", parents=[common], help="simples and PIMs")
    sub.add_parser("cartan", parents=[common], help="Cartan matrix, determinant, injectivity")
    p = sub.add_parser("chop", parents=[common], help="composition factors of a module file")
    p.add_argument("--module", required=True)
    p = sub.add_parser("projtest", parents=[common], help="projectivity: full, Sylow and elementary abelian restrictions")
    p.add_argument("--module", required=True)
    sub.add_parser("artin", parents=[common], help="cyclic induction cokernel")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--suite")
    which.add_argument("--all", action="store_true")
    p.add_argument("--corpus", help="JSON corpus config")
    return parser


def _need_point(args):
    if not args.group or not args.coeff:
        raise UsageError(f"{args.command} needs --group and --coeff")
    return parse_group_spec(args.group), parse_coeff_spec(args.coeff)


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _matrix_lines(rows):
    return ["  " + " ".join(f"{x:>3}" for x in r) for r in rows]


def cmd_describe(args) -> int:
    from .modrep import pim_modules, registry_for

    group, coeff = _need_point(args)
    alg = group_algebra(group, coeff)
    k = coeff if is_field(coeff) else coeff.residue_field
    reg = registry_for(group_algebra(group, k))
    if is_field(coeff):
        pims = [P.module.dim for P in pim_modules(alg, args.seed)]
    else:
        pims = [P.module.dim for P in ar.chain_pims(alg, args.seed)]
    payload = {
        "group": args.group,
        "order": group.order,
        "coeff": coeff.spec(),
        "simples": [{"dim": d, "end_dim": e} for d, e in zip(reg.dims, reg.end_dims)],
        "pims": [{"dim": d} for d in pims],
    }
    lines = [f"group {args.group} (order {group.order}) over {coeff.spec()}", "simples:"]
    lines += [f"  S{i}: dim {d}, End dim {e}" for i, (d, e) in enumerate(zip(reg.dims, reg.end_dims))]
    lines.append("PIMs:")
    lines += [f"  P{i}: rank {d}" for i, d in enumerate(pims)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cartan(args) -> int:
    from .grothendieck import cartan_table
    from .exactla.snf import determinant
    from .modrep import registry_for

    group, coeff = _need_point(args)
    alg = group_algebra(group, coeff)
    if is_field(coeff):
        reg = registry_for(alg)
        rows = cartan_table(alg, args.seed).tolist()
        det = determinant(cartan_table(alg, args.seed))
        extra = {}
    else:
        reg = registry_for(group_algebra(group, coeff.residue_field))
        cc = ar.cartan_chain(alg, args.seed)
        rows, det = cc.table.tolist(), cc.det
        extra = {"length": cc.length, "scaling_ok": cc.scaling_ok, "field_det": cc.field_det}
    payload = {
        "simples": [{"dim": d, "end_dim": e} for d, e in zip(reg.dims, reg.end_dims)],
        "cartan": rows,
        "det": det,
        "injective": det != 0,
        **extra,
    }
    lines = [f"Cartan matrix of {args.group} over {coeff.spec()} (rows: PIMs, columns: simples)"]
    lines += _matrix_lines(rows)
    lines.append(f"det = {det}; Cartan map {'injective' if det else 'NOT injective'}")
    if extra:
        lines.append(f"scaling by length {extra['length']}: {'ok' if extra['scaling_ok'] else 'FAILED'}")
    _emit(args, payload, lines)
    ok = det != 0 and extra.get("scaling_ok", True)
    return EXIT_OK if ok else EXIT_FAIL


def _load_any(path):
    from .modrep.module import _read_json, parse_module_data

    _, coeff, _, _ = parse_module_data(_read_json(path))
    if is_field(coeff):
        from .modrep import load_module

        return load_module(path)
    return ar.load_chain_module(path)


def _check_point(args, m):
    if args.group and parse_group_spec(args.group) != m.group:
        raise UsageError("--group does not match the module file")
    ring = getattr(m, "ring", None) or m.field
    if args.coeff and parse_coeff_spec(args.coeff) != ring:
        raise UsageError("--coeff does not match the module file")


def cmd_chop(args) -> int:
    from .modrep import chop, registry_for

    m = _load_any(args.module)
    _check_point(args, m)
    if isinstance(m, ar.ChainRepModule):
        mult = ar.chain_class(m, args.seed)
    else:
        mult = chop(m, args.seed)
    dims = registry_for(mult.registry.algebra).dims
    payload = {"dim": m.dim, "multiplicities": list(mult), "simple_dims": dims}
    lines = [f"module of dim {m.dim}: composition factors"]
    lines += [f"  S{i} (dim {d}) x {c}" for i, (d, c) in enumerate(zip(dims, mult)) if c]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_projtest(args) -> int:
    from .verify import chain_chouinard_verdicts, chouinard_verdicts, projectivity_subgroups

    m = _load_any(args.module)
    _check_point(args, m)
    p = m.ring.p if isinstance(m, ar.ChainRepModule) else m.field.p
    syl, elems = projectivity_subgroups(m.group, p)
    verdict = chain_chouinard_verdicts if isinstance(m, ar.ChainRepModule) else chouinard_verdicts
    full, sylow, elem = verdict(m, syl, elems, args.seed)
    agree = full == sylow == elem
    payload = {
        "dim": m.dim,
        "projective": full,
        "sylow_restriction": sylow,
        "elementary_abelian_restrictions": elem,
        "sylow_order": syl.order,
        "elementary_abelian_orders": [e.order for e in elems],
        "agree": agree,
    }
    lines = [
        f"{'test':<34} projective",
        f"{'full group':<34} {full}",
        f"{f'Sylow subgroup (order {syl.order})':<34} {sylow}",
        f"{f'{len(elems)} maximal elementary abelian':<34} {elem}",
        "verdicts agree" if agree else "VERDICTS DISAGREE",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_artin(args) -> int:
    from .grothendieck import artin_exponent_check

    group, coeff = _need_point(args)
    k = coeff if is_field(coeff) else coeff.residue_field
    res = artin_exponent_check(group, k, args.seed)
    payload = {
        "exponent": res.exponent,
        "free_rank": res.free_rank,
        "divisors": list(res.divisors),
        "divides_order_squared": res.bound_ok,
        "conjugation_invariant": res.invariant_under_conjugates,
    }
    lines = [
        f"cokernel of induction from cyclic subgroups of {args.group} over {k.spec()}",
        f"  free rank {res.free_rank}, elementary divisors {list(res.divisors)}",
        f"  exponent {res.exponent} divides |G|^2 = {group.order ** 2}: {res.bound_ok}",
    ]
    _emit(args, payload, lines)
    ok = res.free_rank == 0 and res.bound_ok and res.invariant_under_conjugates
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    from .verify import SUITES, load_corpus, run_corpus, run_suite_or_skip
    from .errors import UnknownSuite

    if args.suite is not None and args.suite not in SUITES:
        raise UnknownSuite(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    names = [args.suite] if args.suite else list(SUITES)
    if args.corpus:
        if args.group or args.coeff:
            raise UsageError("--corpus cannot be combined with --group/--coeff")
        config = load_corpus(args.corpus)
        reports = run_corpus(config, args.seed, suites=None if args.all else names)
    elif args.group and args.coeff:
        parse_group_spec(args.group)
        parse_coeff_spec(args.coeff)
        reports = [run_suite_or_skip(n, args.group, args.coeff, args.seed) for n in names]
    elif args.group or args.coeff:
        raise UsageError("verify needs both --group and --coeff, or --corpus")
    else:
        reports = run_corpus(None, args.seed, suites=names)
    failed = [r for r in reports if r.status == "fail"]
    if args.json:
        print(json.dumps([r.to_json(stable=args.stable) for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(f"{r.status:<8} {r.suite:<18} {r.group:<10} {r.coeff:<12}")
            for c in r.checks:
                if c.status == "fail":
                    print(f"         failed check {c.name}: {json.dumps(c.to_json()['evidence'])}")
        print(f"{len(reports)} reports, {len(failed)} failed")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "describe": cmd_describe,
    "cartan": cmd_cartan,
    "chop": cmd_chop,
    "projtest": cmd_projtest,
    "artin": cmd_artin,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ModCartanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
