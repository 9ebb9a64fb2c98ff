"""Command line interface.

Exit codes: 0 for success and positive verdicts, 1 for negative verdicts
(decomposition not induced, certificate rejected, solution infeasible),
2 for any error (bad input, unmet precondition, resource limit).
Results go to stdout, progress notes to stderr; given the same inputs
and flags the stdout bytes are deterministic.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import degrees as dg
from . import polytope
from .errors import StanleyDepthError
from .fields import field_from_name
from .hilbert import (
    decomposition_to_json,
    hdepth,
    load_decomposition_file,
    partition_to_json,
    require_g_determined,
    truncated_series,
)
from .modules import load_module_file
from .stanley import (
    certificate_json,
    check,
    extract_witness,
    sdepth,
    verify_certificate,
)

CHECK_MODES = ("auto", "symbolic", "transversal", "unified", "randomized")


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


def _add_module_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("module", help="module presentation (JSON file)")
    p.add_argument("--field", default=None, metavar="F",
                   help="override the coefficient field: Q or F<p> (p prime)")
    p.add_argument("--g", default=None, metavar="G",
                   help="comma-separated degree bound, e.g. 2,2,1")


def _parse_g(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise StanleyDepthError(f"--g must be comma-separated integers, got {text!r}") from exc


def _load_module(args):
    field = field_from_name(args.field) if args.field else None
    return load_module_file(args.module, field_override=field, g_override=_parse_g(args.g))


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        _progress(f"wrote {path}")


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_info(args) -> int:
    gm = _load_module(args)
    total = sum(gm.dim(a) for a in dg.box(dg.zero(gm.n), gm.g))
    violation = gm.verify_g_determined()
    print(f"n = {gm.n}")
    print(f"field = {gm.field!r}")
    print(f"g = {','.join(str(x) for x in gm.g)}")
    print(f"generators = {len(gm.presentation.generator_degrees)}")
    print(f"relations = {len(gm.presentation.relations)}")
    print(f"total dimension on [0, g] = {total}")
    if violation is None:
        print("determined: yes")
    else:
        a, k = violation
        print(f"determined: no (multiplication by X_{k + 1} fails at degree {tuple(a)})")
    return 0


def cmd_hseries(args) -> int:
    gm = _load_module(args)
    series = truncated_series(gm)
    for a in dg.box(dg.zero(gm.n), gm.g):
        c = series.coefficient(a)
        if c or args.all:
            print(f"{','.join(str(x) for x in a)} {c}")
    return 0


def cmd_hdepth(args) -> int:
    gm = _load_module(args)
    require_g_determined(gm)
    value, partition = hdepth(gm, return_partition=True)
    print(f"hdepth = {'inf' if value == math.inf else value}")
    if args.output and partition is not None:
        _write_output(args.output, _json_text(partition_to_json(partition)))
    return 0


def cmd_sdepth(args) -> int:
    gm = _load_module(args)
    result = sdepth(gm, mode=args.mode, with_witness=not args.no_witness, seed=args.seed)
    print(f"sdepth = {'inf' if result.value == math.inf else result.value}")
    for zset, shift in result.decomposition.summands:
        zs = ",".join(str(j + 1) for j in sorted(zset))
        print(f"summand shift=({','.join(str(x) for x in shift)}) vars={{{zs}}}")
    if args.output:
        if result.witness is None:
            raise StanleyDepthError("cannot write a certificate without a witness "
                                    "(drop --no-witness)")
        cert = certificate_json(gm, result.decomposition, result.witness)
        _write_output(args.output, _json_text(cert))
        if args.output != "-":
            print(f"certificate: {args.output}")
    return 0


def cmd_check(args) -> int:
    gm = _load_module(args)
    require_g_determined(gm)
    d = load_decomposition_file(args.decomposition, gm.g)
    report = check(gm, d, mode=args.mode, seed=args.seed)
    line = report.verdict
    if report.failing_degree is not None:
        line += f" (failing degree {','.join(str(x) for x in report.failing_degree)})"
    if report.detail:
        line += f" [{report.detail}]"
    print(line)
    _progress(f"mode: {report.mode}")
    return 0 if report.induced else 1


def cmd_certify(args) -> int:
    gm = _load_module(args)
    require_g_determined(gm)
    d = load_decomposition_file(args.decomposition, gm.g)
    report = check(gm, d, mode=args.mode, seed=args.seed)
    if not report.induced:
        line = "not_induced"
        if report.failing_degree is not None:
            line += f" (failing degree {','.join(str(x) for x in report.failing_degree)})"
        print(line)
        return 1
    witness = extract_witness(gm, d, check_first=False)
    cert = certificate_json(gm, d, witness)
    _write_output(args.output, _json_text(cert))
    if args.output and args.output != "-":
        print("induced; certificate written")
    return 0


def cmd_verify_cert(args) -> int:
    gm = _load_module(args)
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StanleyDepthError(f"cannot read certificate {args.certificate}: {exc}") from exc
    ok, message = verify_certificate(gm, cert)
    print(("valid: " if ok else "invalid: ") + message)
    return 0 if ok else 1


def cmd_export_polytope(args) -> int:
    gm = _load_module(args)
    require_g_determined(gm)
    if args.system == "hilbert":
        system = polytope.build_hilbert_system(gm)
    else:
        if args.max_subset == "inf":
            max_subset = None
        else:
            try:
                max_subset = int(args.max_subset)
            except ValueError as exc:
                raise StanleyDepthError(
                    f"--max-subset must be an integer or 'inf', got {args.max_subset!r}"
                ) from exc
        system = polytope.build_stanley_inequalities(gm, max_subset=max_subset,
                                                     min_depth=args.depth)
    comment = f"module: {os.path.basename(args.module)}; system: {args.system}"
    if args.output and args.output != "-":
        sip_path, lp_path = polytope.export_ip(system, args.output, comment)
        print(f"wrote {sip_path} and {lp_path}")
    else:
        text = polytope.export_lp(system) if args.format == "lp" else polytope.export_sip(system, comment)
        sys.stdout.write(text)
    _progress(f"{len(system.variables)} variables, {len(system.rows)} rows")
    return 0


def cmd_import_solution(args) -> int:
    gm = _load_module(args)
    require_g_determined(gm)
    system = polytope.build_hilbert_system(gm)
    try:
        with open(args.solution, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StanleyDepthError(f"cannot read solution {args.solution}: {exc}") from exc
    d = polytope.import_solution(gm, system, text)
    values = polytope.decomposition_to_point(system, d)
    if not gm.field.is_finite():
        failing = polytope.check_u_vector(gm, system, values)
        if failing is not None:
            print(f"not_induced (failing degree {','.join(str(x) for x in failing)})")
            return 1
        print("induced")
    else:
        _progress("finite field: run `check` on the written decomposition for a verdict")
        print("hilbert_decomposition")
    if args.output:
        _write_output(args.output, _json_text(decomposition_to_json(d)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stanleydepth",
        description="Hilbert and Stanley depth of multigraded modules, "
                    "with exact certificates.",
    )
    parser.add_argument("--threads", type=int,
                        default=int(os.environ.get("STANLEYDEPTH_THREADS", "1")),
                        help="accepted for interface stability; execution is sequential")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="presentation summary and determinedness check")
    _add_module_arguments(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("hseries", help="truncated Hilbert series on [0, g]")
    _add_module_arguments(p)
    p.add_argument("--all", action="store_true", help="include zero coefficients")
    p.set_defaults(func=cmd_hseries)

    p = sub.add_parser("hdepth", help="Hilbert depth via interval partitions")
    _add_module_arguments(p)
    p.add_argument("--output", default=None, help="write the witnessing partition (JSON)")
    p.set_defaults(func=cmd_hdepth)

    p = sub.add_parser("sdepth", help="Stanley depth with certificate")
    _add_module_arguments(p)
    p.add_argument("--mode", choices=CHECK_MODES, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-witness", action="store_true",
                   help="skip witness extraction (no certificate)")
    p.add_argument("--output", default=None, help="write the certificate (JSON)")
    p.set_defaults(func=cmd_sdepth)

    p = sub.add_parser("check", help="is a Hilbert decomposition induced?")
    _add_module_arguments(p)
    p.add_argument("decomposition", help="decomposition (JSON file)")
    p.add_argument("--mode", choices=CHECK_MODES, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", help="check and extract a witness certificate")
    _add_module_arguments(p)
    p.add_argument("decomposition", help="decomposition (JSON file)")
    p.add_argument("--mode", choices=CHECK_MODES, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="certificate path (default stdout)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-cert", help="re-check a certificate from scratch")
    _add_module_arguments(p)
    p.add_argument("certificate", help="certificate (JSON file)")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("export-polytope", help="write the counting system (.sip or .lp)")
    _add_module_arguments(p)
    p.add_argument("--system", choices=("hilbert", "stanley"), default="hilbert")
    p.add_argument("--max-subset", default=str(polytope.DEFAULT_MAX_SUBSET),
                   help="subset size cap for rank inequalities, or 'inf'")
    p.add_argument("--depth", type=int, default=None,
                   help="drop variables with fewer than this many free coordinates")
    p.add_argument("--format", choices=("sip", "lp"), default="sip")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_export_polytope)

    p = sub.add_parser("import-solution", help="read a solver point back as a decomposition")
    _add_module_arguments(p)
    p.add_argument("solution", help="'name value' lines, one per variable")
    p.add_argument("--output", default=None, help="write the decomposition (JSON)")
    p.set_defaults(func=cmd_import_solution)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except StanleyDepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
