"""Batch command line front-end.

    quivhom ext   FILE MODULE_V MODULE_W [--json] [--bases]
    quivhom check FILE MODULE_V [--max-degree N] [--json]
    quivhom hyper FILE MODULE_V MODULE_W [--verify] [--json]
    quivhom gen   [--seed S] [--mode vector|p1] [--max-vertices N]
                  [--max-arrows N] [--max-dim N] [--max-twist N]

Exit codes: 0 success, 1 failed check, 2 parse error, 3 validation error,
4 incompatible modules, 5 internal cross-check failure.  QUIVHOM_LOG in
{quiet, info, debug} controls stderr logging.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
from typing import Optional

from .generate import generate_document
from .instances import Instance, InstanceError, load_instance
from .linalg import ExactMatrix, rank
from .rep import TwistedRep, delta_matrix, hom_space
from .resolution import (
    GradedMapFamily,
    check_resolution_exactness,
    lift_beta,
    resolution_layout,
)
from .sheaf import QSheafP1, cech_hyper, ext_quiver_sheaf

log = logging.getLogger("quivhom")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INCOMPATIBLE = 4
EXIT_CROSS_CHECK = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # exit 2 is reserved for file parse errors; bad flags are validation errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _configure_logging():
    level = os.environ.get("QUIVHOM_LOG", "quiet").strip().lower()
    levels = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    if level not in levels:
        level = "quiet"
    logging.basicConfig(stream=sys.stderr, level=levels[level],
                        format="quivhom: %(levelname)s: %(message)s")


def _load_file(path: str) -> tuple:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_PARSE)
    digest = hashlib.sha256(raw).hexdigest()
    try:
        document = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise CliError(f"{path}: not UTF-8: {e}", EXIT_PARSE)
    except json.JSONDecodeError as e:
        raise CliError(
            f"{path}: JSON parse error at byte offset {e.pos}: {e.msg}", EXIT_PARSE
        )
    try:
        instance = load_instance(document)
    except InstanceError as e:
        raise CliError(f"{path}: validation error at {e.path}: {e.reason}",
                       EXIT_VALIDATION)
    log.info("loaded %s (%s mode, %d vertices, %d arrows)", path, instance.mode,
             instance.quiver.n_vertices, instance.quiver.n_arrows)
    return instance, digest


def _pick_module(instance: Instance, name: str, mode: str):
    if name not in instance.modules:
        raise CliError(
            f"module {name!r} not present (have: {sorted(instance.modules)})",
            EXIT_INCOMPATIBLE,
        )
    if instance.mode != mode:
        raise CliError(
            f"module {name!r} is {instance.mode}-mode, this command needs {mode}-mode",
            EXIT_INCOMPATIBLE,
        )
    return instance.modules[name]


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}",
             f"instance: sha256:{report['digest']}"]
    for key in ("modules", "mode", "field"):
        if key in report:
            value = report[key]
            if isinstance(value, list):
                value = " ".join(value)
            lines.append(f"{key}: {value}")
    lines.append("")
    for key, value in report["result"].items():
        if key == "sequence":
            lines.append("exact sequence trace:")
            for term in value:
                lines.append(f"  {term['term']}: dim {term['dim']}")
            continue
        if key == "hom_basis":
            lines.append("hom basis:")
            for idx, morphism in enumerate(value):
                lines.append(f"  f[{idx}]: {morphism}")
            continue
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render_text(report))


def _vector_ext_report(V: TwistedRep, W: TwistedRep) -> dict:
    delta = delta_matrix(V, W)
    r0 = rank(delta)
    hom = delta.ncols - r0
    ext1 = delta.nrows - r0
    return {
        "hom": hom,
        "ext1": ext1,
        "ext2": 0,
        "h0_F": delta.ncols,
        "h0_G": delta.nrows,
        "h1_F": 0,
        "h1_G": 0,
        "rank_delta0": r0,
        "rank_delta1": 0,
        "sequence": [
            {"term": "Hom_B(V,W)", "dim": hom},
            {"term": "sum_i Hom(V_i,W_i)", "dim": delta.ncols},
            {"term": "sum_a Hom(M_a(x)V_ta,W_ha)", "dim": delta.nrows},
            {"term": "Ext1_B(V,W)", "dim": ext1},
            {"term": "Ext2_B(V,W)", "dim": 0},
        ],
    }


def _p1_ext_report(V: QSheafP1, W: QSheafP1) -> dict:
    r = ext_quiver_sheaf(V, W)
    return {
        "ext0": r.ext0,
        "ext1": r.ext1,
        "ext2": r.ext2,
        "h0_F": r.h0_F,
        "h0_G": r.h0_G,
        "h1_F": r.h1_F,
        "h1_G": r.h1_G,
        "rank_delta0": r.rank_delta0,
        "rank_delta1": r.rank_delta1,
        "sequence": [
            {"term": "Hom_B(V,W)", "dim": r.ext0},
            {"term": "sum_i Hom(V_i,W_i)", "dim": r.h0_F},
            {"term": "sum_a Hom(M_a(x)V_ta,W_ha)", "dim": r.h0_G},
            {"term": "Ext1_B(V,W)", "dim": r.ext1},
            {"term": "sum_i Ext1(V_i,W_i)", "dim": r.h1_F},
            {"term": "sum_a Ext1(M_a(x)V_ta,W_ha)", "dim": r.h1_G},
            {"term": "Ext2_B(V,W)", "dim": r.ext2},
        ],
    }


def _field_name(instance: Instance) -> str:
    return "q" if not instance.field.is_prime_field else f"fp:{instance.field.modulus}"


def cmd_ext(args) -> int:
    instance, digest = _load_file(args.file)
    report = {
        "command": "ext",
        "digest": digest,
        "modules": [args.module_v, args.module_w],
        "mode": instance.mode,
        "field": _field_name(instance),
    }
    if instance.mode == "vector":
        V = _pick_module(instance, args.module_v, "vector")
        W = _pick_module(instance, args.module_w, "vector")
        result = _vector_ext_report(V, W)
        if args.bases:
            result["hom_basis"] = [
                {f"f_{i}": [[str(x) for x in row] for row in f.blocks[i].to_lists()]
                 for i in range(V.quiver.n_vertices)}
                for f in hom_space(V, W)
            ]
    else:
        V = _pick_module(instance, args.module_v, "p1")
        W = _pick_module(instance, args.module_w, "p1")
        result = _p1_ext_report(V, W)
    report["result"] = result
    _emit(report, args.json)
    return EXIT_OK


def _random_element(rng: random.Random, V: TwistedRep):
    if V.field.is_prime_field:
        return rng.randrange(V.field.modulus)
    return rng.randint(-5, 5)


def cmd_check(args) -> int:
    if args.max_degree < 1:
        raise CliError(f"--max-degree must be >= 1, got {args.max_degree}",
                       EXIT_VALIDATION)
    instance, digest = _load_file(args.file)
    V = _pick_module(instance, args.module_v, "vector")
    n = args.max_degree
    exactness = check_resolution_exactness(V, n)

    # lifting round trip on a digest-seeded random beta
    layout = resolution_layout(V, n)
    rng = random.Random(int(digest[:16], 16))
    beta = {}
    for a, (t, h) in enumerate(V.quiver.arrows):
        for l in range(n):
            rows = V.dims[h]
            cols = V.twist[a] * layout.basis.dim[(t, l)]
            entries = [[_random_element(rng, V) for _ in range(cols)]
                       for _ in range(rows)]
            beta[(a, l)] = ExactMatrix(V.field, rows, cols, entries)
    try:
        lift_beta(V, GradedMapFamily(max_degree=n, beta=beta), layout)
        lift_ok = True
    except AssertionError:
        lift_ok = False

    checks = {
        "eps_injective": exactness.eps_injective,
        "ker_d_eq_im_eps": exactness.ker_d_eq_im_eps,
        "d_surjective": exactness.d_surjective,
        "lift_roundtrip": lift_ok,
    }
    report = {
        "command": "check",
        "digest": digest,
        "modules": [args.module_v],
        "mode": instance.mode,
        "field": _field_name(instance),
        "result": {
            "max_degree": n,
            **{k: ("pass" if ok else "FAIL") for k, ok in checks.items()},
        },
    }
    _emit(report, args.json)
    return EXIT_OK if all(checks.values()) else EXIT_CHECK_FAILED


def cmd_hyper(args) -> int:
    instance, digest = _load_file(args.file)
    V = _pick_module(instance, args.module_v, "p1")
    W = _pick_module(instance, args.module_w, "p1")
    hh = cech_hyper(V, W)
    result = {"hh0": hh[0], "hh1": hh[1], "hh2": hh[2]}
    verified: Optional[bool] = None
    if args.verify:
        r = ext_quiver_sheaf(V, W)
        verified = (r.ext0, r.ext1, r.ext2) == hh
        result["verify"] = "pass" if verified else "FAIL"
        result["ext_via_les"] = [r.ext0, r.ext1, r.ext2]
    report = {
        "command": "hyper",
        "digest": digest,
        "modules": [args.module_v, args.module_w],
        "mode": instance.mode,
        "field": _field_name(instance),
        "result": result,
    }
    _emit(report, args.json)
    if verified is False:
        sys.stderr.write("quivhom: hypercohomology disagrees with the long "
                         "exact sequence; this indicates a bug\n")
        return EXIT_CROSS_CHECK
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        document = generate_document(
            seed=args.seed, mode=args.mode, max_vertices=args.max_vertices,
            max_arrows=args.max_arrows, max_dim=args.max_dim,
            max_twist=args.max_twist,
        )
    except ValueError as e:
        raise CliError(str(e), EXIT_VALIDATION)
    sys.stdout.write(json.dumps(document, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quivhom",
                     description="Hom/Ext of twisted quiver representations "
                                 "and twisted quiver sheaves on P1")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("ext", help="Ext dimensions of a module pair",
                           parents=[], add_help=True)
    p_ext.add_argument("file")
    p_ext.add_argument("module_v")
    p_ext.add_argument("module_w")
    p_ext.add_argument("--json", action="store_true")
    p_ext.add_argument("--bases", action="store_true",
                       help="include a Hom basis in the report (vector mode)")
    p_ext.set_defaults(func=cmd_ext)

    p_check = sub.add_parser("check", help="resolution exactness and lifting checks")
    p_check.add_argument("file")
    p_check.add_argument("module_v")
    p_check.add_argument("--max-degree", type=int, default=4)
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_hyper = sub.add_parser("hyper", help="hypercohomology of the Hom complex")
    p_hyper.add_argument("file")
    p_hyper.add_argument("module_v")
    p_hyper.add_argument("module_w")
    p_hyper.add_argument("--verify", action="store_true",
                         help="cross-check against the long exact sequence")
    p_hyper.add_argument("--json", action="store_true")
    p_hyper.set_defaults(func=cmd_hyper)

    p_gen = sub.add_parser("gen", help="emit a random instance file")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--mode", choices=["vector", "p1"], default="vector")
    p_gen.add_argument("--max-vertices", type=int, default=4)
    p_gen.add_argument("--max-arrows", type=int, default=5)
    p_gen.add_argument("--max-dim", type=int, default=3)
    p_gen.add_argument("--max-twist", type=int, default=2)
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        sys.stderr.write(f"quivhom: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
