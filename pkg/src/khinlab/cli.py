"""Command-line front end: ``khinlab {constants,moment,witness,verify}``.

Exit codes: 0 success (inequality holds), 1 inequality violated,
2 domain error, 3 bit budget exceeded, 4 unreadable input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _engine
from .constants import (
    cached_breakpoint,
    haagerup_constant,
    mixed_littlewood_constant,
    multiple_khintchine_constant,
    p0,
    parse_exponent,
)
from .errors import BudgetExceededError, DomainError
from .forms import MultilinearForm, Theorem, equivalence_report, verify_mixed_littlewood
from .moments import exact_moment, l2_of_tensor
from .tensorfile import TensorFileError, load_tensor, tensor_document
from .witnesses import WitnessKind, lower_bound_sweep

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_DOMAIN = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4

CSV_COLUMNS = ["N", "l2", "moment", "ratio", "bound"]


@dataclass
class RunManifest:
    command: str
    parameters: dict
    bit_budget: int
    outputs: list = field(default_factory=list)
    wall_time_ms: int = 0


def _exponent_json(p):
    return "inf" if p == math.inf else p


def _param_json(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, float):
        return _exponent_json(value)
    return value


def _exponent_arg(text):
    try:
        return parse_exponent(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_constants(args):
    p = args.p
    bp = cached_breakpoint()
    A = haagerup_constant(p)
    doc = {
        "command": "constants",
        "p": _exponent_json(p),
        "p0": bp.p0,
        "p0_residual": bp.residual,
        "A": {"value": A.value, "branch": A.branch.value},
    }
    if args.r is not None:
        doc["K"] = {"m": args.m, "r": args.r, "value": multiple_khintchine_constant(args.m, args.r)}
    if args.M is not None:
        doc["C"] = {"M": args.M, "value": mixed_littlewood_constant(args.M, p)}
    return doc, None, EXIT_OK


def cmd_moment(args):
    y, digest = load_tensor(args.tensor_file)
    res = exact_moment(y, args.r, bit_budget=args.bit_budget, threads=args.threads)
    doc = {
        "command": "moment",
        "input_sha256": digest,
        "shape": list(y.shape),
        "r": res.r,
        "value": res.value,
        "configurations_enumerated": res.configurations_enumerated,
        "method": res.method.value,
        "l2": l2_of_tensor(y),
    }
    return doc, None, EXIT_OK


_KINDS = {"block": WitnessKind.BLOCK_ONES, "uniform": WitnessKind.UNIFORM, "auto": None}


def cmd_witness(args):
    kind = _KINDS[args.kind]
    if kind is None and 0 < args.r < 2:
        kind = WitnessKind.BLOCK_ONES if args.r <= p0() else WitnessKind.UNIFORM
    reports = lower_bound_sweep(args.m, args.r, args.N, kind=kind, threads=args.threads)
    rows = [
        {"N": rep.N, "l2": rep.l2, "moment": rep.moment, "ratio": rep.ratio, "bound": rep.theoretical_bound}
        for rep in reports
    ]
    doc = {
        "command": "witness",
        "m": args.m,
        "r": args.r,
        "kind": kind.value,
        "bound": multiple_khintchine_constant(args.m, args.r),
        "rows": rows,
    }
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return doc, buf.getvalue(), EXIT_OK


def _verify_input(args):
    if args.random is not None:
        rng = np.random.default_rng(args.seed)
        arr = rng.uniform(-1.0, 1.0, size=tuple(args.random))
        return arr, None
    if args.form_file is None:
        raise DomainError("verify needs --form-file or --random")
    return load_tensor(args.form_file)


def cmd_verify(args):
    arr, digest = _verify_input(args)
    if args.which == "equivalence":
        rep = equivalence_report(arr, args.p, bit_budget=args.bit_budget, threads=args.threads)
    else:
        form = MultilinearForm(arr, args.p)
        which = Theorem.MIXED_C if args.which == "C" else Theorem.MIXED_D
        rep = verify_mixed_littlewood(form, which, bit_budget=args.bit_budget, threads=args.threads)
    doc = {
        "command": "verify",
        "which": args.which,
        "theorem": rep.theorem.value,
        "p": _exponent_json(args.p),
        "shape": list(arr.shape),
        "input_sha256": digest,
        "seed": args.seed if args.random is not None else None,
        "lhs": rep.lhs,
        "norm": rep.norm,
        "ratio": rep.ratio,
        "constant": rep.constant,
        "holds": rep.holds,
    }
    extra = tensor_document(arr) if args.random is not None else None
    return doc, extra, EXIT_OK if rep.holds else EXIT_VIOLATED


COMMANDS = {
    "constants": cmd_constants,
    "moment": cmd_moment,
    "witness": cmd_witness,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="directory for output files and manifest.json")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker cap (default: $KHINLAB_THREADS, else CPU count)")
    common.add_argument("--bit-budget", type=int, default=_engine.DEFAULT_BIT_BUDGET)

    parser = argparse.ArgumentParser(prog="khinlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="Haagerup constants and derived optimal constants")
    p.add_argument("--p", type=_exponent_arg, required=True)
    p.add_argument("--M", type=int, help="number of factors for C_(M),p")
    p.add_argument("--r", type=float, help="moment exponent for K_m,r")
    p.add_argument("--m", type=int, default=1, help="order for K_m,r (default 1)")

    p = sub.add_parser("moment", parents=[common], help="exact Rademacher moment of a tensor file")
    p.add_argument("tensor_file", type=Path)
    p.add_argument("--r", type=float, required=True)

    p = sub.add_parser("witness", parents=[common], help="witness ratio sweep over N")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--N", type=int, nargs="*", default=[])
    p.add_argument("--kind", choices=sorted(_KINDS), default="auto")

    p = sub.add_parser("verify", parents=[common], help="verify a mixed Littlewood inequality")
    p.add_argument("--form-file", type=Path)
    p.add_argument("--random", type=_positive_int, nargs="+", metavar="N",
                   help="use a random form of this shape, entries uniform in [-1, 1] (see --seed)")
    p.add_argument("--p", type=_exponent_arg, required=True)
    p.add_argument("--which", choices=["C", "D", "equivalence"], default="C")
    return parser


def _dumps(doc):
    return json.dumps(doc, indent=2, allow_nan=False)


def _write_outputs(args, doc, extra, manifest):
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    files = {f"{args.command}.json": _dumps(doc) + "\n"}
    if args.command == "witness":
        files["witness.csv"] = extra
    elif args.command == "verify" and extra is not None:
        files["form.json"] = json.dumps(extra) + "\n"
    for name, text in files.items():
        path = out / name
        path.write_text(text, newline="")
        manifest.outputs.append(str(path))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        doc, extra, code = COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"khinlab: bit budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TensorFileError as exc:
        print(f"khinlab: cannot parse input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, OverflowError) as exc:
        print(f"khinlab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.format == "csv" and args.command == "witness":
        sys.stdout.write(extra)
    else:
        print(_dumps(doc))
    if args.out is not None:
        params = {k: _param_json(v) for k, v in vars(args).items()
                  if k not in ("out", "command") and v is not None}
        manifest = RunManifest(args.command, params, args.bit_budget)
        _write_outputs(args, doc, extra, manifest)
        manifest.wall_time_ms = int(round((time.perf_counter() - t0) * 1000))
        (args.out / "manifest.json").write_text(_dumps(asdict(manifest)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
