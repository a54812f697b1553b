"""Command line front end: ``biquot {cohomology,hlp,betti,moment} ...``.

Exit codes: 0 success or Hard Lefschetz, 1 not Hard Lefschetz, 2 invalid
input, 3 resource limit hit.  Nothing is written to stdout on 2 or 3.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .biquotient import GroupSpec, TorusSpec, cohomology_presentation
from .groebner import DEGREVLEX, LEX, Budget, GroebnerLimitError
from .lefschetz import (
    OmegaCandidate,
    betti_numbers,
    default_omega,
    is_hard_lefschetz,
    relations_basis,
    timed_hlp,
    verdict_json,
)
from .momentmap import PolytopeError, emit, polytope_image
from .polyring import to_rational

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3

BUDGET_ENV = "BIQUOT_BUDGET"

# The default class on rank <= 4 peaks at 43 basis elements (Sp(4), Spin(9))
# and about 3k coefficient bits for other rational classes; rank 5 needs 73+.
BUDGETS = {
    "default": Budget(max_basis=64, max_coeff_bits=16_384),
    "large": Budget(),
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    group: GroupSpec | None = None
    torus: TorusSpec | None = None
    omega: tuple | None = None
    fmt: str = "json"
    output: str | None = None
    budget: Budget = field(default_factory=Budget)
    order: str = "grevlex"
    params: tuple = (1, 1, 1)
    timing: bool = False


_TORUS_RE = re.compile(r"^s(\d)?([12])$")


def parse_torus(text: str, group: GroupSpec, k: int | None) -> TorusSpec:
    t = text.strip().lower().replace("_", "")
    if t == "eschenburg":
        spec = TorusSpec("eschenburg")
    elif group.family == "SU":
        if t in ("sk1", "sk2"):
            t = "s" + t[-1]
        m = _TORUS_RE.match(t)
        if not m:
            raise UsageError(f"unknown torus {text!r} for {group.name}")
        kk = int(m.group(1)) if m.group(1) else k
        if m.group(1) and k is not None and k != kk:
            raise UsageError(f"torus {text!r} disagrees with --k {k}")
        if kk is None:
            raise UsageError(f"{group.name} tori need k (e.g. --torus s12 or --torus s2 --k 1)")
        spec = TorusSpec("S_k" + m.group(2), kk)
    else:
        if t not in ("s1", "s2"):
            raise UsageError(f"unknown torus {text!r} for {group.name}; use s1 or s2")
        if k is not None:
            raise UsageError(f"--k is only meaningful for SU(n)")
        spec = TorusSpec("S_" + t[-1])
    spec.validate_for(group)
    return spec


def parse_rationals(text: str, what: str) -> tuple:
    try:
        return tuple(to_rational(part.strip()) for part in text.split(","))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from exc


def resolve_budget(args) -> Budget:
    name = args.budget or os.environ.get(BUDGET_ENV) or "default"
    if name not in BUDGETS:
        raise UsageError(f"unknown budget {name!r}; choose from {', '.join(BUDGETS)}")
    base = BUDGETS[name]
    return Budget(
        max_basis=args.max_basis if args.max_basis is not None else base.max_basis,
        max_coeff_bits=args.max_coeff_bits if args.max_coeff_bits is not None else base.max_coeff_bits,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biquot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, selectors=True):
        if selectors:
            p.add_argument("--group", required=True, help="su, sp, spinodd (B), spineven (D)")
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--torus", required=True, help="s1, s2, s{k}{1|2}, eschenburg")
            p.add_argument("--k", type=int, default=None)
            p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
            p.add_argument("--budget", default=None, help=f"default or large (env {BUDGET_ENV})")
            p.add_argument("--max-basis", type=int, default=None)
            p.add_argument("--max-coeff-bits", type=int, default=None)
        p.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("cohomology", help="ring presentation as JSON")
    common(p)
    p = sub.add_parser("hlp", help="Hard Lefschetz test of omega")
    common(p)
    p.add_argument("--omega", default=None, help="comma-separated rational coefficients")
    p.add_argument("--timing", action="store_true", help="report runtime_ms")
    p = sub.add_parser("betti", help="Betti numbers and Euler characteristic")
    common(p)
    p = sub.add_parser("moment", help="moment map image of the Eschenburg flag")
    common(p, selectors=False)
    p.add_argument("--params", default="1,1,1", help="a,b,c edge-length scales")
    p.add_argument("--format", dest="fmt", choices=("json", "svg"), default="json")
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(args.subcommand, output=args.output)
    if args.subcommand == "moment":
        cfg.fmt = args.fmt
        cfg.params = parse_rationals(args.params, "params")
        if len(cfg.params) != 3:
            raise UsageError("--params takes exactly three values a,b,c")
        return cfg
    try:
        cfg.group = GroupSpec(args.group, args.n)
        cfg.torus = parse_torus(args.torus, cfg.group, args.k)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cfg.order = args.order
    cfg.budget = resolve_budget(args)
    if getattr(args, "omega", None) is not None:
        cfg.omega = parse_rationals(args.omega, "omega")
    cfg.timing = getattr(args, "timing", False)
    return cfg


def _write(cfg: RunConfig, data: bytes | str):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_cohomology(cfg: RunConfig) -> int:
    pres = cohomology_presentation(cfg.group, cfg.torus)
    _write(cfg, pres.dumps())
    return EXIT_OK


def cmd_hlp(cfg: RunConfig) -> int:
    pres = cohomology_presentation(cfg.group, cfg.torus)
    if cfg.omega is None:
        w = default_omega(pres)
    else:
        if len(cfg.omega) != pres.context.nvars:
            raise UsageError(f"--omega needs {pres.context.nvars} coefficients, got {len(cfg.omega)}")
        w = OmegaCandidate.from_coefficients(pres, cfg.omega)
    order = LEX if cfg.order == "lex" else DEGREVLEX
    if cfg.timing:
        verdict, ms = timed_hlp(pres, w, order=order, budget=cfg.budget)
    else:
        verdict, ms = is_hard_lefschetz(pres, w, order=order, budget=cfg.budget), None
    betti = betti_numbers(pres, relations_basis(pres, order, cfg.budget))
    _write(cfg, verdict_json(verdict, betti, ms))
    return EXIT_OK if verdict.passes else EXIT_FAIL


def cmd_betti(cfg: RunConfig) -> int:
    pres = cohomology_presentation(cfg.group, cfg.torus)
    order = LEX if cfg.order == "lex" else DEGREVLEX
    betti = betti_numbers(pres, relations_basis(pres, order, cfg.budget))
    payload = {"betti": betti, "euler": sum(betti), "m": pres.m}
    _write(cfg, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_moment(cfg: RunConfig) -> int:
    img = polytope_image(cfg.params)
    _write(cfg, emit(img, cfg.fmt))
    return EXIT_OK


COMMANDS = {"cohomology": cmd_cohomology, "hlp": cmd_hlp, "betti": cmd_betti, "moment": cmd_moment}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.subcommand](cfg)
    except (UsageError, PolytopeError) as exc:
        print(f"biquot: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GroebnerLimitError as exc:
        print(f"biquot: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"biquot: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
