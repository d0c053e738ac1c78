"""
Command-line front end.

Usage:
    python main.py enumerate nc 4
    python main.py convolve mul p.json q.json -o out.json
    python main.py transform h data/examples/semicircle.json --order 8
    python main.py infinitesimal --family hermite --moments 4 --ladder 128,256,512 --format csv
    python main.py examples

Exit codes: 0 success, 2 size limit, 3 input contract violation, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Sequence

from models.law import FluctLaw, Law
from models.polynomial import MonicPoly
from utils.combinat import (
    MAX_PARTITION_N,
    configure_cache,
    enum_annular,
    enum_cyclic_intervals,
    enum_noncrossing,
    enum_partitions,
)
from utils.config import Config, load_config, parse_ladder
from utils.cumulants import finite_cumulants_from_coeffs, moments
from utils.errors import FreeProbError, InputContractError
from utils.extrapolate import QUANTITIES, extrapolate
from utils.finconv import boxplus_d, boxtimes_d
from utils.fluctuations import fluctuations_from_inf_moments, multiplicative_convolve_fluct, one_derivative
from utils.freeprob import law_semicircle
from utils.registry import get_family, list_family_names, principal_minor_flow
from utils.report_generator import (
    csv_text,
    examples_payload,
    ladder_header,
    ladder_payload,
    ladder_rows,
    render_examples_text,
    sequence_payload,
)
from utils.storage import decode_rationals, load_json, save_json, save_text
from utils.transforms import h_coeffs_combinatorial, h_transform_analytic, k_from_moments, markov_krein_inverse, theta

log = logging.getLogger(__name__)

TRANSFORMS = ("cumulants", "moments", "h", "k", "mk", "theta", "rhat")
ENUM_KINDS = ("partitions", "nc", "annular", "ci")


# -----------------------------
# Output
# -----------------------------
def _emit_json(data: dict, out: Optional[str]) -> None:
    if out:
        save_json(out, data)
        print(f"✅ Wrote {out}")
    else:
        print(json.dumps(data, indent=4))


def _emit_text(text: str, out: Optional[str]) -> None:
    if out:
        save_text(out, text)
        print(f"✅ Wrote {out}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# -----------------------------
# Commands
# -----------------------------
def cmd_enumerate(args, config: Config) -> int:
    params = args.params
    expected = 2 if args.kind == "annular" else 1
    if len(params) != expected:
        raise InputContractError(f"enumerate {args.kind} takes {expected} integer argument(s), got {len(params)}")
    if args.kind == "partitions":
        items = enum_partitions(params[0])
    elif args.kind == "nc":
        items = enum_noncrossing(params[0])
    elif args.kind == "annular":
        items = enum_annular(params[0], params[1])
    else:
        items = enum_cyclic_intervals(params[0])
    data = {"kind": args.kind, "params": params, "count": len(items), "items": [str(x) for x in items]}
    if args.format == "text":
        lines = [str(x) for x in items] + [f"count: {len(items)}"]
        _emit_text("\n".join(lines), args.output)
    else:
        _emit_json(data, args.output)
    return 0


def cmd_convolve(args, config: Config) -> int:
    p = MonicPoly.from_dict(load_json(args.p))
    q = MonicPoly.from_dict(load_json(args.q))
    result = boxplus_d(p, q) if args.op == "add" else boxtimes_d(p, q)
    _emit_json(result.to_dict(), args.output)
    return 0


def _transform_poly(name: str, p: MonicPoly, order: int, with_approx: bool) -> dict:
    N = min(order, p.d) if name == "cumulants" else order
    if name == "cumulants":
        method = "partitions" if N <= MAX_PARTITION_N else "recursive"
        values = finite_cumulants_from_coeffs(p, N, method=method)
    else:
        values = moments(p, N)
    return {"transform": name, "degree": p.d, "order": N, name: sequence_payload(values, with_approx)}


def cmd_transform(args, config: Config) -> int:
    data = load_json(args.input)
    order = config.order
    if args.name in ("cumulants", "moments"):
        payload = _transform_poly(args.name, MonicPoly.from_dict(data), order, args.approx)
        _emit_json(payload, args.output)
        return 0

    law = Law.from_dict(data)
    law = law.truncate(min(order, law.order))
    payload = {"transform": args.name, "order": law.order}
    if args.name == "h":
        payload["series"] = h_transform_analytic(law.cauchy()).to_dict()
        payload["h"] = sequence_payload(h_coeffs_combinatorial(law.r, law.order), args.approx)
    elif args.name == "k":
        payload["series"] = k_from_moments(law.m).to_dict()
    elif args.name == "mk":
        mk = markov_krein_inverse(law.cauchy())
        payload["series"] = mk.to_dict()
        payload["moments"] = sequence_payload(mk.moments(), args.approx)
    elif args.name == "theta":
        payload["series"] = theta(law.cauchy()).to_dict()
    else:
        mprime = decode_rationals(data["inf_moments"])[: law.order] if "inf_moments" in data else [0] * law.order
        fluct = FluctLaw(law, fluctuations_from_inf_moments(law, mprime))
        payload["rhat"] = sequence_payload(fluct.rhat, args.approx)
    _emit_json(payload, args.output)
    return 0


def _family_params(args) -> dict:
    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.atoms is not None:
        params["atoms"] = [a for a in args.atoms.split(",") if a]
    return params


def cmd_infinitesimal(args, config: Config) -> int:
    family = get_family(args.family, **_family_params(args))
    target = principal_minor_flow(family, args.minor) if args.minor else family
    reports = extrapolate(target, args.moments, config.ladder, args.quantity, config.workers)
    if config.output_format == "csv":
        _emit_text(csv_text(ladder_header(args.approx), ladder_rows(reports, args.approx)), args.output)
    else:
        _emit_json(ladder_payload(target.label(), reports, args.approx), args.output)
    return 0


def example_tables(order: int) -> Dict[str, Dict[str, Sequence]]:
    tables: Dict[str, Dict[str, Sequence]] = {}

    hermite = get_family("hermite").meta(order)
    tables["Hermite (semicircle)"] = {
        "h": h_coeffs_combinatorial(hermite.law.r, order),
        "m' = -h": hermite.inf.mprime,
        "m' after one derivative": one_derivative(hermite.inf).mprime,
    }
    tables["Bernoulli pairs"] = {"rhat": get_family("bernoulli").meta(order).fluct.rhat}
    tables["Laguerre inverse"] = {"rhat": get_family("laguerre_inverse").meta(order).fluct.rhat}

    small = min(order, 8)
    semicircle = law_semicircle(small)
    laguerre = get_family("laguerre").meta(small)
    product, _ = multiplicative_convolve_fluct(FluctLaw(semicircle, (0,) * small), laguerre.fluct)
    tables["Semicircle times Marchenko-Pastur"] = {
        "rhat": product.rhat,
        "-h(semicircle)": tuple(-h for h in h_coeffs_combinatorial(semicircle.r, small)),
    }

    dirac = get_family("dirac_perturbation", alpha=0, atoms=[1]).meta(order)
    tables["Dirac perturbation alpha=0, atoms=1"] = {"m'": dirac.inf.mprime, "rhat": dirac.fluct.rhat}
    return tables


def cmd_examples(args, config: Config) -> int:
    tables = example_tables(config.order)
    if args.format == "text":
        _emit_text(render_examples_text(tables), args.output)
    else:
        _emit_json(examples_payload(tables, args.approx), args.output)
    return 0


# -----------------------------
# Parser
# -----------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description="Finite free probability with exact arithmetic.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--config", help="key=value configuration file")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--approx", action="store_true", help="add decimal renderings")
    common.add_argument("--order", type=int, help="truncation order N (1..10)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list partitions and permutations")
    p.add_argument("kind", choices=ENUM_KINDS)
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("convolve", parents=[common], help="finite free convolution of two polynomial files")
    p.add_argument("op", choices=("add", "mul"))
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(handler=cmd_convolve)

    p = sub.add_parser("transform", parents=[common], help="sequences and series of a polynomial or law file")
    p.add_argument("name", choices=TRANSFORMS)
    p.add_argument("input")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("infinitesimal", parents=[common], help="Richardson ladder for a family")
    p.add_argument("--family", required=True, choices=list_family_names())
    p.add_argument("--moments", type=int, required=True, help="largest n")
    p.add_argument("--ladder", help="comma-separated increasing degrees")
    p.add_argument("--quantity", choices=QUANTITIES, default="moments")
    p.add_argument("--minor", type=int, default=0, help="differentiate s times (principal minor flow)")
    p.add_argument("--alpha", help="dirac_perturbation: bulk root")
    p.add_argument("--atoms", help="dirac_perturbation: comma-separated outlier roots")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--workers", type=int)
    p.set_defaults(handler=cmd_infinitesimal)

    p = sub.add_parser("examples", parents=[common], help="reproduce the worked example tables")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=cmd_examples)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        overrides = {"order": args.order}
        if args.command == "infinitesimal":
            overrides.update(
                ladder=parse_ladder(args.ladder) if args.ladder else None,
                output_format=args.format,
                workers=args.workers,
            )
        config = load_config(args.config, **overrides)
        configure_cache(config.cache_dir)
        return args.handler(args, config)
    except FreeProbError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
