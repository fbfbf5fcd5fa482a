"""
Command-line surface: build zoo models, classify them, check the theorems,
and emit overlap tables, Born-rule and convergence reports.

Exit codes: 0 success or expected verdict, 1 verdict mismatch, 2 input error.
"""

import argparse
import csv
import json
import logging
import os
import sys

from ontoscope import create_run_config
from ontoscope.analysis.classify import classify_model
from ontoscope.analysis.convergence import born_convergence
from ontoscope.analysis.feasibility import theorem3_lp
from ontoscope.analysis.overlap_table import overlap_table
from ontoscope.analysis.theorem1 import theorem1_check
from ontoscope.analysis.theorem2 import theorem2_check, twin_procedures
from ontoscope.analysis.theorem3 import MODE_ALIASES, Theorem3Mode, parse_mode, theorem3_enumerate
from ontoscope.errors import ConfigurationError, OntoscopeError
from ontoscope.models.classifier import F_TOLERANCE_FACTOR, sample_pairs
from ontoscope.models.ontic import sample_born_pairs, scaled_born_tolerance, verify_born
from ontoscope.utils.export import (
    build_summary_report,
    export_results_json,
    overlap_rows_to_csv_rows,
    write_csv,
    write_json,
)
from ontoscope.utils.model_document import load_model, save_model
from ontoscope.utils.validators import validate_fraction
from ontoscope.zoo import ZOO_KINDS, ZooModelSpec, build_zoo_model

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2


def _emit_json(payload, path):
    if path:
        write_json(payload, path)
        logger.info("Report written to %s", path)
    else:
        sys.stdout.write(export_results_json(payload) + "\n")


def cmd_zoo(args, run):
    errors = validate_fraction(args.fraction) if args.kind == "truncated" else []
    if errors:
        raise ConfigurationError("; ".join(errors))
    spec = ZooModelSpec(
        kind=args.kind,
        grid_size=run.grid_size,
        seed=run.seed,
        random_state_count=run.random_state_count if args.random_states is None else args.random_states,
        state_count=args.states,
        pair=tuple(args.pair),
        fraction=args.fraction,
        min_grid_size=run.min_grid_size,
    )
    model = build_zoo_model(spec)
    path = args.output or os.path.join(run.output_dir, f"{args.kind}.json")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    save_model(model, path)
    return EXIT_OK


def cmd_classify(args, run):
    model = load_model(args.model)
    report = classify_model(model, run)
    _emit_json(build_summary_report("classify", report.to_dict(), run, model), args.output)
    return EXIT_OK


def _theorem1(args, run):
    model = load_model(args.model)
    chi = model.state_for_label(args.chi)
    eta = model.state_for_label(args.eta)
    report = theorem1_check(
        model, chi, eta,
        tol=F_TOLERANCE_FACTOR * run.tolerance,
        orthogonality_threshold=run.orthogonality_threshold,
        eps_rel=run.support_eps_rel,
    )
    expected = not model.metadata.get("born_invalid", False)
    if args.expect is not None:
        expected = args.expect == "holds"
    _emit_json(build_summary_report("theorem1", report.to_dict(), run, model), args.output)
    return EXIT_OK if report.conclusion == expected else EXIT_MISMATCH


def _theorem2(args, run):
    model = load_model(args.model)
    state = model.state_for_label(args.state) if args.state else None
    psi, p1, p2 = twin_procedures(model, state)
    report = theorem2_check(model, psi, p1, p2, tol=run.tolerance)
    _emit_json(build_summary_report("theorem2", report.to_dict(), run, model), args.output)
    return EXIT_OK if report.holds else EXIT_MISMATCH


def _theorem3(args, run):
    mode = parse_mode(args.mode)
    if args.lp:
        certificate = theorem3_lp(args.points, mode, max_points=run.lp_max_points,
                                  residual_tol=run.lp_residual_tol)
    else:
        certificate = theorem3_enumerate(mode, ks_grid=run.theorem3_ks_grid)
    _emit_json(build_summary_report("theorem3", certificate.to_dict(), run), args.output)
    expected = mode is not Theorem3Mode.BOTH_NONCONTEXTUAL
    return EXIT_OK if certificate.feasible == expected else EXIT_MISMATCH


def cmd_theorem(args, run):
    if args.which in ("1", "2") and not args.model:
        raise ConfigurationError(f"theorem {args.which} needs --model")
    handler = {"1": _theorem1, "2": _theorem2, "3": _theorem3}[args.which]
    return handler(args, run)


def cmd_overlaps(args, run):
    model = load_model(args.model)
    pairs = sample_pairs(model, run.pair_budget, run.rng())
    rows = overlap_rows_to_csv_rows(
        overlap_table(model, pairs, run.f_overlap_floor, run.orthogonality_threshold)
    )
    if args.output:
        write_csv(rows, args.output)
        logger.info("Wrote %d overlap rows to %s", len(rows) - 1, args.output)
    else:
        csv.writer(sys.stdout).writerows(rows)
    return EXIT_OK


def cmd_born(args, run):
    model = load_model(args.model)
    count = run.born_pair_count if args.pairs is None else args.pairs
    pairs = sample_born_pairs(model, count, run.rng("born"))
    tol = scaled_born_tolerance(model.space.size) if model.space.is_sphere else run.tolerance
    report = verify_born(model, pairs, tol=tol)
    _emit_json(build_summary_report("born", report.to_dict(), run, model), args.output)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_convergence(args, run):
    grids = tuple(args.grids) if args.grids else run.convergence_grids
    count = run.born_pair_count if args.pairs is None else args.pairs
    report = born_convergence(grids, pair_count=count, seed=run.seed,
                              random_state_count=run.random_state_count)
    _emit_json(build_summary_report("convergence", report.to_dict(), run), args.output)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", choices=["development", "production", "testing"], default=None,
                        help="configuration profile (default: $ONTOSCOPE_ENV or development)")
    common.add_argument("--seed", type=int, default=None, help="overrides $ONTOSCOPE_SEED and the profile seed")
    common.add_argument("--n", type=int, default=None, help="ontic grid size N")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--pair-budget", type=int, default=None)
    common.add_argument("--log-level", default=None)
    common.add_argument("-o", "--output", default=None, help="output file (stdout when omitted)")

    parser = argparse.ArgumentParser(prog="ontoscope", description="Ontological-model verification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    pz = sub.add_parser("zoo", parents=[common], help="build a model and write its JSON document")
    pz.add_argument("kind", choices=sorted(ZOO_KINDS))
    pz.add_argument("--states", type=int, default=8, help="number of Haar states for bb")
    pz.add_argument("--random-states", type=int, default=None, help="number of Haar states for ks")
    pz.add_argument("--pair", nargs=2, metavar=("PSI", "PHI"), default=["+", "0"],
                    help="truncate mu_PSI over the support of mu_PHI")
    pz.add_argument("--fraction", type=float, default=0.5)
    pz.set_defaults(handler=cmd_zoo)

    pc = sub.add_parser("classify", parents=[common], help="classify a model document")
    pc.add_argument("model")
    pc.set_defaults(handler=cmd_classify)

    pt = sub.add_parser("theorem", parents=[common], help="check one of the three theorems")
    pt.add_argument("which", choices=["1", "2", "3"])
    pt.add_argument("--model", default=None)
    pt.add_argument("--chi", default="0")
    pt.add_argument("--eta", default="+")
    pt.add_argument("--state", default=None)
    pt.add_argument("--expect", choices=["holds", "fails"], default=None)
    pt.add_argument("--mode", choices=sorted(MODE_ALIASES), default="both-nc")
    pt.add_argument("--lp", action="store_true", help="use the finite feasibility search")
    pt.add_argument("--points", type=int, default=6)
    pt.set_defaults(handler=cmd_theorem)

    po = sub.add_parser("overlaps", parents=[common], help="CSV of per-pair overlap quantities")
    po.add_argument("model")
    po.set_defaults(handler=cmd_overlaps)

    pb = sub.add_parser("born", parents=[common], help="Born-rule reproduction report")
    pb.add_argument("model")
    pb.add_argument("--pairs", type=int, default=None)
    pb.set_defaults(handler=cmd_born)

    pv = sub.add_parser("convergence", parents=[common], help="Born deviation across grid sizes")
    pv.add_argument("--grids", type=int, nargs="+", default=None)
    pv.add_argument("--pairs", type=int, default=None)
    pv.set_defaults(handler=cmd_convergence)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        run = create_run_config(
            args.config,
            seed=args.seed,
            grid_size=args.n,
            tolerance=args.tolerance,
            pair_budget=args.pair_budget,
            log_level=args.log_level,
        )
        logging.basicConfig(level=run.log_level.upper(), format=run.log_format, stream=sys.stderr)
        return args.handler(args, run)
    except (OntoscopeError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR
