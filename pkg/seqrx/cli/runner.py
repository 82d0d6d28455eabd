"""
The seqrx command line: capacity, simulate, verify and sweep.
"""

import argparse
import logging
import sys

from seqrx import settings
from seqrx.bounds import (
    SAMPLED,
    TYPICALITY,
    TypicalityParams,
    run_suite,
    typicality_report,
)
from seqrx.cli.sweep import (
    SweepConfig,
    evaluate_codebooks,
    point_codebook,
    results_csv,
    sweep,
    write_results,
)
from seqrx.codec import Codebook
from seqrx.constants import engines, families, priors
from seqrx.ensembles import (
    ChannelParams,
    bpsk_capacity,
    g_capacity,
    holevo_capacity,
    private_capacity,
)
from seqrx.errors import InvalidParams, SeqRxError
from seqrx.seqdecoder import expurgate

logger = logging.getLogger(__name__)

COMM = "comm"
READING = "reading"

# Per-mode defaults of simulate: (family, prior).
MODE_DEFAULTS = {
    COMM: (families.COHERENT, priors.BPSK_AMP),
    READING: (families.READING_III, priors.BPSK_PHASE),
}

# Short prior names accepted on the command line.
PRIOR_ALIASES = {
    COMM: {"bpsk": priors.BPSK_AMP, "gaussian": priors.GAUSSIAN_ISO},
    READING: {"bpsk": priors.BPSK_PHASE, "uniform": priors.UNIFORM_PHASE},
}

CAPACITIES = ("holevo", "private", "bpsk", "g")


def capacity_value(kind: str, eta: float, ns: float) -> float:
    """One capacity formula, in bits per channel use. The g type ignores eta."""
    params = ChannelParams(eta=eta, ns=ns)
    if kind == "holevo":
        return holevo_capacity(params)
    if kind == "private":
        return private_capacity(params)
    if kind == "bpsk":
        return bpsk_capacity(params.received_ns)
    return g_capacity(ns)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.name,
        description="Sequential-decoding receivers for the lossy bosonic channel and quantum reading.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    commands = parser.add_subparsers(dest="command", required=True)

    capacity = commands.add_parser("capacity", help="Print a capacity formula.")
    capacity.add_argument("--type", dest="kind", choices=CAPACITIES, default="holevo")
    capacity.add_argument("--eta", type=float, default=1.0)
    capacity.add_argument("--ns", type=float, required=True)

    simulate = commands.add_parser("simulate", help="Decode one random codebook.")
    simulate.add_argument("mode", choices=(COMM, READING))
    simulate.add_argument("--family", choices=families.ALL, default=None)
    simulate.add_argument("--prior", default=None)
    simulate.add_argument("--engine", choices=engines.ALL, default=engines.GRAM)
    simulate.add_argument("--n", type=int)
    simulate.add_argument("--M", type=int)
    simulate.add_argument("--ns", type=float)
    simulate.add_argument("--eta", type=float, default=1.0)
    simulate.add_argument("--trials", type=int, default=1000)
    simulate.add_argument("--seed", type=int, default=settings.default_seed)
    simulate.add_argument("--exact", action="store_true", help="Also compute the exact error.")
    simulate.add_argument("--order", type=int, nargs="+", default=None, help="Test order, 1-indexed.")
    simulate.add_argument("--expurgate", type=float, default=None, metavar="FRACTION")
    simulate.add_argument("--codebook", default=None, help="Decode this codebook JSON instead of drawing one.")
    simulate.add_argument("--codebook-out", default=None, help="Write the codebook as JSON.")
    simulate.add_argument("--output", default=None, help="Write the CSV here instead of stdout.")

    verify = commands.add_parser("verify", help="Check the operator inequalities on random instances.")
    verify.add_argument("--suite", choices=(*SAMPLED, TYPICALITY, "all"), default="all")
    verify.add_argument("--samples", type=int, default=1000)
    verify.add_argument("--dim", type=int, default=6)
    verify.add_argument("--seed", type=int, default=settings.default_seed)
    verify.add_argument("--workers", type=int, default=settings.workers)
    verify.add_argument("--p", type=float, nargs="+", default=[0.89, 0.11])
    verify.add_argument("--n", type=int, default=20)
    verify.add_argument("--delta", type=float, default=0.1)
    verify.add_argument("--epsilon", type=float, default=0.1)

    sweep_parser = commands.add_parser("sweep", help="Run a grid of simulations.")
    sweep_parser.add_argument("--config", default=None, help="A SweepConfig JSON file.")
    sweep_parser.add_argument("--n", type=int, nargs="+")
    sweep_parser.add_argument("--M", type=int, nargs="+")
    sweep_parser.add_argument("--rate", type=float, nargs="+")
    sweep_parser.add_argument("--ns", type=float, nargs="+")
    sweep_parser.add_argument("--eta", type=float, nargs="+", default=[1.0])
    sweep_parser.add_argument("--family", choices=families.ALL, default=families.COHERENT)
    sweep_parser.add_argument("--prior", choices=priors.ALL, default=priors.BPSK_AMP)
    sweep_parser.add_argument("--engine", choices=engines.ALL, default=engines.GRAM)
    sweep_parser.add_argument("--trials", type=int, default=1000)
    sweep_parser.add_argument("--seed", type=int, default=settings.default_seed)
    sweep_parser.add_argument("--codebooks", type=int, default=1)
    sweep_parser.add_argument("--exact", action="store_true")
    sweep_parser.add_argument("--workers", type=int, default=settings.workers)
    sweep_parser.add_argument("--record-timing", action="store_true")
    sweep_parser.add_argument("--output", default="sweep.csv")
    return parser


def _simulate(args, parser) -> int:
    family, prior = MODE_DEFAULTS[args.mode]
    family = args.family or family
    if args.prior is not None:
        prior = PRIOR_ALIASES[args.mode].get(args.prior, args.prior)
    if prior not in priors.ALL:
        parser.error(f"unknown prior {args.prior!r}")

    if args.codebook is not None:
        codebook = Codebook.from_file(args.codebook)
        args.n, args.M, args.ns, args.eta = codebook.n, codebook.M, codebook.ns, codebook.eta
        family, prior = codebook.family.tag, codebook.prior
    elif None in (args.n, args.M, args.ns):
        parser.error("simulate needs --n, --M and --ns, or --codebook")

    config = SweepConfig(
        n=[args.n],
        M=[args.M],
        ns=[args.ns],
        eta=[args.eta],
        family=family,
        prior=prior,
        engine_id=args.engine,
        trials=args.trials,
        seed=args.seed,
        exact=args.exact,
        expurgate=args.expurgate,
        order=args.order,
        workers=1,
    )

    if args.codebook is None:
        codebook = point_codebook(config, 0, 0, args.n, args.M, args.ns, args.eta)
    elif args.expurgate:
        codebook = expurgate(codebook, args.expurgate)
    row = evaluate_codebooks(config, 0, [codebook])

    if args.codebook_out:
        codebook.to_file(args.codebook_out)
    if args.output:
        write_results([row], args.output)
    else:
        sys.stdout.write(results_csv([row]))
    return 0


def _verify(args) -> int:
    suites = (*SAMPLED, TYPICALITY) if args.suite == "all" else (args.suite,)
    total = 0
    for name in suites:
        if name == TYPICALITY:
            report = typicality_report(
                TypicalityParams(p=args.p, n=args.n, delta=args.delta, epsilon=args.epsilon)
            )
            # Size and probability bounds hold at every n; mass only as n grows.
            violations = (not report.size_ok) + (not report.probability_ok)
            print(
                f"{name}: classes={report.classes} size={report.size} "
                f"mass={report.mass:.6f} mass_ok={report.mass_ok} violations: {violations}"
            )
        else:
            report = run_suite(name, args.samples, args.dim, args.seed, args.workers)
            violations = report.violations
            print(
                f"{name}: samples={report.samples} worst_slack={report.worst_slack:.3e} "
                f"violations: {violations}"
            )
        total += violations
    if len(suites) > 1:
        print(f"violations: {total}")
    return 1 if total else 0


def _sweep(args, parser) -> int:
    if args.config:
        config = SweepConfig.from_file(args.config)
    else:
        if not args.n or not args.ns or (args.M is None) == (args.rate is None):
            parser.error("inline sweeps need --n, --ns and exactly one of --M and --rate")
        config = SweepConfig(
            n=args.n,
            M=args.M,
            rate=args.rate,
            ns=args.ns,
            eta=args.eta,
            family=args.family,
            prior=args.prior,
            engine_id=args.engine,
            trials=args.trials,
            seed=args.seed,
            output=args.output,
            codebooks=args.codebooks,
            exact=args.exact,
            workers=args.workers,
            record_timing=args.record_timing,
        )
    print(sweep(config))
    return 0


def run(argv: list[str] | None = None) -> int:
    """
    Run one command.

    Returns:
        int: 0 on success, 1 on a numerical error or a violated bound, 2 on bad
            arguments.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "capacity":
            if args.kind == "g" and args.eta != 1.0:
                parser.error("--type g is g(ns) and takes no --eta")
            print(f"{capacity_value(args.kind, args.eta, args.ns):.6f}")
            return 0
        if args.command == "simulate":
            return _simulate(args, parser)
        if args.command == "verify":
            return _verify(args)
        return _sweep(args, parser)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 2
    except InvalidParams as error:
        print(f"{settings.name}: error: {error}", file=sys.stderr)
        return 2
    except SeqRxError as error:
        logger.debug("Command failed.", exc_info=True)
        print(f"{settings.name}: error: {error}", file=sys.stderr)
        return 1
