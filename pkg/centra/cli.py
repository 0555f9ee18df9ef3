from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .config import OUTPUT_FORMATS, get_settings
from .corpus_io import parse_corpus
from .errors import CorpusFormatError, GroupSpecError, IsomorphismCapExceeded, OrderCapExceeded
from .parser import build_group
from .perm import FiniteGroup
from .service import CensusService, RunConfig, has_counterexample
from .verify import CLAIM_IDS, VERIFIERS, Status


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centra",
        description="Centralizer counts, solubility invariants and claim verification for finite permutation groups.",
    )
    _shared_options(parser, default=None)
    subcommands = parser.add_subparsers(dest="command", required=True)

    analyze = subcommands.add_parser("analyze", help="report the invariants of one group")
    analyze.add_argument("spec", help='group spec such as "A5", "D10", "S3xS3", or a corpus record name')
    analyze.add_argument("--corpus", type=Path, help="catalog file to resolve record names against")

    census = subcommands.add_parser("census", help="analyze and verify every corpus group")
    _corpus_options(census)
    census.add_argument("--jobs", type=int, help="worker processes (default: available CPUs)")
    census.add_argument("--skip-n-measure", action="store_true", help="do not compute the non-nilpotent clique measure")
    census.add_argument("--a-measure-limit", type=int, help="largest order whose non-commuting clique is searched")

    verify = subcommands.add_parser("verify", help="run one claim verifier on one group")
    verify.add_argument("claim_id", help=f"one of: {', '.join(CLAIM_IDS)}")
    verify.add_argument("spec", help="group spec or corpus record name")
    verify.add_argument("--corpus", type=Path, help="catalog file to resolve record names against")

    scan = subcommands.add_parser("scan-conjecture", help="list groups with 2|G| <= 3n and test them against the known examples")
    _corpus_options(scan)

    for subparser in (analyze, census, verify, scan):
        # a subcommand flag wins over the same flag given before the subcommand
        _shared_options(subparser, default=argparse.SUPPRESS)
    return parser


def _shared_options(parser: argparse.ArgumentParser, default: object) -> None:
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=default, help="report format (default json lines)")
    parser.add_argument("--order-cap", type=int, default=default, help="largest group order to enumerate")
    parser.add_argument("--cache-limit", type=int, default=default, help="largest order that gets a full multiplication table")
    parser.add_argument("--clique-budget", type=int, default=default, help="branch nodes per clique search")


def _corpus_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", type=Path, help="additional catalog file, one JSON group per line")
    parser.add_argument("--max-order", type=int, help="largest built-in corpus group order")
    parser.add_argument("--no-builtin", action="store_true", help="use only the groups from --corpus")


def run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_settings(
        get_settings(),
        output_format=args.output_format,
        order_cap=args.order_cap,
        cache_limit=args.cache_limit,
        clique_budget=args.clique_budget,
        jobs=getattr(args, "jobs", None),
        max_order=getattr(args, "max_order", None),
        corpus_path=getattr(args, "corpus", None),
        include_builtin=not getattr(args, "no_builtin", False),
        skip_n_measure=getattr(args, "skip_n_measure", False),
        a_measure_limit=getattr(args, "a_measure_limit", None),
    )


def resolve_group(spec: str, config: RunConfig) -> FiniteGroup:
    if config.corpus_path is not None:
        with config.corpus_path.open(encoding="utf-8") as stream:
            for record in parse_corpus(stream):
                if record.name == spec:
                    return record.to_group(config.order_cap, config.cache_limit)
    return build_group(spec, order_cap=config.order_cap, cache_limit=config.cache_limit)


def cmd_analyze(spec: str, config: RunConfig, out: TextIO) -> int:
    service = CensusService(config)
    group = resolve_group(spec, config)
    out.write(service.render([service.analysis_for(group).report]))
    return EXIT_OK


def cmd_census(config: RunConfig, out: TextIO) -> int:
    service = CensusService(config)
    outcome = service.run_census()
    out.write(service.render_census(outcome))
    return EXIT_FAIL if outcome.failures else EXIT_OK


def cmd_verify(claim_id: str, spec: str, config: RunConfig, out: TextIO) -> int:
    verifier = VERIFIERS.get(claim_id)
    if verifier is None:
        print(f"centra: unknown claim {claim_id!r}; expected one of {', '.join(CLAIM_IDS)}", file=sys.stderr)
        return EXIT_USAGE
    service = CensusService(config)
    group = resolve_group(spec, config)
    result = verifier(service.analysis_for(group))
    out.write(service.render([result]))
    return EXIT_FAIL if result.status is Status.FAIL else EXIT_OK


def cmd_scan_conjecture(config: RunConfig, out: TextIO) -> int:
    service = CensusService(config)
    candidates = service.scan_conjecture()
    out.write(service.render(candidates))
    return EXIT_FAIL if has_counterexample(candidates) else EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    logging.basicConfig(format=LOG_FORMAT, level=get_settings().log_level, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        config = run_config(args)
        if args.command == "analyze":
            return cmd_analyze(args.spec, config, out)
        if args.command == "census":
            return cmd_census(config, out)
        if args.command == "verify":
            return cmd_verify(args.claim_id, args.spec, config, out)
        return cmd_scan_conjecture(config, out)
    except (GroupSpecError, CorpusFormatError, ValueError, OSError) as exc:
        print(f"centra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OrderCapExceeded, IsomorphismCapExceeded) as exc:
        print(f"centra: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
