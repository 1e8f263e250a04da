import argparse
import logging

from semicut.cli.deps import EXIT_YES, emit
from semicut.exceptions import InvalidParameterError
from semicut.services.digraph import (
    gen_noisy_transitive,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_transitive,
    gen_weighted,
    write_digraph,
)

logger = logging.getLogger(__name__)

KINDS = ("transitive", "noisy", "tournament", "semicomplete")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("gen", parents=parents, help="generate an instance file")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--n", type=int, required=True, help="number of vertices")
    parser.add_argument("--flips", type=int, default=0, help="reversed arcs (noisy)")
    parser.add_argument("--pdouble", type=float, default=0.2, help="double-arc probability (semicomplete)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-weight", type=int, default=None, help="attach integer weights 1..W")
    parser.add_argument("--out", default=None, help="output path (stdout when omitted)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise InvalidParameterError(f"--n must be non-negative, got {args.n}")

    if args.kind == "transitive":
        T = gen_transitive(args.n)
    elif args.kind == "noisy":
        T = gen_noisy_transitive(args.n, args.flips, args.seed)
    elif args.kind == "tournament":
        T = gen_random_tournament(args.n, args.seed)
    else:
        T = gen_random_semicomplete(args.n, args.pdouble, args.seed)

    if args.max_weight is not None:
        # separate stream so weights do not shift the arc draws
        T = gen_weighted(T, args.max_weight, args.seed + 1)

    logger.info(f"Generated {args.kind} instance n={args.n} seed={args.seed}")
    emit(write_digraph(T), args.out)
    return EXIT_YES
