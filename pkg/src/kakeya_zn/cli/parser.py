"""Argument parsing for the kzn command."""

import argparse
import re
import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import NoReturn

from kakeya_zn.core.constants import EXIT_USAGE_OR_IO

Handler = Callable[[argparse.Namespace], int]

_RATIONAL = re.compile(r"^\d+(/\d+)?$")
_SPEC_PAIR = re.compile(r"^(\d+):(\d+)$")


class KznArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1; 2 is reserved for failed mathematical checks."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE_OR_IO, f"{self.prog}: error: {message}\n")

    def check_combinations(self, args: argparse.Namespace) -> None:
        """Reject flag combinations argparse groups cannot express."""
        if args.command == "construct" and args.spec is not None and args.s is not None:
            self.error("argument --s: not allowed with argument --spec")


def rational(text: str) -> Fraction:
    """An exact rational written as an integer or a/b; decimals are refused."""
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an integer or a fraction a/b, got {text!r}")
    value = Fraction(text.strip())
    if value > 1:
        raise argparse.ArgumentTypeError(f"ε must lie in [0, 1], got {text}")
    return value


def construction_spec(text: str) -> list[tuple[int, int]]:
    """Comma-separated p:s pairs, e.g. ``2:0,3:0``."""
    pairs = []
    for chunk in text.split(","):
        match = _SPEC_PAIR.match(chunk.strip())
        if not match:
            raise argparse.ArgumentTypeError(f"expected p:s pairs separated by commas, got {chunk!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
    return pairs


def positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def build_parser(handlers: dict[str, Handler]) -> KznArgumentParser:
    parser = KznArgumentParser(
        prog="kzn",
        description="Construct, verify and certify Kakeya sets over Z/NZ with exact arithmetic.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    construct = commands.add_parser("construct", help="build the small Kakeya set and verify it")
    source = construct.add_mutually_exclusive_group(required=True)
    source.add_argument("--p", type=positive, help="prime p (with --s) for N = p^k")
    source.add_argument("--spec", type=construction_spec, help="p:s pairs for a CRT product, e.g. 2:0,3:0")
    construct.add_argument("--s", type=nonnegative, help="s, giving k = (p^(s+1) - 1)/(p - 1)")
    construct.add_argument("--n", type=positive, required=True, help="dimension")
    construct.add_argument("--out", type=Path, help="write the point set here")
    construct.add_argument("--witness-out", type=Path, help="write the witness map here")

    verify = commands.add_parser("verify", help="check a point set for m-rich lines")
    verify.add_argument("--input", type=Path, required=True, help="point set JSON")
    verify.add_argument("--m", type=positive, help="richness threshold (default N)")
    verify.add_argument("--eps", type=rational, default=Fraction(1), help="required fraction of directions")
    verify.add_argument("--witness", type=Path, help="check only the lines of this witness map")

    rank = commands.add_parser("rank", help="rank of M_{p^l,n} against the certified bounds")
    rank.add_argument("--p", type=positive, required=True)
    rank.add_argument("--ell", type=positive, required=True)
    rank.add_argument("--n", type=positive, required=True)
    rank.add_argument("--restrict", action="store_true", help="also compare with the projective rows only")

    bounds = commands.add_parser("bounds", help="every closed-form bound for (Z/NZ)^n")
    bounds.add_argument("--N", type=positive, required=True)
    bounds.add_argument("--n", type=positive, required=True)
    bounds.add_argument("--m", type=positive)
    bounds.add_argument("--eps", type=rational)
    bounds.add_argument("--size", type=nonnegative, help="measured size to check against the bounds")

    decode = commands.add_parser("decode-check", help="verify the monomial decoding identity")
    decode.add_argument("--p", type=positive, required=True)
    decode.add_argument("--k", type=positive, required=True)
    decode.add_argument("--ell", type=positive, required=True)
    decode.add_argument("--n", type=positive, required=True)
    decode.add_argument("--all-directions", action="store_true", help="every direction instead of the first")
    decode.add_argument("--seed", type=nonnegative, help="seed for the random base points")

    search = commands.add_parser("search-min", help="exact minimum Kakeya set by exhaustive search")
    search.add_argument("--N", type=positive, required=True)
    search.add_argument("--n", type=positive, required=True)

    report = commands.add_parser("report", help="evaluate a run description into a report")
    report.add_argument("--out", type=Path, required=True)
    report.add_argument("--format", choices=("json", "csv"), default="json")
    report.add_argument("--run", type=Path, help="run description JSON; omitted means an empty run")

    for name, subparser in commands.choices.items():
        subparser.set_defaults(handler=handlers[name])
    return parser
