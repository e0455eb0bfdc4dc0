import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

# Import our modules
from app.core.config import settings
from app.api.commands import cmd_compute, cmd_table, cmd_verify
from app.schemas.run_config import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krtorus",
        description=f"{settings.PROJECT_NAME} - sl(N) homology of T(2,m) and SU(N) representation spaces",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_grid_args(sub, default_m: str):
        sub.add_argument("--n", default=f"{settings.MIN_N}", help="N or N range A..B")
        sub.add_argument("--m", default=default_m, help="m or m range A..B (use --m=-8..8 for negative starts)")
        sub.add_argument("--format", choices=["table", "json"], default=settings.DEFAULT_FORMAT)
        sub.add_argument("--out", default=None, help="write output to this path")

    compute = subparsers.add_parser("compute", help="KR_N(T(2,m)) and H*(SR_N(T(2,m))) over a grid")
    add_grid_args(compute, "1")
    compute.add_argument("--bigrading", action="store_true", help="include the full (h, q) table")
    compute.add_argument("--dump-complex", action="store_true", help="include the differential matrices (json)")

    verify = subparsers.add_parser("verify", help="run the cross-checks over a grid")
    add_grid_args(verify, "1")

    table = subparsers.add_parser("table", help="the five named torus links for one N")
    table.add_argument("--n", type=int, default=settings.DEFAULT_TABLE_N)
    table.add_argument("--format", choices=["table", "json"], default=settings.DEFAULT_FORMAT)
    table.add_argument("--out", default=None)
    return parser


def write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        print(text)
        return
    path = Path(out)
    # bare file names go under OUTPUT_DIR
    if path.parent == Path("."):
        path = Path(settings.OUTPUT_DIR) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n")
    logger.info(f"Output written to {path}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Configure logging
    level = logging.DEBUG if args.verbose else settings.LOG_LEVEL.upper()
    known_level = isinstance(level, int) or isinstance(logging.getLevelName(level), int)
    logging.basicConfig(
        level=level if known_level else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if not known_level:
        logger.error(f"Invalid log level {settings.LOG_LEVEL!r} (KRT_LOG_LEVEL)")
        return EXIT_USAGE

    if args.command == "table":
        if not settings.MIN_N <= args.n <= settings.MAX_N:
            logger.error(f"Invalid N={args.n}: expected {settings.MIN_N}..{settings.MAX_N}")
            return EXIT_USAGE
        config = None
    else:
        try:
            config = RunConfig(
                n_range=args.n,
                m_range=args.m,
                output_format=args.format,
                emit_bigrading=getattr(args, "bigrading", False),
                output_path=args.out,
                dump_complex=getattr(args, "dump_complex", False),
            )
        except ValidationError as e:
            logger.error(f"Invalid arguments: {e}")
            return EXIT_USAGE

    exit_code = EXIT_OK
    try:
        if args.command == "compute":
            text = cmd_compute(config)
        elif args.command == "verify":
            text, exit_code = cmd_verify(config)
        else:
            text = cmd_table(args.n, args.format)
    except (ArithmeticError, ValueError) as e:
        logger.error(f"Internal failure in {args.command}: {e}")
        return EXIT_FAILURE

    write_output(text, args.out)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
