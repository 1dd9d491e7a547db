"""
Command-line parsing into a validated RunConfig.
"""

import argparse
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

from config import (
    DEFAULT_A,
    DEFAULT_C,
    DEFAULT_FORMAT,
    DEFAULT_GRID,
    DEFAULT_M,
    DEFAULT_N,
    DEFAULT_Q_MAG,
    DEFAULT_R_MAG,
    DEFAULT_SEED,
    DEFAULT_THETA,
    ORACLE_TOL,
)
from core.grids import COMPLEMENT, GRID_PRESETS

MODES = ("single", "grid", "demo")
FORMATS = ("json", "csv")

CValue = Union[float, str]


@dataclass(frozen=True)
class RunConfig:
    """One verification run, validated by ``parse_args``."""

    mode: str = "single"
    a: float = DEFAULT_A
    c: CValue = DEFAULT_C
    theta: float = DEFAULT_THETA
    q_mag: float = DEFAULT_Q_MAG
    q_phase: float = 0.0
    r_mag: float = DEFAULT_R_MAG
    r_phase: float = 0.0
    m: int = DEFAULT_M
    n: int = DEFAULT_N
    grid: str = DEFAULT_GRID
    fmt: str = DEFAULT_FORMAT
    out: Optional[Path] = None
    seed: int = DEFAULT_SEED
    tol: float = ORACLE_TOL


def _c_value(text: str) -> CValue:
    if text == COMPLEMENT:
        return COMPLEMENT
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or {COMPLEMENT!r}, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="replicator-verify",
        description="Verify the no-go theorems for quantum self-replicating machines",
        allow_abbrev=False,
    )
    parser.add_argument("--mode", choices=MODES, default="single")
    parser.add_argument("--a", type=float, default=DEFAULT_A, help="REAL(a, b) amplitude of |ψ1>")
    parser.add_argument("--c", type=_c_value, default=DEFAULT_C,
                        help=f"PHASED(c, d, θ) amplitude of |ψ2>, or {COMPLEMENT!r} for |ψ1>⊥")
    parser.add_argument("--theta", type=float, default=DEFAULT_THETA, help="phase θ of |ψ2>")
    parser.add_argument("--q-mag", "--q", dest="q_mag", type=float, default=DEFAULT_Q_MAG,
                        help="|<P1|P2>|")
    parser.add_argument("--q-phase", type=float, default=0.0, help="arg <P1|P2>")
    parser.add_argument("--r-mag", "--r", dest="r_mag", type=float, default=DEFAULT_R_MAG,
                        help="|<C1|C2>|")
    parser.add_argument("--r-phase", type=float, default=0.0, help="arg <C1|C2>")
    parser.add_argument("--m", type=int, default=DEFAULT_M, help="auxiliary blanks per step")
    parser.add_argument("--n", type=int, default=None,
                        help=f"blanks in total (default max({DEFAULT_N}, 2(m+1)))")
    parser.add_argument("--grid", default=DEFAULT_GRID,
                        help=f"preset ({', '.join(GRID_PRESETS)}) or path to a JSON grid file")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default=DEFAULT_FORMAT)
    parser.add_argument("--out", type=Path, default=None, help="report path (stdout if omitted)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--tol", type=float, default=ORACLE_TOL, help="oracle tolerance")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Reject values outside the parameter domain; parser.error exits with status 2."""
    for flag, value in (("--a", args.a), ("--theta", args.theta), ("--q-mag", args.q_mag),
                        ("--q-phase", args.q_phase), ("--r-mag", args.r_mag),
                        ("--r-phase", args.r_phase), ("--tol", args.tol)):
        if not math.isfinite(value):
            parser.error(f"{flag} must be finite, got {value}")
    if not 0.0 < args.a <= 1.0:
        parser.error(f"--a must satisfy 0 < a <= 1, got {args.a}")
    if args.c != COMPLEMENT and not (math.isfinite(args.c) and 0.0 < args.c <= 1.0):
        parser.error(f"--c must satisfy 0 < c <= 1, got {args.c}")
    if not 0.0 < args.theta < math.pi:
        parser.error(f"--theta must satisfy 0 < θ < π, got {args.theta}")
    for flag, value in (("--q-mag", args.q_mag), ("--r-mag", args.r_mag)):
        if not 0.0 <= value <= 1.0:
            parser.error(f"{flag} must lie in [0, 1], got {value}")
    if args.m < 0:
        parser.error(f"--m must be >= 0, got {args.m}")
    if args.n is None:
        args.n = max(DEFAULT_N, 2 * (args.m + 1))
    if args.n < 2 * (args.m + 1):
        parser.error(f"--n must satisfy n >= 2(m+1) = {2 * (args.m + 1)}, got {args.n}")
    if not args.tol > 0:
        parser.error(f"--tol must be > 0, got {args.tol}")
    if args.grid not in GRID_PRESETS and not Path(args.grid).is_file():
        parser.error(f"--grid must name a preset ({', '.join(GRID_PRESETS)}) or an existing file, "
                     f"got {args.grid!r}")


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Parse and validate command-line arguments.

    Raises:
        SystemExit: With status 2 and a message naming the flag on invalid input
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    fields: List[str] = [name for name in RunConfig.__dataclass_fields__]
    return RunConfig(**{name: getattr(args, name) for name in fields})
