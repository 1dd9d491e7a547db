#!/usr/bin/env python3
"""
Replicator No-Go Verifier Launcher

Parses the command line, runs the requested verification and writes the
report. The process status is 0 when every assertion held, 1 when one
failed, 2 for usage errors and 3 for resource errors.

    python -m core.cli --mode grid --grid default --format json --out report.json
"""

import logging
import sys
from typing import Optional, Sequence

from config import LOG_LEVEL
from core.errors import ReplicatorError, VerificationFailure
from core.report import emit_report, run_verification
from core.run_config import parse_args

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = VerificationFailure.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one verification; returns the process exit code."""
    config = parse_args(argv)
    logger.info(f"🚀 Replicator verifier starting: mode={config.mode}, m={config.m}, n={config.n}")
    try:
        report = run_verification(config)
        emit_report(report, config.fmt, config.out)
    except ReplicatorError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code

    summary = report.summary()
    if report.passed:
        logger.info(f"✅ all assertions held over {summary['points']} point(s)")
        return EXIT_PASS
    logger.error(f"❌ {summary['failed_points']} point(s) failed; see the report's failures")
    return EXIT_FAILURE


if __name__ == "__main__":
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr  # stdout carries the report
    )
    sys.exit(main())
