"""
utils.py

Argument parsing and output helpers of the command line interface.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


import argparse
import sys
from pathlib import Path

from ..core.exceptions import CaseFileError, error_code
from ..core.utils import get_int_env
from ..lib.corpus import CASE_SUFFIX, corpus_directory
from ..lib.reports import FORMAT_TEXT, FORMATS
from ..lib.sampler import (
    DEFAULT_BOUND,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    SampleConfig,
)


CHOWCHECK_ENV_WORKERS = "CHOWCHECK_WORKERS"
CHOWCHECK_ENV_SEED = "CHOWCHECK_SEED"
CHOWCHECK_ENV_DEBUG = "CHOWCHECK_DEBUG"


def print_error(error_object):
    print(f"{error_code(error_object)}: {error_object}", file=sys.stderr)


def get_sample_config(args) -> SampleConfig:
    return SampleConfig(seed=args.seed, trials=args.trials, bound=args.bound)


def resolve_case_file(name, corpus=None) -> Path:
    """
    `name` as a path if it exists, else the file of that name (with or
    without suffix) in the corpus directory.
    """
    path = Path(name)
    if path.is_file():
        return path
    directory = corpus_directory(corpus)
    for candidate in (directory / name, directory / f"{name}{CASE_SUFFIX}"):
        if candidate.is_file():
            return candidate
    raise CaseFileError(f"case file '{name}' not found")


def get_cli_arguments(scan_additional_arguments=None, argv=None):
    parser = argparse.ArgumentParser(
        prog="chowcheck",
        description="Exact checks of the smoothness certificates of the case corpus.",
    )
    parser.add_argument('--seed',
                        type=int,
                        default=get_int_env(CHOWCHECK_ENV_SEED, DEFAULT_SEED),
                        help='Seed of all random draws. '
                             'Default: %s or $%s' % (DEFAULT_SEED, CHOWCHECK_ENV_SEED))
    parser.add_argument('--trials',
                        type=int, default=DEFAULT_TRIALS,
                        help='Random trials per oracle. Default: %s' % DEFAULT_TRIALS)
    parser.add_argument('--bound',
                        type=int, default=DEFAULT_BOUND,
                        help='Bound of numerators and denominators of drawn '
                             'rationals. Default: %s' % DEFAULT_BOUND)
    parser.add_argument('--format',
                        choices=FORMATS, default=FORMAT_TEXT,
                        dest='output_format',
                        help='Report format: text|structured (default: text)')
    parser.add_argument('-j', '--jobs',
                        type=int,
                        default=get_int_env(CHOWCHECK_ENV_WORKERS, 1, minimum=1),
                        help='Number of worker processes for verify-all. '
                             'Default: 1 or $%s' % CHOWCHECK_ENV_WORKERS)
    parser.add_argument('--saturate',
                        action='store_true',
                        help='Flag: add all cross-ratio equalities of common '
                             'points of chart pairs before verifying')
    parser.add_argument('--corpus',
                        default=None,
                        help='Directory of the case files (default: the '
                             'bundled corpus or $CHOWCHECK_CORPUS)')
    if scan_additional_arguments:
        scan_additional_arguments(parser)
    args = parser.parse_args(argv)
    return args
