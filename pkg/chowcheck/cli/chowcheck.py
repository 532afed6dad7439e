"""
chowcheck.py

Command line interface to run the cotangent checks of the corpus, the
degeneracy facts, the randomized oracles and the homology trials.
Exit status is 0 if every check passes, 1 if a check fails and 2 on
usage or case file errors.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


import logging
import sys

from ..core.exceptions import CaseFileError, ChowCheckError
from ..core.logger import activate_local_debug_mode
from ..core.utils import get_bool_env
from ..lib.corpus import (
    corpus_files,
    file_hashes,
    load_file,
    verify_corpus,
)
from ..lib.cotangent import ablate, run_verification
from ..lib.facts import check_facts
from ..lib.homology import PATTERNS, ConditionPattern, all_homology_trials, homology_trials
from ..lib.reports import RunManifest, exit_status, render, report_label
from ..lib.sampler import (
    IDENTITY_SUITES,
    cross_chart_agreement,
    identity_suite,
    identity_suites,
    validate_case_formulas,
)
from .utils import (
    CHOWCHECK_ENV_DEBUG,
    get_cli_arguments,
    get_sample_config,
    print_error,
    resolve_case_file,
)


EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _relation_numbers(text):
    return [int(number) for number in text.split(",") if number]


def verify_case(args, cfg):
    path = resolve_case_file(args.case_file, args.corpus)
    reports = []
    for case in load_file(path):
        if args.ablate:
            case = ablate(case, args.ablate)
        reports.append(run_verification(case, cfg, args.saturate))
    return [path], reports


def verify_all(args, cfg):
    paths = corpus_files(args.corpus)
    return paths, verify_corpus(paths, cfg, args.saturate, args.jobs)


def identities(args, cfg):
    if args.suite:
        return [], [identity_suite(args.suite, cfg)]
    return [], identity_suites(cfg)


def oracle(args, cfg):
    if args.case_files:
        paths = [resolve_case_file(name, args.corpus) for name in args.case_files]
    else:
        paths = corpus_files(args.corpus)
    reports = []
    for path in paths:
        for case in load_file(path):
            reports.extend(validate_case_formulas(case, cfg))
            reports.append(cross_chart_agreement(case, cfg))
    return paths, reports


def homology(args, cfg):
    if args.pattern:
        return [], [homology_trials(ConditionPattern.from_text(args.pattern), cfg)]
    return [], all_homology_trials(cfg)


def facts(args, cfg):
    path = resolve_case_file(args.case_file, args.corpus)
    return [path], [check_facts(case) for case in load_file(path)]


SUBCOMMANDS = {
    "verify-case": verify_case,
    "verify-all": verify_all,
    "identities": identities,
    "oracle": oracle,
    "homology": homology,
    "facts": facts,
}


def add_arguments(parser):
    subparsers = parser.add_subparsers(dest='subcommand', required=True,
                                       metavar='subcommand')
    sub = subparsers.add_parser('verify-case',
                                help='cotangent check of a single case file')
    sub.add_argument('case_file',
                     help='path or corpus name of the case file')
    sub.add_argument('--ablate',
                     type=_relation_numbers, default=None,
                     help='comma separated 1-based numbers of relations to drop '
                          '(negative control)')
    subparsers.add_parser('verify-all',
                          help='cotangent check of every corpus case')
    sub = subparsers.add_parser('identities',
                                help='cross- and triple-ratio identity suites')
    sub.add_argument('--suite',
                     choices=sorted(IDENTITY_SUITES), default=None,
                     help='run a single suite (default: all)')
    sub = subparsers.add_parser('oracle',
                                help='formula and cross-chart agreement oracles')
    sub.add_argument('case_files', nargs='*',
                     help='case files (default: the whole corpus)')
    sub = subparsers.add_parser('homology',
                                help='coefficient trials of the condition patterns')
    sub.add_argument('--pattern',
                     choices=[str(pattern) for pattern in PATTERNS], default=None,
                     help='run a single pattern (default: all)')
    sub = subparsers.add_parser('facts',
                                help='degeneracy facts of a single case file')
    sub.add_argument('case_file',
                     help='path or corpus name of the case file')


def execute(argv=None):
    """Runs a subcommand, prints the reports and returns the exit status."""
    args = get_cli_arguments(add_arguments, argv)
    if get_bool_env(CHOWCHECK_ENV_DEBUG, False):
        activate_local_debug_mode(handler=logging.StreamHandler())
    try:
        cfg = get_sample_config(args)
    except ValueError as err:
        print(f"invalid arguments: {err}", file=sys.stderr)
        return EXIT_USAGE
    paths, reports = SUBCOMMANDS[args.subcommand](args, cfg)
    manifest = RunManifest(
        args.subcommand,
        seed=cfg.seed,
        output_format=args.output_format,
        jobs=args.jobs,
        trials=cfg.trials,
        bound=cfg.bound,
        saturate=args.saturate,
        files=file_hashes(paths),
    )
    print(render(manifest, reports))
    status = exit_status(reports)
    if status != EXIT_PASS:
        failing = next(report for report in reports if not report.passed)
        print(f"first failing check: {report_label(failing)}", file=sys.stderr)
    return status


def main():
    try:
        status = execute()
    except CaseFileError as err:
        print_error(err)
        status = EXIT_USAGE
    except ChowCheckError as err:
        print_error(err)
        status = EXIT_FAIL
    sys.exit(status)


if __name__ == '__main__':
    main()
