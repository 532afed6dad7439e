"""
Access to the case corpus.

The corpus is the directory of `*.case` files vendored in the package
(`chowcheck/data`); the environment variable CHOWCHECK_CORPUS or an
explicit directory overrides it. Loading a file yields the case itself
and the mirror twins it declares.

Verification of a whole corpus can be spread over a pool of worker
processes. Workers get file paths and return finished reports; the
reports come back sorted by case name whatever the completion order.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..core.exceptions import CaseFileError, ChowCheckError
from ..core.logger import chowlogger, init_worker
from ..core.utils import content_hash
from .casefile import read_case
from .charts import CaseSpec, relabel_case
from .cotangent import CotangentReport, run_verification
from .sampler import SampleConfig


CHOWCHECK_ENV_CORPUS = "CHOWCHECK_CORPUS"
CASE_SUFFIX = ".case"
BUNDLED_CORPUS = Path(__file__).parent.parent / "data"


def corpus_directory(directory=None) -> Path:
    """The explicit directory, else CHOWCHECK_CORPUS, else the bundled corpus."""
    return Path(directory or os.getenv(CHOWCHECK_ENV_CORPUS) or BUNDLED_CORPUS)


def corpus_files(directory=None) -> list[Path]:
    path = corpus_directory(directory)
    if not path.is_dir():
        raise CaseFileError(f"corpus directory '{path}' does not exist")
    return sorted(path.glob(f"*{CASE_SUFFIX}"))


def expand_mirrors(case: CaseSpec) -> list[CaseSpec]:
    """The case followed by its declared mirror twins."""
    return [case] + [
        relabel_case(case, mapping, name) for name, mapping in case.mirrors
    ]


def load_file(path) -> list[CaseSpec]:
    return expand_mirrors(read_case(path))


def load_corpus(directory=None) -> list[CaseSpec]:
    """All cases of the corpus including mirrors, sorted by name."""
    cases = []
    for path in corpus_files(directory):
        cases.extend(load_file(path))
    return sorted(cases, key=lambda case: case.name)


def find_case(name: str, directory=None) -> CaseSpec:
    """A case of the corpus by name; mirror twins included."""
    for case in load_corpus(directory):
        if case.name == name:
            return case
    raise CaseFileError(f"no case '{name}' in the corpus")


def file_hashes(paths) -> dict:
    """File name -> sha256 of the contents."""
    return {
        Path(path).name: content_hash(Path(path).read_text(encoding="utf-8"))
        for path in paths
    }


def verify_file(path, cfg: SampleConfig, saturate: bool = False) -> list[CotangentReport]:
    """
    Reports for the cases of one file. A file that can not be read
    gives a single failing report named after the file.
    """
    try:
        cases = load_file(path)
    except ChowCheckError as err:
        chowlogger.info(f"{Path(path).name}: {err}")
        return [CotangentReport.failure(Path(path).stem, err)]
    return [run_verification(case, cfg, saturate) for case in cases]


def _verify_file(arguments):
    # worker entry point, module level for pickling
    path, seed, trials, bound, retries, saturate = arguments
    cfg = SampleConfig(seed=seed, trials=trials, bound=bound, retries=retries)
    return verify_file(path, cfg, saturate)


def verify_corpus(
    paths,
    cfg: SampleConfig | None = None,
    saturate: bool = False,
    jobs: int = 1,
) -> list[CotangentReport]:
    """
    Verifies every file of `paths` with `jobs` worker processes (in
    this process for jobs <= 1). Returns the reports sorted by case
    name.
    """
    cfg = cfg or SampleConfig()
    tasks = [
        (str(path), cfg.seed, cfg.trials, cfg.bound, cfg.retries, saturate)
        for path in paths
    ]
    if jobs <= 1 or len(tasks) <= 1:
        results = map(_verify_file, tasks)
        reports = [report for result in results for report in result]
    else:
        chowlogger.debug(f"verifying {len(tasks)} files with {jobs} workers")
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=init_worker, initargs=(chowlogger.level,)
        ) as executor:
            reports = [
                report
                for result in executor.map(_verify_file, tasks)
                for report in result
            ]
    reports.sort(key=lambda report: report.case_name)
    passed = sum(report.passed for report in reports)
    chowlogger.info(f"corpus: {passed}/{len(reports)} cases pass")
    return reports
