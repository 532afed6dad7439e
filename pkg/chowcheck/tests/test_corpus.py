import pytest

from ..core.exceptions import CaseFileError
from ..lib.corpus import (
    BUNDLED_CORPUS,
    CHOWCHECK_ENV_CORPUS,
    corpus_directory,
    corpus_files,
    file_hashes,
    find_case,
    load_corpus,
    load_file,
    verify_corpus,
    verify_file,
)
from ..lib.sampler import SampleConfig


@pytest.fixture
def cfg():
    return SampleConfig(seed=1, trials=5)


def test_corpus_directory(monkeypatch, tmp_path):
    monkeypatch.delenv(CHOWCHECK_ENV_CORPUS, raising=False)
    assert corpus_directory() == BUNDLED_CORPUS
    monkeypatch.setenv(CHOWCHECK_ENV_CORPUS, str(tmp_path))
    assert corpus_directory() == tmp_path
    assert corpus_directory("elsewhere").name == "elsewhere"


def test_corpus_files(corpus_dir):
    files = corpus_files(corpus_dir)
    assert len(files) == 17
    assert files == sorted(files)
    assert all(path.suffix == ".case" for path in files)


def test_missing_corpus_directory(tmp_path):
    with pytest.raises(CaseFileError):
        corpus_files(tmp_path / "missing")


def test_load_file_expands_mirrors(corpus_dir):
    cases = load_file(corpus_dir / "F.1prime.case")
    assert [case.name for case in cases] == ["F.1'", "F.1'-mirror"]
    assert not cases[1].mirrors


def test_load_corpus(corpus_dir):
    cases = load_corpus(corpus_dir)
    names = [case.name for case in cases]
    assert len(cases) == 18
    assert names == sorted(names)


def test_find_case(corpus_dir):
    assert find_case("F.1'-mirror", corpus_dir).name == "F.1'-mirror"
    with pytest.raises(CaseFileError):
        find_case("Z.9", corpus_dir)


def test_file_hashes(datadir):
    hashes = file_hashes([datadir / "constrained.case"])
    assert list(hashes) == ["constrained.case"]
    assert len(hashes["constrained.case"]) == 64


def test_verify_file_with_invalid_case(datadir, cfg):
    (report,) = verify_file(datadir / "undeclared.case", cfg)
    assert report.case_name == "undeclared"
    assert report.error.startswith("ValidationError")
    assert not report.passed


def test_verify_corpus_serial(datadir, cfg):
    paths = [datadir / "corrupted.case", datadir / "constrained.case"]
    reports = verify_corpus(paths, cfg)
    assert [report.case_name for report in reports] == ["constrained", "corrupted"]
    assert [report.passed for report in reports] == [True, False]


def test_verify_corpus_in_workers(datadir, cfg):
    paths = sorted(datadir.glob("*.case"))
    serial = verify_corpus(paths, cfg, jobs=1)
    parallel = verify_corpus(paths, cfg, jobs=2)
    assert [r.serialize() for r in parallel] == [r.serialize() for r in serial]
