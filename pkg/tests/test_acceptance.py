"""One test per acceptance criterion.

Each test prints a single ``A<k> PASS|FAIL|...`` line; the lines are also
collected into the terminal summary.
"""
import pytest

from collapsekit.verify import CRITERIA, VerifyConfig, _timed

LINES: list[str] = []


@pytest.fixture(scope="module")
def cfg(tmp_path_factory):
    return VerifyConfig(out=tmp_path_factory.mktemp("acceptance"))


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key, cfg, capsys):
    res = _timed(key, CRITERIA[key], cfg)
    LINES.append(res.line())
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, f"{key}: {res.note} {res.checks}"
