from pathlib import Path

import pytest

from poly_core import parse_system
from witness_membership import load_witness

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full experiment presets")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def load_fixture_system(name):
    return parse_system((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def hypersurface():
    return load_fixture_system("hypersurf.sys")


@pytest.fixture
def cubic_system():
    return load_fixture_system("cubicurve.sys")


@pytest.fixture
def cubic_witness():
    return load_witness(FIXTURES / "cubic_witness.json")


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """隔离 .env / log / output：切到临时目录并关闭默认日志。"""
    monkeypatch.chdir(tmp_path)
    for key in ("REALWITNESS_SEED", "REALWITNESS_JOBS", "REALWITNESS_LOG_DIR", "REALWITNESS_OUTPUT_DIR"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("REALWITNESS_LOG", "0")
    return tmp_path
