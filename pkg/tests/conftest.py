# tests/conftest.py
# Fixture dùng chung cho bộ kiểm thử msym
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from core.grammar import parse  # noqa: E402
from core.ringcore import CoeffRing  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="chạy cả các phạm vi chứng nhận lớn")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: các phạm vi chứng nhận lớn (chạy với --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="cần --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def zz():
    return CoeffRing.integers()


@pytest.fixture
def qq():
    return CoeffRing.rationals()


@pytest.fixture
def f2():
    return CoeffRing.prime_field(2)


@pytest.fixture
def poly():
    """poly("y1 + y2", m=2) -> Polynomial."""
    def build(text, m=None, coeff=None):
        return parse(text, "polynomial", m=m, coeff=coeff)
    return build


@pytest.fixture
def orbit():
    """orbit("E{y1:2, y2:1}", m=2) -> OrbitIndex."""
    def build(text, m=None):
        return parse(text, "orbit-index", m=m)
    return build


@pytest.fixture
def quiet(monkeypatch):
    from core.config import Config
    monkeypatch.setattr(Config, "VERBOSE", False)


@pytest.fixture
def fresh_tables():
    """Bảng P_{h,k} và rewrite riêng cho từng test, không đụng bảng toàn cục."""
    from analysis.presentation import RewriteTable
    from analysis.symfun import PlethysmTable
    return PlethysmTable(), RewriteTable()


@pytest.fixture
def verbose(monkeypatch):
    from core.config import Config
    monkeypatch.setattr(Config, "VERBOSE", True)


@pytest.fixture
def isolated_tables(monkeypatch):
    """
    Thay các bảng toàn cục bằng bảng rỗng để mỗi lần gọi main() bắt đầu lạnh.
    Gọi fixture trả về (reset()) để giả lập một tiến trình mới.
    """
    from analysis import data_cache, presentation, symfun

    def reset():
        pleth, rewrites = symfun.PlethysmTable(), presentation.RewriteTable()
        for module in (symfun, data_cache):
            monkeypatch.setattr(module, "PLETHYSM_TABLE", pleth)
        for module in (presentation, data_cache):
            monkeypatch.setattr(module, "REWRITE_TABLE", rewrites)
        return pleth, rewrites

    reset()
    return reset
