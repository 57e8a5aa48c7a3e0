import re
from pathlib import Path

import pytest

from hilbert_cone.utils.rng import make_rng

GOLDEN_DIR = Path(__file__).parent / "golden"

# 数字以外的文本逐字比较，数字按相对误差比较
NUMBER = re.compile(r"-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def assert_golden(golden_dir):
    def check(actual: str, name: str):
        expected = (golden_dir / name).read_text(encoding="utf-8")
        assert NUMBER.split(actual) == NUMBER.split(expected)
        actual_numbers = [float(m) for m in NUMBER.findall(actual)]
        expected_numbers = [float(m) for m in NUMBER.findall(expected)]
        assert actual_numbers == pytest.approx(expected_numbers, rel=1e-9, abs=1e-12)

    return check
