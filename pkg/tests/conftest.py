"""共享测试夹具"""

from pathlib import Path

import pytest

from setgrad_leibniz.services.corpus import (
    adjoint_action,
    gen_cyclic,
    gen_direct_sum,
    gen_hemisemidirect,
    gen_n2_family,
    gen_parity_gap,
    gen_so3,
)
from setgrad_leibniz.services.exactlin import RATIONALS, Field
from setgrad_leibniz.utils.config import reset_settings

EXAMPLES_DIR = Path(__file__).parent.parent / "src" / "setgrad_leibniz" / "resources" / "examples"

GF5 = Field.prime(5)
GF7 = Field.prime(7)


def vec(fld, *coords):
    return tuple(fld(c) for c in coords)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    """每个测试使用默认配置，且不读取工作目录下的 .env"""
    monkeypatch.chdir(tmp_path)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def examples_dir() -> Path:
    return EXAMPLES_DIR


@pytest.fixture
def n2():
    return gen_n2_family(1)


@pytest.fixture
def n2_o():
    return gen_n2_family(1, distinguished="b")


@pytest.fixture
def n2_sum():
    return gen_n2_family(2)


@pytest.fixture
def so3():
    return gen_so3()


def hsd_so3(fld=GF7, parity=1, labels=None):
    lie = gen_so3(fld)
    return gen_hemisemidirect(lie, adjoint_action(lie), parity, labels)


@pytest.fixture
def hsd():
    return hsd_so3()


@pytest.fixture
def hsd_pair():
    first = hsd_so3(GF7, 0)
    copy = gen_so3(GF7, ("U", "V", "W"), ("D", "E", "F"))
    return gen_direct_sum(first, gen_hemisemidirect(copy, adjoint_action(copy), 1))


@pytest.fixture
def cyclic():
    return gen_cyclic(RATIONALS, 1)


@pytest.fixture
def parity_gap():
    return gen_parity_gap()
