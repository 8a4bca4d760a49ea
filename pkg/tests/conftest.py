from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from codeglab.algo.constructors import build_builtin  # noqa: E402
from codeglab.algo.perm_group import PermGroup  # noqa: E402
from codeglab.algo.permutation import Permutation  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large tables (M_11, PSL_3(4)) and the full corpus")


@lru_cache(maxsize=None)
def _cached(spec: str) -> PermGroup:
    return build_builtin(spec)


@pytest.fixture(scope="session")
def group():
    """按内置构造串取群，整个会话共享同一实例（及其缓存的表）"""
    return _cached


@pytest.fixture(scope="session")
def abelian_of_tits_order():
    """C_2^11 × C_27 × C_25 × C_13，87 个点，与 ²F₄(2)′ 同阶的交换群"""
    cycles = [(2 * i + 1, 2 * i + 2) for i in range(11)]
    cycles += [tuple(range(23, 50)), tuple(range(50, 75)), tuple(range(75, 88))]
    return PermGroup(87, [Permutation.from_cycles(87, [c]) for c in cycles])
