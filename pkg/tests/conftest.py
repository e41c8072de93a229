from functools import lru_cache

import pytest

from etorus.rootdata import SimpleType, build_root_system
from etorus.transform import ETransform
from etorus.weyl import enumerate_weyl, even_subgroup


@lru_cache(maxsize=None)
def _ctx(family, rank, M, j=1):
    return ETransform(family, rank, M, j)


@lru_cache(maxsize=None)
def _rsd(family, rank):
    return build_root_system(SimpleType(family, rank))


@lru_cache(maxsize=None)
def _groups(family, rank):
    full = enumerate_weyl(_rsd(family, rank))
    return full, even_subgroup(full)


@pytest.fixture(scope="session")
def get_ctx():
    return _ctx


@pytest.fixture(scope="session")
def get_rsd():
    return _rsd


@pytest.fixture(scope="session")
def get_groups():
    return _groups
