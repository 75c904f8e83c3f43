import warnings
from functools import lru_cache

import pytest

from hemisystems.construction import build_descriptor, build_point_set
from hemisystems.field import field_for_q
from hemisystems.geometry import QuadricGeometry

warnings.filterwarnings("ignore", module="numba")


@lru_cache(maxsize=None)
def ctx_for(q):
    return field_for_q(q)


@lru_cache(maxsize=None)
def desc_for(q):
    return build_descriptor(ctx_for(q))


@lru_cache(maxsize=None)
def geom_for(q):
    return QuadricGeometry(ctx_for(q))


@lru_cache(maxsize=None)
def pset_for(q):
    return build_point_set(ctx_for(q), desc_for(q))


@pytest.fixture(scope="session")
def ctx3():
    return ctx_for(3)


@pytest.fixture(scope="session")
def ctx7():
    return ctx_for(7)


@pytest.fixture(scope="session")
def ctx11():
    return ctx_for(11)


@pytest.fixture(params=[3, 7], scope="session")
def small_q(request):
    return request.param


@pytest.fixture(params=[3, 7, 11], scope="session")
def any_q(request):
    return request.param
