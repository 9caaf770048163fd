import pytest

from geosep import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call pays the JIT cost; everything after runs from the disk cache
    _kernels.warmup()
