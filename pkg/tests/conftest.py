import pytest

from hydrofold import kernels
from hydrofold.seq import fixture_5cyt

BACKENDS = kernels.available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run a test against each importable kernel backend."""
    module = BACKENDS[request.param]
    monkeypatch.setattr(kernels, "energy", module.energy)
    monkeypatch.setattr(kernels, "enumerate_from", module.enumerate_from)
    return request.param


@pytest.fixture(scope="session")
def fixture_seq():
    return fixture_5cyt()
