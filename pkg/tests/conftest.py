import pytest

from monoball.fourier import NormalizedBasis
from monoball.integrate import QuadratureRule


@pytest.fixture(scope="session")
def basis8():
    return NormalizedBasis(8)


@pytest.fixture(scope="session")
def basis6():
    return NormalizedBasis(6)


@pytest.fixture(scope="session")
def rule6():
    return QuadratureRule.for_degree(6)


@pytest.fixture(scope="session")
def rule8():
    return QuadratureRule.for_degree(8)
