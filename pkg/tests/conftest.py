import pytest

from sectionzeros import IntegrandSpec, bessel_spec, named_spec


@pytest.fixture(scope="session")
def fig2_spec():
    return named_spec("fig2")


@pytest.fixture(scope="session")
def fig3_spec():
    return named_spec("fig3")


@pytest.fixture(scope="session")
def bessel0_spec():
    return bessel_spec(0.0)


@pytest.fixture(scope="session")
def bessel25_spec():
    return bessel_spec(2.5)


@pytest.fixture(scope="session")
def uniform_spec():
    return IntegrandSpec(0.0, 1.0, 0.0, 0.0, name="uniform")


@pytest.fixture(scope="session")
def arcsine_spec():
    return IntegrandSpec(1.0, 1.0, -0.5, -0.5, name="arcsine")
