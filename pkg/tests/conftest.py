import pytest

from curvetwist import build_surface, standard_curves


@pytest.fixture(scope="session")
def s11():
    return build_surface(1, 1)


@pytest.fixture(scope="session")
def s20():
    return build_surface(2, 0)


@pytest.fixture(scope="session")
def s04():
    return build_surface(0, 4)


@pytest.fixture(scope="session")
def s12():
    return build_surface(1, 2)


@pytest.fixture(scope="session")
def ab(s11):
    """The two standard weight-two curves on the once-punctured torus,
    crossing once."""
    named = standard_curves(s11)
    return named["a"], named["b"]
