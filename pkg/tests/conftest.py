import numpy as np
import pytest

from subhull import load_bundled

BUNDLED = (
    "fibonacci",
    "thue_morse",
    "period_doubling",
    "golay_rudin_shapiro",
    "counterexample",
)


@pytest.fixture(scope="session")
def bundled():
    """name -> SubstitutionSpec for every spec shipped with the package."""
    return {name: load_bundled(name) for name in BUNDLED}


@pytest.fixture(scope="session")
def fibonacci(bundled):
    return bundled["fibonacci"].substitution


@pytest.fixture(scope="session")
def thue_morse(bundled):
    return bundled["thue_morse"].substitution


@pytest.fixture(scope="session")
def period_doubling(bundled):
    return bundled["period_doubling"].substitution


@pytest.fixture(scope="session")
def grs(bundled):
    return bundled["golay_rudin_shapiro"].substitution


@pytest.fixture(scope="session")
def counterexample(bundled):
    return bundled["counterexample"].substitution


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
