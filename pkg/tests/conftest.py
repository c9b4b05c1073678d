import pytest
from hypothesis import settings

settings.register_profile("qmeron", max_examples=40, deadline=None)
settings.load_profile("qmeron")


@pytest.fixture(scope="session")
def suq2():
    from qmeron.ncalg import build_suq2

    return build_suq2()


@pytest.fixture(scope="session")
def r4q():
    from qmeron.ncalg import build_r4q

    return build_r4q()


@pytest.fixture(scope="session")
def qcalc():
    from qmeron.calculus import quantum_calculus

    return quantum_calculus()


@pytest.fixture(scope="session")
def ccalc():
    from qmeron.calculus import classical_calculus

    return classical_calculus()
