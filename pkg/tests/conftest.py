import random

import pytest

from fqtotient.field import SUPPORTED_Q, FieldSpec
from fqtotient.irreducibles import build_table


@pytest.fixture(scope="session")
def fields():
    return {q: FieldSpec.for_q(q) for q in SUPPORTED_Q}


@pytest.fixture(scope="session")
def f2():
    return FieldSpec.for_q(2)


@pytest.fixture(scope="session")
def f3():
    return FieldSpec.for_q(3)


@pytest.fixture(scope="session")
def f4():
    return FieldSpec.for_q(4)


@pytest.fixture(scope="session")
def f5():
    return FieldSpec.for_q(5)


@pytest.fixture(scope="session")
def table2():
    return build_table(FieldSpec.for_q(2), 12)


@pytest.fixture(scope="session")
def table3():
    return build_table(FieldSpec.for_q(3), 8)


@pytest.fixture()
def rng():
    return random.Random(20240817)
