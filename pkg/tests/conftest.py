import pytest

from rootoids import corpus
from rootoids.coxeter import CoxeterMatrix, build_coxeter, reflection_cocycle
from rootoids.proto import build_even_variant, build_from_c0


@pytest.fixture(scope="session")
def A3():
    return build_coxeter(CoxeterMatrix.preset("A3"))


@pytest.fixture(scope="session")
def B3():
    return build_coxeter(CoxeterMatrix.preset("B3"))


@pytest.fixture(scope="session")
def D4():
    return build_coxeter(CoxeterMatrix.preset("D4"))


@pytest.fixture(scope="session")
def I24():
    return build_coxeter(CoxeterMatrix.preset("I2(4)"))


@pytest.fixture(scope="session")
def I23():
    return build_coxeter(CoxeterMatrix.preset("I2(3)"))


@pytest.fixture(scope="session")
def refl_A3(A3):
    return reflection_cocycle(A3)


@pytest.fixture(scope="session")
def refl_I24(I24):
    return reflection_cocycle(I24)


@pytest.fixture(scope="session")
def cyclic4():
    return corpus.build("cyclic4")


@pytest.fixture(scope="session")
def cyclic4_proto(cyclic4):
    return build_from_c0(cyclic4.gpd, cyclic4.S)


@pytest.fixture(scope="session")
def hexagon():
    return corpus.build("hexagon")


@pytest.fixture(scope="session")
def pentagon():
    return corpus.build("pentagon")


@pytest.fixture(scope="session")
def ex952():
    return corpus.build("ex952")
