import pytest

from repkit.algebra import (
    FiniteModule,
    FiniteRing,
    cyclic_group,
    validate_representation,
)
from repkit.repfile import bundled_catalog


def make_rep(modulus, orders, group_order, rows):
    module = FiniteModule(FiniteRing(modulus), orders)
    return validate_representation(module, cyclic_group(group_order), rows)


@pytest.fixture(scope="session")
def r1():
    """C2 acting trivially on Z/2."""
    return make_rep(2, (2,), 2, [[0, 1], [0, 1]])


@pytest.fixture(scope="session")
def r2():
    """C2 acting on Z/3 by a -> 2a."""
    return make_rep(3, (3,), 2, [[0, 1, 2], [0, 2, 1]])


@pytest.fixture(scope="session")
def c4():
    """C4 acting on Z/3 through its order-2 quotient; kernel {1, g^2}."""
    return make_rep(3, (3,), 4, [[0, 1, 2], [0, 2, 1], [0, 1, 2], [0, 2, 1]])


@pytest.fixture(scope="session")
def neg4():
    """C2 negating Z/4."""
    return make_rep(4, (4,), 2, [[0, 1, 2, 3], [0, 3, 2, 1]])


@pytest.fixture(scope="session")
def triv3():
    """C2 acting trivially on Z/3 (same layer as r2, different class)."""
    return make_rep(3, (3,), 2, [[0, 1, 2], [0, 1, 2]])


@pytest.fixture(scope="session")
def catalog():
    return bundled_catalog()


@pytest.fixture(scope="session")
def gl2(catalog):
    """The invertible 2x2 matrices over Z/2 on (Z/2)^2, from the catalog."""
    return catalog.get("gl2_z2sq")
