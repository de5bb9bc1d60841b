import pytest

from config import settings
from systems.charmatrix import ReducedVectorMatrix, parse_matrix


@pytest.fixture(autouse=True)
def no_log_files(monkeypatch):
    monkeypatch.setattr(settings, "LOG_TO_FILE", False)


@pytest.fixture
def simplex_pair() -> ReducedVectorMatrix:
    """Small cover over a product of two 3-simplices with w3^2 != 0."""
    return parse_matrix([3, 3], "Z2", [[1, 1, 1, 1, 1, 1], [0, 0, 0, 1, 1, 1]])


@pytest.fixture
def rp2() -> ReducedVectorMatrix:
    return parse_matrix([2], "Z2", [[1, 1]])


@pytest.fixture
def torus_bundle() -> ReducedVectorMatrix:
    return parse_matrix([1, 1, 1], "Z2", [[1, 0, 1], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def cyclic_square() -> ReducedVectorMatrix:
    """Quasitoric 4-manifold with b = (2, 1): bounds unoriented, not oriented."""
    return parse_matrix([1, 1], "Z", [[1, 2], [1, 1]])


@pytest.fixture
def bott_square() -> ReducedVectorMatrix:
    """Integer triangular matrix over two 2-simplices; its power-sum obstruction is 5."""
    return parse_matrix([2, 2], "Z", [[1, 1, 1, 1], [0, 0, 1, 1]])
