"""
Shared fixtures: fields, the bundled example instances and seeded generators
"""

import numpy as np
import pytest

from icbound.models.instance import IccsiInstance
from icbound.models.matrix import FqMatrix
from icbound.services import linalg
from icbound.services.design_service import load_design
from icbound.services.finite_field import field_make
from icbound.services.instance_service import load_instance


@pytest.fixture
def gf2():
    return field_make(2)


@pytest.fixture
def gf3():
    return field_make(3)


@pytest.fixture
def gf4():
    """GF(4) with modulus x^2 + x + 1; alpha is encoded as 2"""
    return field_make(2, 2)


@pytest.fixture
def gf5():
    return field_make(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fano():
    return load_instance("@fano")


@pytest.fixture
def fano_design():
    return load_design("@fano_design")


@pytest.fixture
def fig4():
    return load_instance("@fig4")


@pytest.fixture
def remark_comp():
    return load_instance("@remark_comp")


@pytest.fixture
def remark_comp1():
    return load_instance("@remark_comp1")


@pytest.fixture
def gf4_remark():
    return load_instance("@gf4_remark")


def matrix(field, rows, cols=None):
    """Shorthand for FqMatrix.from_rows in tests"""
    return FqMatrix.from_rows(field, rows, cols)


def random_iccsi(rng, field, n, m, empty=(0,)):
    """
    Random coded instance with n messages and m receivers

    Receivers listed in `empty` hold no side information; the others hold fewer than n
    random combinations that miss their request.
    """
    q = field.q
    sender = linalg.span(field, n, rng.integers(0, q, size=(n, n)))
    while sender.dim == 0:
        sender = linalg.span(field, n, rng.integers(0, q, size=(n, n)))
    VS = sender.basis
    side, requests = [], []
    for i in range(m):
        request = field.matmul(rng.integers(0, q, size=(1, VS.rows)), VS.data)[0]
        while not request.any():
            request = field.matmul(rng.integers(0, q, size=(1, VS.rows)), VS.data)[0]
        V = FqMatrix.zeros(field, 0, n)
        if i not in empty:
            V = FqMatrix(field, rng.integers(0, q, size=(int(rng.integers(0, n)), n)))
            while linalg.contains(linalg.span(field, n, V), request):
                V = FqMatrix(field, rng.integers(0, q, size=(int(rng.integers(0, n)), n)))
        side.append(V)
        requests.append(request)
    return IccsiInstance(field, VS, tuple(side), FqMatrix(field, np.array(requests, dtype=np.int64)))
