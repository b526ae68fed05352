from fractions import Fraction

import pytest

from weightext.graph import PascalGraph, full_levels
from weightext.link import standard_link, weight_system
from weightext.uq import GTGraph, build_uq, signatures, uq_full

Q = Fraction(1, 2)


def P(n: int, k: int):
    return PascalGraph.vertex(n, k)


def S(*parts: int):
    return GTGraph.vertex(parts)


@pytest.fixture(scope="session")
def pascal4():
    t = full_levels(PascalGraph(), 4)
    k = standard_link(t)
    return t, k, weight_system(t, k)


@pytest.fixture(scope="session")
def uq2():
    """U_q(1/2) truncation over all length-2 signatures of size <= 4."""
    return build_uq(Q, signatures(2, 4))


@pytest.fixture(scope="session")
def uq3():
    return uq_full(Q, 3, 4)
