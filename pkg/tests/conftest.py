import pytest

from bicritical.arithmetic import ostrowski_expand, parse_param

GOLDEN = "(-1+1sqrt5)/2"
SILVER = "(-1+1sqrt2)/1"


def expand(alpha, beta="0", depth=16):
    return ostrowski_expand(parse_param(alpha), parse_param(beta), depth)


@pytest.fixture(scope="session")
def golden_quarter():
    return expand(GOLDEN, "1/4", 24)


@pytest.fixture(scope="session")
def golden_zero():
    return expand(GOLDEN, "0", 24)
