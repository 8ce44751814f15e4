import pytest

from ccmagma import fixtures
from ccmagma.generation import generate_quasigroup

A2 = fixtures.DOUBLE_MOD3
A3 = fixtures.DOUBLE_MOD3_SHIFTED
F5A = fixtures.DOUBLE_MOD5
Z9A = fixtures.DOUBLE_MOD9

FINITE_FIXTURES = {
    "three-idem": A2,
    "no-idem": A3,
    "mod5": F5A,
    "mod9": Z9A,
    "singleton": fixtures.singleton(),
}


def batch(count, order_for_seed):
    out = []
    for seed in range(count):
        order = order_for_seed(seed)
        magma, params = generate_quasigroup(order, seed)
        out.append((order, seed, magma, params))
    return out


@pytest.fixture(scope="session")
def batch200():
    """The acceptance batch: orders 2..32 cycling, seeds 0..199."""
    return batch(200, lambda seed: 2 + seed % 31)


@pytest.fixture(scope="session")
def batch_small():
    return batch(40, lambda seed: 2 + seed % 11)
