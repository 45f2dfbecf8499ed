import itertools

import numpy as np
import pytest

from homobent.boolfun import TruthTable


def row_inputs(n):
    """Input vectors (x_1..x_n) in table order; x_1 is the most significant bit."""
    return list(itertools.product((0, 1), repeat=n))


def table_from(func, n):
    return TruthTable(n, [func(x) for x in row_inputs(n)])


def inner_product_form(n):
    """x1x2 + x3x4 + ... + x_{n-1}x_n as a truth table."""
    return table_from(lambda x: sum(x[i] & x[i + 1] for i in range(0, n, 2)) % 2, n)


def brute_anf(bits):
    """Coefficient of x^a is the XOR of f(x) over all x covered by a."""
    size = len(bits)
    return [sum(bits[x] for x in range(size) if x & a == x) % 2 for a in range(size)]


def brute_nonlinearity(bits):
    """Minimum Hamming distance to every affine function, by enumeration."""
    size = len(bits)
    best = size
    for a in range(size):
        lin = [bin(a & x).count("1") % 2 for x in range(size)]
        dist = sum(b != l for b, l in zip(bits, lin))
        best = min(best, dist, size - dist)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
