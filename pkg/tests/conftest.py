import pytest

from entropia import build_table


@pytest.fixture(scope="session")
def table_1e6():
    return build_table(10**6)


@pytest.fixture(scope="session")
def table_1e4():
    return build_table(10**4)


def trial_division_primes(limit):
    """Independent primality oracle: plain trial division."""
    out = []
    for n in range(2, limit + 1):
        if n % 2 == 0:
            if n == 2:
                out.append(n)
            continue
        d = 3
        prime = True
        while d * d <= n:
            if n % d == 0:
                prime = False
                break
            d += 2
        if prime:
            out.append(n)
    return out


def second_sieve_primes(limit):
    """Independent second sieve: dense array over all integers."""
    import numpy as np

    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0]
