import random

import pytest

from arrangement import arrangement_from_rows, build_intersection_lattice
from numeric import Q, Matrix


def random_rows(rng, n, k, coeff=2):
    """Up to k pairwise non-proportional nonzero integer rows of length n."""
    rows = []
    for _ in range(40 * (k + 1)):
        if len(rows) == k:
            break
        row = [rng.randint(-coeff, coeff) for _ in range(n)]
        if not any(row):
            continue
        if any(Matrix([row, r], Q).rank() == 1 for r in rows):
            continue
        rows.append(row)
    return rows


@pytest.fixture
def rng():
    return random.Random(20240613)


@pytest.fixture
def random_arrangement():
    """Factory: random central arrangement over Q, N <= max_dim, <= max_hyperplanes members."""

    def make(rng, max_dim=5, max_hyperplanes=8):
        n = rng.randint(1, max_dim)
        k = rng.randint(0, max_hyperplanes)
        rows = random_rows(rng, n, k)
        return build_intersection_lattice(arrangement_from_rows(rows, Q), n, Q)

    return make


@pytest.fixture
def quiet_logs(monkeypatch):
    monkeypatch.setattr("config.LOG_LEVEL", "quiet")
