import numpy as np
import pytest

from penpls import PenaltySpec, make_preconditioner


def centered_problem(seed, n, d):
    """Random dense regression problem with centered X and y."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    X -= X.mean(axis=0)
    y = rng.standard_normal(n)
    y -= y.mean()
    return X, y


def random_penalty(seed, p, n_basis, order=2):
    """PenaltySpec with log-uniform random weights in [1e-2, 1e3]."""
    rng = np.random.default_rng(seed + 10_000)
    lambdas = 10.0 ** rng.uniform(-2, 3, size=p)
    return PenaltySpec(lambdas, order, n_basis)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dense_m(preconditioner):
    """Materialize the dense preconditioner matrix (tests only)."""
    return preconditioner.apply(np.eye(preconditioner.dim))
