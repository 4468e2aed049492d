import numpy as np
import pytest

from penpls import ConfigurationError
from penpls.testkit import (SyntheticSpec, dense_ls_oracle, gen_additive,
                            krylov_basis, numerical_rank)


class TestGenAdditive:
    def test_seed_determinism(self):
        spec = SyntheticSpec(9, 12, 2, 0.5, ("sine", "step"))
        X1, y1, _ = gen_additive(spec)
        X2, y2, _ = gen_additive(spec)
        np.testing.assert_array_equal(X1, X2)
        np.testing.assert_array_equal(y1, y2)

    def test_noiseless_recovers_truth(self):
        X, y, truths = gen_additive(SyntheticSpec(1, 20, 2, 0.0,
                                                  ("linear", "quadratic")))
        expect = truths[0](X[:, 0]) + truths[1](X[:, 1])
        np.testing.assert_array_equal(y, expect)

    def test_bad_specs_rejected(self):
        with pytest.raises(ConfigurationError):
            SyntheticSpec(0, 10, 0, 0.1, ())
        with pytest.raises(ConfigurationError):
            SyntheticSpec(0, 10, 1, 0.1, ("sine", "linear"))
        with pytest.raises(ConfigurationError):
            SyntheticSpec(0, 10, 1, 0.1, ("mystery",))


class TestDenseLsOracle:
    def test_full_rank_matches_solve(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((15, 4))
        y = rng.standard_normal(15)
        np.testing.assert_allclose(dense_ls_oracle(X, y),
                                   np.linalg.solve(X.T @ X, X.T @ y),
                                   rtol=1e-10)

    def test_rank_deficient_gives_minimal_norm(self):
        rng = np.random.default_rng(3)
        u = rng.standard_normal(10)
        v = rng.standard_normal(4)
        X = np.outer(u, v)  # rank one
        beta = dense_ls_oracle(X, u)
        # X beta = (v . beta) u, so the residual vanishes when v . beta = 1
        # and the minimal-norm such beta is v / (v . v)
        np.testing.assert_allclose(beta, v / (v @ v), rtol=1e-10)


class TestKrylovBasis:
    def test_matches_explicit_powers(self):
        rng = np.random.default_rng(4)
        A = rng.standard_normal((5, 5))
        b = rng.standard_normal(5)
        basis = krylov_basis(lambda v: A @ v, b, 3)
        np.testing.assert_allclose(basis,
                                   np.column_stack([b, A @ b, A @ (A @ b)]))

    def test_zero_count_rejected(self):
        with pytest.raises(ConfigurationError):
            krylov_basis(lambda v: v, np.ones(3), 0)


class TestNumericalRank:
    def test_exact_ranks(self):
        rng = np.random.default_rng(5)
        A = rng.standard_normal((8, 3))
        assert numerical_rank(A) == 3
        assert numerical_rank(np.column_stack([A, A[:, 0]])) == 3
        assert numerical_rank(np.zeros((4, 4))) == 0
