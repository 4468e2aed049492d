"""Difference penalties and the block preconditioner they induce.

The penalty on the expanded coefficient vector is block diagonal: variable j
contributes ``lambda_j * K_q`` where ``K_q`` penalizes order-q differences of
adjacent coefficients.  The preconditioner is the inverse of identity plus
penalty, held in factored per-block form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import ConfigurationError, NumericalError

DEFAULT_DIFF_ORDER = 2


def difference_matrix(n_basis: int) -> np.ndarray:
    """First-order difference operator as a (K-1) x K matrix."""
    if n_basis < 2:
        raise ConfigurationError("difference matrix needs n_basis >= 2")
    return np.eye(n_basis - 1, n_basis) - np.eye(n_basis - 1, n_basis, k=1)


def penalty_kernel(n_basis: int, order: int) -> np.ndarray:
    """Order-q difference penalty kernel, D'D with D the stacked differences.

    Symmetric positive semidefinite with rank ``n_basis - order``; its null
    space is spanned by discrete polynomials of degree below ``order``.
    """
    if not 1 <= order <= n_basis - 1:
        raise ConfigurationError(
            f"difference order {order} out of range for n_basis={n_basis}")
    diff = np.eye(n_basis)
    for size in range(n_basis, n_basis - order, -1):
        diff = difference_matrix(size) @ diff
    return diff.T @ diff


@dataclass(frozen=True)
class PenaltySpec:
    """Per-variable penalty weights plus the shared difference structure.

    Parameters
    ----------
    lambdas : array of shape (p,)
        Nonnegative penalty weight for each variable.
    order : int
        Difference order q (default 2).
    n_basis : int
        Basis functions per variable.
    """

    lambdas: np.ndarray
    order: int
    n_basis: int

    def __post_init__(self):
        lambdas = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        object.__setattr__(self, "lambdas", lambdas)
        lambdas.setflags(write=False)
        if np.any(lambdas < 0):
            raise ConfigurationError("penalty weights must be nonnegative")
        if not 1 <= self.order <= self.n_basis - 1:
            raise ConfigurationError(
                f"difference order {self.order} out of range for "
                f"n_basis={self.n_basis}")

    @classmethod
    def shared(cls, lam: float, n_variables: int, n_basis: int,
               order: int = DEFAULT_DIFF_ORDER) -> "PenaltySpec":
        """Shared-lambda configuration: one weight for all variables."""
        return cls(np.full(n_variables, float(lam)), order, n_basis)

    @property
    def n_variables(self) -> int:
        return len(self.lambdas)

    @property
    def dim(self) -> int:
        return self.n_variables * self.n_basis


def assemble_penalty(spec: PenaltySpec) -> np.ndarray:
    """Materialize the full block-diagonal penalty matrix (pK x pK)."""
    kernel = penalty_kernel(spec.n_basis, spec.order)
    return np.kron(np.diag(spec.lambdas), kernel)


class Preconditioner:
    """Blockwise inverse of (I + penalty), applied without ever forming it.

    Block j is ``(I_K + lambda_j K_q)^{-1}``, stored as a Cholesky factor.
    The forward map (multiplication by ``I + P``) is also exposed since the
    conjugate-gradient oracle needs the inverse-preconditioner inner product.
    """

    def __init__(self, spec: PenaltySpec):
        self.spec = spec
        kernel = penalty_kernel(spec.n_basis, spec.order)
        eye = np.eye(spec.n_basis)
        self._forward = {}
        self._factor = {}
        for lam in np.unique(spec.lambdas):
            block = eye + lam * kernel
            try:
                self._factor[lam] = cho_factor(block)
            except np.linalg.LinAlgError as exc:  # pragma: no cover
                raise NumericalError(
                    f"I + {lam} * K_q is not positive definite") from exc
            self._forward[lam] = block

    @property
    def dim(self) -> int:
        return self.spec.dim

    def _blocks(self, v: np.ndarray):
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.dim:
            raise ConfigurationError(
                f"vector of length {v.shape[0]} does not match "
                f"preconditioner dimension {self.dim}")
        K = self.spec.n_basis
        for j, lam in enumerate(self.spec.lambdas):
            yield lam, v[j * K:(j + 1) * K]

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Multiply by M, i.e. solve (I + P) x = v blockwise.

        Accepts a vector of length pK or a matrix with pK rows.
        """
        out = np.empty_like(np.asarray(v, dtype=float))
        K = self.spec.n_basis
        for j, (lam, chunk) in enumerate(self._blocks(v)):
            out[j * K:(j + 1) * K] = cho_solve(self._factor[lam], chunk)
        return out

    def apply_inverse(self, v: np.ndarray) -> np.ndarray:
        """Multiply by M^{-1} = I + P, blockwise and exactly."""
        out = np.empty_like(np.asarray(v, dtype=float))
        K = self.spec.n_basis
        for j, (lam, chunk) in enumerate(self._blocks(v)):
            out[j * K:(j + 1) * K] = self._forward[lam] @ chunk
        return out


def make_preconditioner(spec: PenaltySpec) -> Preconditioner:
    return Preconditioner(spec)


def apply_preconditioner(preconditioner: Preconditioner, v) -> np.ndarray:
    return preconditioner.apply(v)
