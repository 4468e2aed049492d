"""B-spline bases and the expansion of a raw data matrix into basis features.

Each predictor variable gets its own basis.  A data matrix with p columns is
mapped to a matrix with p*K columns, grouped contiguously by variable, where
K is the number of basis functions per variable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegenerateVariableError

DEFAULT_N_BASIS = 20
DEFAULT_DEGREE = 3


@dataclass(frozen=True)
class SplineBasis:
    """A univariate B-spline basis defined by a degree and a padded knot vector.

    The knot vector contains the boundary knots repeated ``degree + 1`` times
    (open / clamped convention), so the basis interpolates at the boundaries
    and sums to one everywhere inside ``[knots[0], knots[-1]]``.
    """

    degree: int
    knots: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        object.__setattr__(self, "knots", knots)
        knots.setflags(write=False)
        if self.degree < 0:
            raise ConfigurationError("degree must be nonnegative")
        if np.any(np.diff(knots) < 0):
            raise ConfigurationError("knots must be nondecreasing")
        if len(knots) < self.degree + 2:
            raise ConfigurationError("too few knots for the given degree")

    @property
    def n_basis(self) -> int:
        return len(self.knots) - self.degree - 1

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.knots[0]), float(self.knots[-1])


@dataclass(frozen=True)
class BasisExpansion:
    """One SplineBasis per predictor; column blocks follow the variable order."""

    bases: tuple[SplineBasis, ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))
        if not self.bases:
            raise ConfigurationError("expansion needs at least one basis")

    @property
    def n_variables(self) -> int:
        return len(self.bases)

    @property
    def n_columns(self) -> int:
        return sum(b.n_basis for b in self.bases)


def make_basis(values, n_basis: int = DEFAULT_N_BASIS,
               degree: int = DEFAULT_DEGREE) -> SplineBasis:
    """Build a clamped B-spline basis from observed values of one variable.

    Boundary knots sit at the min and max of ``values``; the
    ``n_basis - degree - 1`` interior knots are placed at equally spaced
    quantiles of the distinct values.

    Raises
    ------
    ConfigurationError
        If ``n_basis < degree + 1``.
    DegenerateVariableError
        If ``values`` has fewer than two distinct entries.
    """
    values = np.asarray(values, dtype=float).ravel()
    if n_basis < degree + 1:
        raise ConfigurationError(
            f"n_basis={n_basis} is too small for degree {degree} "
            f"(need at least {degree + 1})")
    distinct = np.unique(values)
    if distinct.size < 2:
        raise DegenerateVariableError(
            "variable has fewer than 2 distinct values")
    lo, hi = distinct[0], distinct[-1]
    n_interior = n_basis - degree - 1
    if n_interior > 0:
        probs = np.arange(1, n_interior + 1) / (n_interior + 1)
        interior = np.quantile(distinct, probs)
    else:
        interior = np.empty(0)
    knots = np.concatenate([
        np.full(degree + 1, lo), interior, np.full(degree + 1, hi)])
    return SplineBasis(degree=degree, knots=knots)


def eval_basis(basis: SplineBasis, x: float) -> np.ndarray:
    """Evaluate all basis functions at one point via the de Boor recursion.

    ``x`` is clamped to the boundary-knot interval first, so out-of-domain
    points are evaluated at the nearest boundary.
    """
    t = basis.knots
    d = basis.degree
    lo, hi = t[0], t[-1]
    x = float(np.clip(x, lo, hi))

    left = t[:-1]
    right = t[1:]
    b = ((left <= x) & (x < right)).astype(float)
    if x >= hi:
        # the half-open intervals miss the right endpoint; assign it to the
        # last nonempty interval
        b[:] = 0.0
        b[np.nonzero(right > left)[0][-1]] = 1.0
    for k in range(1, d + 1):
        nb = len(b) - 1
        den1 = t[k:k + nb] - t[:nb]
        den2 = t[k + 1:k + 1 + nb] - t[1:1 + nb]
        with np.errstate(divide="ignore", invalid="ignore"):
            term1 = np.where(den1 > 0, (x - t[:nb]) / np.where(den1 > 0, den1, 1.0), 0.0)
            term2 = np.where(den2 > 0, (t[k + 1:k + 1 + nb] - x) / np.where(den2 > 0, den2, 1.0), 0.0)
        b = term1 * b[:-1] + term2 * b[1:]
    return b


def eval_basis_grid(basis: SplineBasis, xs) -> np.ndarray:
    """Evaluate the basis at many points; returns a (len(xs), K) matrix."""
    xs = np.asarray(xs, dtype=float).ravel()
    return np.array([eval_basis(basis, x) for x in xs])


def transform(X, expansion: BasisExpansion) -> np.ndarray:
    """Expand an n x p matrix into the n x (p*K) B-spline feature matrix.

    Row i is the concatenation of the per-variable basis evaluations at
    ``X[i, :]``, in the block order of ``expansion.bases``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != expansion.n_variables:
        raise ConfigurationError(
            f"X has {X.shape[1]} columns but the expansion was built "
            f"for {expansion.n_variables} variables")
    blocks = [eval_basis_grid(b, X[:, j]) for j, b in enumerate(expansion.bases)]
    return np.hstack(blocks)
