"""Additive regression via B-spline expansion and penalized partial least
squares, with kernel (dual) and conjugate-gradient formulations."""

from .errors import (ConfigurationError, DataError, DegenerateResponseError,
                     DegenerateVariableError, InvalidKernelError,
                     ModelFormatError, NumericalError, PenplsError)
from .splines import (BasisExpansion, SplineBasis, eval_basis,
                      eval_basis_grid, make_basis, transform)
from .penalty import (PenaltySpec, Preconditioner, apply_preconditioner,
                      assemble_penalty, difference_matrix,
                      make_preconditioner, penalty_kernel)
from .pls import (FitConfig, PlsFit, closed_form_beta, fitted_values,
                  nipals_fit, penalized_pls_fit)
from .kernel import KernelFit, gram_matrix, kernel_penalized_pls_fit
from .cg import CgResult, pcg_iterates, weighted_inner
from .gam import FittedFunction, GamModel, fit_gam, fitted_function, predict
from .selection import (CvChoice, CvGrid, default_lambda_grid, loocv,
                        score_path)
from .model_io import (Dataset, ingest, ingest_for_model, load_model,
                       save_model)

__version__ = "0.1.0"

__all__ = [
    "BasisExpansion", "CgResult", "ConfigurationError", "CvChoice", "CvGrid",
    "DataError", "Dataset", "DegenerateResponseError",
    "DegenerateVariableError",
    "FitConfig", "FittedFunction", "GamModel", "InvalidKernelError",
    "KernelFit", "ModelFormatError", "NumericalError", "PenaltySpec",
    "PenplsError", "PlsFit", "Preconditioner", "SplineBasis",
    "apply_preconditioner", "assemble_penalty", "closed_form_beta",
    "default_lambda_grid", "difference_matrix", "eval_basis",
    "eval_basis_grid", "fit_gam", "fitted_function", "fitted_values",
    "gram_matrix", "ingest", "ingest_for_model", "kernel_penalized_pls_fit",
    "load_model", "loocv", "make_basis", "make_preconditioner", "nipals_fit",
    "pcg_iterates", "penalized_pls_fit", "penalty_kernel", "predict",
    "save_model", "score_path", "transform", "weighted_inner",
]
