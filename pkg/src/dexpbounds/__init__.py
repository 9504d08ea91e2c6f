"""Exact extremes and bounds for the norm of the derivative of the Lie exponential map."""

from .algebra import (AdOperator, DeltaZeroEstimate, DomainError, InnerProduct, LieAlgebra,
                      StructureConstants, StructureError, ad, delta_zero, dump_algebra,
                      frobenius_certificate, load_algebra, validate)
from .bounds import (BoundReport, bound_report, corollary_decay, exact_extremes,
                     lambda_tilde_extremes, nilpotent_bounds, thm1_bounds, thm2_bounds)
from .builtin import CatalogEntry, catalog, verify_traits
from .harness import PropertyRunReport, brute_force_extremes, run_suite
from .matfunc import PhiOperator, phi_matrix, phi_quadrature_oracle, phi_scalar
from .spectral import (SpectralSummary, diagonalizability, eigenvalues, minimax_check,
                       singular_values, spectral_summary)

__version__ = "0.1.0"
