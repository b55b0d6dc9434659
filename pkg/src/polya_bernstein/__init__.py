"""Polya urn distribution with negative replacement and the Bernstein-type operator R_n.

Exact (``fractions.Fraction``) and double-precision evaluation of the urn law,
the function ``phi_{n,k}`` that locates the mode of ``p_{n,k}(x)``, the
operator ``R_n(f, x) = E f(X/n)``, checkers for the supporting inequalities,
a Monte Carlo sampler, and grid verification suites for the monotonicity
results.
"""

from .errors import (DegenerateParametersError, DomainError, GenerationFailure,
                     InternalInconsistencyError, InvalidInputError, ModeError, PolyaError,
                     TooLargeError)
from .inequalities import (FunctionDescriptor, SequencePair, check_aux7,
                           check_refined_reversed_cbs, exp_descriptor, generate_lemma1_instance,
                           inverse_linear_descriptor, lemma2_families, polya_szego_ratio,
                           polynomial_descriptor, trapezoid_gap, verify_lemma1, verify_lemma2)
from .operators import (OrderReport, SampledFunction, affine, bernstein_eval, constant,
                        dominates, exponential, identity, inverse_linear, rn_eval, rn_grid,
                        square, step, table, verify_theorem2, verify_theorem3)
from .reports import VerificationReport
from .sampler import EmpiricalPmf, SampleConfig, draw_path, empirical_pmf, gof_chi_square
from .shape import (PhiSpec, RootResult, XStarTable, locate_root, phi, phi_prime,
                    verify_theorem1, verify_unimodal, x_star, x_star_table)
from .urn import (Cdf, Pmf, UrnParams, cdf, cdf_vector, enumerate_paths_pmf, pmf_general,
                  pmf_grid, pmf_special, pmf_vector, replacement_param, rising_factorial,
                  urn_pmf)

__version__ = "0.1.0"
