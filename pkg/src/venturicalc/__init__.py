"""venturicalc: numerics for hypergroup characters, Mehler-Fock transforms,
hyperbolic fractional integration and wave functional calculus.

The library cross-verifies four independent character engines, the
generalized Fourier transform with calibrated Plancherel densities, the
fractional integration identity suite, explicit cosine families with finite
propagation speed, the grid operator calculus T_A / Lambda_A, and
Marcinkiewicz multiplier transfer.
"""

__version__ = "0.1.0"

from .characters import (CharacterEval, MeasureRep, bessel_j, character_matrix,
                         eigen_residual, laplace_rep, phi_closed, phi_from_laplace,
                         phi_ode, phi_volterra)
from .errors import (ConfigurationError, ConvergenceError, DomainError,
                     IntegrationError, TruncationError)
from .fracint import d_s_power, growth_ratio, mehler_dirichlet_check, u_beta, w_alpha
from .models import (Grid, HypergroupModel, SampledFunction, WeightProfile,
                     build_model, lp_norm, make_grid, q_profile, validate_weight)
from .multipliers import (MultiplierNorm, VariationSample, g_from_ghat,
                          marcinkiewicz_norm, s_variation, s_variation_bruteforce,
                          transfer_apply)
from .opcalc import (KernelMatrix, OperatorContext, discretize, hermite_example,
                     homomorphism_residual, lambda_fc, multiplier_residual,
                     schur_bound, t_a)
from .report import Check, CheckReport
from .transforms import (SpectralFunction, VenturiRegion, convolve, forward,
                         inverse, pair_table, plancherel_calibration,
                         product_formula_residual, venturi_contains,
                         venturi_norm_probe)
from .waves import (cosine_apply, frac_wave_check, norm_growth, spherical_mean,
                    support_radius, wave_residual, wn_growth)

__all__ = [name for name in dir() if not name.startswith("_")]
