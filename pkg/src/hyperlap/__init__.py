"""Fundamental solution of the Laplace-Beltrami operator on the hyperboloid H_R^d."""

from .errors import (ConvergenceError, GeometryError, HyperlapError, KernelError,
                     RouteUnavailable, SingularityError)
from .geometry import (AmbientPoint, GeodesicPolar, KernelParams, LorentzTransform,
                       bilinear_form, boost_to_origin, euclidean_inner, from_geodesic_polar,
                       geodesic_distance, geodesic_distance_polar, separation_angle,
                       to_geodesic_polar)
from .kernel import (EvalResult, EvalRoute, euclidean_green, evaluate_i, fundamental_solution,
                     i_finite_sum, i_hyp2f1, i_legendre, i_quadrature, i_recurrence_check,
                     kernel_at_distance, normalization_constant, small_rho_asymptotic)
from .special import double_factorial, gamma_fn, gauss_2f1, legendre_q_equal, pochhammer

__version__ = "0.1.0"
