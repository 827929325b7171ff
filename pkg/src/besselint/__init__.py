"""Closed-form infinite integrals over products of spherical Bessel functions,
with exact angular-momentum algebra and an independent quadrature oracle."""

from .bessel import j_from_integral_rep, sph_bessel
from .closed_form import (PiValue, TripleKinematics, integral_j0_halfline,
                          integral_one_bessel_line, integral_two_bessel_halfline, kinematics,
                          orthogonality_value, shifted_cross_integral, triple_integral,
                          triple_integral_special)
from .errors import (BesselIntError, DivergenceError, DomainError, EvaluationError,
                     FormulaInapplicable, NoAdmissibleReduction)
from .exact import (BigRational, LegendrePoly, SqrtRational, binomial, clebsch_gordan, factorial,
                    legendre, legendre_at_zero, legendre_eval, wigner_6j)
from .identities import (TruncationReport, legendre_from_bessel, product_expansion_sum,
                         product_inverse, rayleigh_partial_sum)
from .oracle import (QuadratureReport, integrate_finite, integrate_full_line,
                     integrate_oscillatory_tail)
from .reduce4 import (PairingPlan, j1_sq_j2_sq_integral, plan_reduction, quad_bessel_integral,
                      quad_bessel_numeric)

__version__ = "0.1.0"
