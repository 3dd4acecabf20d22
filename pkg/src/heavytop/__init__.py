"""Exact symbolic-numeric non-integrability analysis of the heavy top.

Library layout:

  exact        arbitrary precision arithmetic over Q(i), polynomials,
               partial fractions, linear solving, square root tests
  body         physical parameters, special frame, equations of motion,
               first integrals, classical case detection
  solutions    pendulum solution families, periods, Weierstrass data
  variational  variational equations, algebraization, reduced forms,
               the three classification targets
  galois       differential Galois classification engines
  verdict      end-to-end pipelines and scanners
  numerics     floating point oracle (integration, elliptic functions,
               monodromy)
  cli          batch command line front end
"""

from .body import BodyParameters, FrameParams, State, classical_case_detect, derive_special_frame
from .exact import GaussRational, Poly, Rational, RationalFunction, SqrtQuantity
from .galois import (GaloisVerdict, brioschi_determinant, certify_not_abelian,
                     kimura_classify, kovacic_case2, lame_classify)
from .solutions import PendulumSolution, periods_and_poles, weierstrass_data
from .variational import (FuchsianEquation, LameData, RiemannPData,
                          lame_from_second, normal_reduced_form,
                          riemann_p_from_L3zero)
from .verdict import Verdict, analyze, parameter_scan, solvable_family_membership

__version__ = "0.1.0"

__all__ = [
    "BodyParameters", "FrameParams", "State", "classical_case_detect",
    "derive_special_frame", "GaussRational", "Poly", "Rational",
    "RationalFunction", "SqrtQuantity", "GaloisVerdict",
    "brioschi_determinant", "certify_not_abelian", "kimura_classify",
    "kovacic_case2", "lame_classify", "PendulumSolution",
    "periods_and_poles", "weierstrass_data", "FuchsianEquation", "LameData",
    "RiemannPData", "lame_from_second", "normal_reduced_form",
    "riemann_p_from_L3zero", "Verdict", "analyze", "parameter_scan",
    "solvable_family_membership", "__version__",
]
