"""Classification of locally homogeneous affine surfaces with constant-style Christoffel symbols."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .tensor_core import (DEFAULT_TOL, ChristoffelA, LinearMap2, RicciData, Tolerances,  # noqa: F401
                          Psi3, chi, nabla_rho, psi3, pullback_a, rho3, ricci_oracle, ricci_type_a)
from .region_geometry import (RegionTag, discriminant_y, jacobi_locus_y, jacobian_det,  # noqa: F401
                              region_classify, sigma_minus, sigma_plus, u_pm)
from .type_a import (GAMMA_CSP, CanonicalFormA, Rank1Invariants, Rank2Invariants,  # noqa: F401
                     canonicalize, canonicalize_definite, canonicalize_indefinite, classify_a,
                     equivalence_witness_a, equivalent_a, fundamental_rep_minus,
                     fundamental_rep_plus, gamma_exceptional, gamma_indef1, gamma_indef2,
                     gamma_minus, gamma_plus, isotropy_orders_a, n_count, rank1_invariants)
from .type_b import (P_MINUS, P_PLUS, ChartAssignment, GaugeTransform, TypeBReport,  # noqa: F401
                     TypeBSymbol, amphichiral_b, chart_assign, equivalent_b, invariant_tensors_b,
                     isotropy_b, k_pm, membership_b, pullback_b, report_b, ricci_b)
