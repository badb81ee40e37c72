"""Ranks and first Chern classes of type-A conformal-blocks bundles."""

from .chern import c1_fvector, c1_genus1, deg_m04, paper_table, r_genus1
from .fusion import (FusionCache, fuse3, fuse3_sl2_oracle, fusion_product, lr_coefficient,
                     quantum_product)
from .hypotheses import check_precisQ, is_free, is_quasi_rank_one, socle_check
from .picard import (DivisorClassM0n, DivisorClassSmall, fcurves, m2_solve,
                     pair_boundary_fcurve, to_nonadjacent_basis_n5)
from .ranks import BoundaryStratum, RankSequence, rank, rank_sequence, restriction_data
from .scaling import (ScalingReport, IdentityCoefficients, anomaly_m2_level1, classify,
                      identity_coeffs_closed, identity_coeffs_conjectural,
                      identity_coeffs_general, verify_identity)
from .weights import (BundleSpec, LevelWeight, Weight, casimir, dual, enumerate_level_weights,
                      pluss, scale_bundle)

__version__ = "0.1.0"
