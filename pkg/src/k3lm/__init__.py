"""k3lm: exact divisor-class calculus on K3 Picard lattices.

Cone membership, line bundle cohomology, Clifford index, ACM tests, and
slope-semistability certificates for rank-2 Lazarsfeld-Mukai bundles,
all over exact integer arithmetic.
"""

__version__ = "0.1.0"

from .acm import AcmReport, is_acm_line_bundle, is_initialized
from .clifford import CliffordReport, clifford_index, enumerate_A, mu
from .cones import CohomologyProfile, ConeFlags, ConeOracle
from .errors import ConsistencyError, DomainError, K3LMError, LatticeError
from .lattice import DivClass, PicardLattice
from .lm import (CERTIFIED_SEMISTABLE, INCONCLUSIVE, Certificate,
                 DestabCandidate, DMExtensionCandidate, LMBundleSpec,
                 acm_witness, destabilizer_scan, dm_extension_scan,
                 lm_invariants, semistable_certificate)

__all__ = [
    "AcmReport", "CERTIFIED_SEMISTABLE", "Certificate", "CliffordReport",
    "CohomologyProfile", "ConeFlags", "ConeOracle", "ConsistencyError",
    "DMExtensionCandidate", "DestabCandidate", "DivClass", "DomainError",
    "INCONCLUSIVE", "K3LMError", "LMBundleSpec", "LatticeError",
    "PicardLattice", "acm_witness", "clifford_index", "destabilizer_scan",
    "dm_extension_scan", "enumerate_A", "is_acm_line_bundle",
    "is_initialized", "lm_invariants", "mu", "semistable_certificate",
]
