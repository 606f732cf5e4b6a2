"""Exact tools for principal A-determinants of point configurations.

For a configuration A of lattice points with last coordinate 1, decide
whether a coefficient vector lies in V(A) (torus critical points on some
face), whether the Euler-operator map is finite there, compute the face
discriminants cutting out the zero set of E_A, and run seeded campaigns
checking that all of these agree.
"""

from .configuration import (ConfigurationError, Face, FaceLattice, FaceNotInLattice, PointConfiguration,
                            face_lattice, face_polynomial, from_aprime, validate)
from .discriminant import (EASupport, FaceDiscriminant, FinitenessReport, InconsistentOracles,
                           MembershipVerdict, VariableLimitExceeded, eA_support, eA_vanishes,
                           face_discriminant_symbolic, finiteness_test, nabla_membership,
                           sample_nabla_point, vA_membership)
from .groebner import Ideal, eliminate, reduced_groebner_basis, saturate_by_product
from .harness import VerificationPlan, VerificationReport, normalized_volume, run_verification
from .polynomials import GREVLEX, LEX, Polynomial, Ring
from .toric import HilbertProfile, hilbert_quotient_profile, toric_ideal

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "EASupport", "Face", "FaceDiscriminant", "FaceLattice", "FaceNotInLattice",
    "FinitenessReport", "GREVLEX", "HilbertProfile", "Ideal", "InconsistentOracles", "LEX",
    "MembershipVerdict", "PointConfiguration", "Polynomial", "Ring", "VariableLimitExceeded",
    "VerificationPlan", "VerificationReport", "eA_support", "eA_vanishes", "eliminate",
    "face_discriminant_symbolic", "face_lattice", "face_polynomial", "finiteness_test", "from_aprime",
    "hilbert_quotient_profile", "nabla_membership", "normalized_volume", "reduced_groebner_basis",
    "run_verification", "sample_nabla_point", "saturate_by_product", "toric_ideal", "vA_membership",
    "validate",
]
