"""Plane trees, Belyi signatures and Belyi polynomials."""
from .polys import (
    SYMMETRIC,
    UNIT,
    BelyiPoly,
    CriticalProfile,
    NotBelyiError,
    chebyshev_belyi,
    critical_profile_poly,
    jacobi_G,
    profile_matches_signature,
    two_vertex_exact,
)
from .signature import (
    B3_CASES,
    BelyiSignature,
    SignatureError,
    b3_from_bracket,
    floor_identities,
    iter_signatures,
    signature_b1,
    signature_b2,
    signature_b3,
    signature_G,
    signature_two_vertex,
)
from .tree import PlaneTree, TreeError, build_tree, chebyshev_tree, coincidence_check

__all__ = [
    "SYMMETRIC",
    "UNIT",
    "B3_CASES",
    "BelyiPoly",
    "BelyiSignature",
    "CriticalProfile",
    "NotBelyiError",
    "PlaneTree",
    "SignatureError",
    "TreeError",
    "b3_from_bracket",
    "build_tree",
    "chebyshev_belyi",
    "chebyshev_tree",
    "coincidence_check",
    "critical_profile_poly",
    "floor_identities",
    "iter_signatures",
    "jacobi_G",
    "profile_matches_signature",
    "signature_G",
    "signature_b1",
    "signature_b2",
    "signature_b3",
    "signature_two_vertex",
    "two_vertex_exact",
]
