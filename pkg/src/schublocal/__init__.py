"""Exact local invariants of Schubert varieties at torus-fixed points.

Cominuscule-point certificates, equivariant Chow and K-theory restrictions,
multiplicities and Hilbert series, over any finite crystallographic root
system, in exact rational arithmetic.
"""

__version__ = "0.1.0"

from .rootsys import (
    CartanDatum,
    CartanMatrixError,
    Covector,
    Root,
    build_root_system,
    covector,
    covector_from_diag,
    pair,
    reflect,
)
from .weyl import (
    MixedGroupError,
    WeylElement,
    WeylGroup,
    bruhat_leq,
    coset_rep,
    group,
    hecke_product,
    reduced_words,
)
from .schub import (
    BruhatPreconditionError,
    CominCertificate,
    NotCominusculeError,
    Variant,
    avoids_321,
    comin_certificate,
    curve_weights,
    down_up_sets,
    is_cominuscule_element,
    max_parabolic,
    slice_dimension,
    zariski_weights_typeA,
)
from .localize import (
    ChowClass,
    KClass,
    NotReducedError,
    RootSequence,
    billey_restriction,
    enumerate_subexpressions,
    gw_restriction,
    root_sequence,
)
from .evalmap import (
    HilbertSeries,
    InternalConsistencyError,
    ev_chow,
    ev_k,
    fast_path_321,
    hilbert_series,
    multiplicity,
)

__all__ = [
    "__version__",
    "CartanDatum",
    "CartanMatrixError",
    "Covector",
    "Root",
    "build_root_system",
    "covector",
    "covector_from_diag",
    "pair",
    "reflect",
    "MixedGroupError",
    "WeylElement",
    "WeylGroup",
    "bruhat_leq",
    "coset_rep",
    "group",
    "hecke_product",
    "reduced_words",
    "BruhatPreconditionError",
    "CominCertificate",
    "NotCominusculeError",
    "Variant",
    "avoids_321",
    "comin_certificate",
    "curve_weights",
    "down_up_sets",
    "is_cominuscule_element",
    "max_parabolic",
    "slice_dimension",
    "zariski_weights_typeA",
    "ChowClass",
    "KClass",
    "NotReducedError",
    "RootSequence",
    "billey_restriction",
    "enumerate_subexpressions",
    "gw_restriction",
    "root_sequence",
    "HilbertSeries",
    "InternalConsistencyError",
    "ev_chow",
    "ev_k",
    "fast_path_321",
    "hilbert_series",
    "multiplicity",
]
