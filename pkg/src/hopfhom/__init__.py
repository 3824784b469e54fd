"""Exact bicommutative Hopf algebras over F_p and Q, their abelian-category
operations, and cellular homology with Hopf algebra coefficients."""

from .abelian import (
    QuotientHopf,
    SubHopf,
    biproduct,
    descend_through_cokernel,
    factor_through_kernel,
    hopf_cokernel,
    hopf_kernel,
    image,
    is_exact_at,
    matrix_to_morphism,
    power,
)
from .actions import (
    ActionSpec,
    EndRingReport,
    apply_exp_to_chain,
    canonical_action,
    enumerate_end_ring,
    exp_comparison,
    exp_morphism,
    exp_object,
    verify_action,
)
from .constructors import (
    FiniteAbelianGroup,
    GroupHom,
    appendix_d1,
    appendix_d2,
    d_pair,
    function_hopf,
    group_hom_to_morphism,
    group_hopf,
    lift_to_group_hom,
)
from .errors import HopfError
from .homology import (
    CWComplexData,
    FpChainComplex,
    HopfChainComplex,
    builtin_space,
    cellular_chain,
    classical_homology_fp,
    compare_with_group_functor,
    connecting_morphism,
    homology_all,
    homology_at,
    periodicized_chain,
    relative_chain,
    subcomplex,
    verify_les,
)
from .hopf import (
    HopfAlgebra,
    HopfMorphism,
    classify_triviality,
    cointegral,
    compose,
    convolution,
    dual,
    group_likes,
    int_power,
    integral,
    tensor,
    transport_structure,
    verify_hopf,
    verify_morphism,
)
from .linalg import Field, Subspace

__version__ = "0.1.0"
