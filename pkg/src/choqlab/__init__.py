"""Lovász extensions, symmetric Lovász extensions and black-box checkers for
the additivity properties that characterize them."""

__version__ = "0.1.0"

from .axioms import (
    AXIOMS,
    CheckConfig,
    Verdict,
    Witness,
    check,
    check_comonotonic_additivity,
    check_diagonal_sections,
    check_homogeneity,
    check_horizontal_max_additivity,
    check_horizontal_median_additivity,
    check_horizontal_min_additivity,
    check_negative_comonotonic,
    check_negative_horizontal_max,
    check_oddness_positive_orthant,
    check_positive_comonotonic,
    check_positive_horizontal_min,
    check_splitting,
)
from .demo_functions import BUILTINS
from .errors import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    DomainKindError,
    NegativeCutError,
    SamplerExhausted,
    SingularSystem,
)
from .lovasz import (
    LovaszExtension,
    MedianAdditiveExtension,
    SectionFamily,
    SymmetricLovaszExtension,
    diagonal_section,
    eval_lovasz,
    eval_lovasz_dual,
    eval_median_additive,
    eval_symmetric,
    eval_symmetric_telescoping,
    extension_from_dict,
    is_choquet,
    is_symmetric_choquet,
    reconstruct_from_sections,
)
from .oracle import (
    affine_region,
    brute_force_axiom_sweep,
    eval_affine_interpolation,
    eval_via_mobius,
)
from .setfn import (
    MobiusRepresentation,
    SetFunction,
    elements_of,
    indicator,
    is_capacity,
    make_set_function,
    mask_of,
    mobius_transform,
    random_set_function,
)
from .vecops import (
    DomainSpec,
    SortChain,
    are_comonotonic,
    cut_above,
    cut_below,
    in_domain,
    join_scalar,
    med_clamp,
    meet_scalar,
    neg_part,
    pos_part,
    sort_chain,
)
