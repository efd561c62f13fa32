"""Green's class orders, subduction skeletons, and the maps between them."""

from .core import (
    DomainMismatchError,
    ResourceLimitError,
    StateSubset,
    Transformation,
    TransformationSemigroup,
    apply_mask,
    apply_subset,
    compose,
    image,
)
from .green import ConsistencyError, EggBox, d_classes, eggboxes, green_poset, green_preorder, ideal_masks
from .maps import DiagramReport, check_im_respects_orders, im_bar, im_bar_S, im_map, verify_diagram
from .morphisms import (
    AdmissiblePartition,
    FunctorialityReport,
    TsMorphism,
    admissible_partitions,
    functoriality_check,
    quotient_ts,
    validate,
)
from .order import (
    ClassPoset,
    InducedMap,
    MalformedPreorderError,
    NotAMorphismError,
    Preorder,
    check_preorder_morphism,
    hasse,
    induce,
    lattice_violation,
    poset_isomorphic,
    quotient,
)
from .regrep import CorollaryReport, RegRep, corollary_check, right_regular
from .skeleton import (
    ImageSet,
    SubductionWitness,
    extended_image_set,
    image_set,
    inclusion_poset,
    inclusion_preorder,
    skeleton_poset,
    subduction_leq,
    subduction_preorder,
)

__all__ = [
    "AdmissiblePartition",
    "ClassPoset",
    "ConsistencyError",
    "CorollaryReport",
    "DiagramReport",
    "DomainMismatchError",
    "EggBox",
    "FunctorialityReport",
    "ImageSet",
    "InducedMap",
    "MalformedPreorderError",
    "NotAMorphismError",
    "Preorder",
    "RegRep",
    "ResourceLimitError",
    "StateSubset",
    "SubductionWitness",
    "Transformation",
    "TransformationSemigroup",
    "TsMorphism",
    "admissible_partitions",
    "apply_mask",
    "apply_subset",
    "check_im_respects_orders",
    "check_preorder_morphism",
    "compose",
    "corollary_check",
    "d_classes",
    "eggboxes",
    "extended_image_set",
    "functoriality_check",
    "green_poset",
    "green_preorder",
    "hasse",
    "ideal_masks",
    "im_bar",
    "im_bar_S",
    "im_map",
    "image",
    "image_set",
    "inclusion_poset",
    "inclusion_preorder",
    "induce",
    "lattice_violation",
    "poset_isomorphic",
    "quotient",
    "quotient_ts",
    "right_regular",
    "skeleton_poset",
    "subduction_leq",
    "subduction_preorder",
    "validate",
    "verify_diagram",
]

__version__ = "0.1.0"
