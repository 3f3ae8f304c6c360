"""Hom and Ext of twisted quiver representations and quiver sheaves on P1."""

from .adjunction import adjunction_iso
from .linalg import (
    ExactMatrix,
    FieldSpec,
    cokernel_dimension,
    kernel_basis,
    rank,
    solve,
)
from .quiver import Path, Quiver, compose, enumerate_paths
from .rep import (
    PathBasis,
    RepMorphism,
    TwistData,
    TwistedRep,
    act_path,
    build_extension,
    delta_matrix,
    ext1_classes,
    ext1_dim,
    hom_space,
    is_split_extension,
)
from .resolution import (
    ExactnessReport,
    GradedBasis,
    GradedMapFamily,
    check_resolution_exactness,
    lift_beta,
    resolution_matrices,
)
from .sheaf import (
    BinForm,
    ExtReport,
    FormMatrix,
    QSheafP1,
    SplitBundle,
    cech_hyper,
    delta0_matrix,
    delta1_matrix,
    euler_characteristic,
    euler_check,
    ext_quiver_sheaf,
    sheaf_hom_ext_dims,
    tensor_bundle,
)

__all__ = [
    "ExactMatrix", "FieldSpec", "rank", "kernel_basis", "solve",
    "cokernel_dimension",
    "Quiver", "Path", "compose", "enumerate_paths",
    "TwistData", "PathBasis", "TwistedRep", "RepMorphism", "act_path",
    "delta_matrix", "hom_space", "ext1_dim", "build_extension",
    "is_split_extension", "ext1_classes",
    "GradedBasis", "GradedMapFamily", "ExactnessReport",
    "resolution_matrices", "check_resolution_exactness", "lift_beta",
    "adjunction_iso",
    "SplitBundle", "BinForm", "FormMatrix", "QSheafP1", "ExtReport",
    "sheaf_hom_ext_dims", "delta0_matrix", "delta1_matrix",
    "ext_quiver_sheaf", "cech_hyper", "euler_characteristic", "euler_check",
    "tensor_bundle",
]

__version__ = "0.1.0"
