"""Residuated-lattice computation on finite tables and on [0, 1].

The package grows from a small core: UnitValue numbers with exact and
float backends, t-norm/residuum pairs, and two quantale carriers.  On
top of those sit quantale modules and their transforms, a Lukasiewicz
partition basis, a block image codec, t-norm morphology, fuzzy
partitions, and a finite-algebra lab (closure operators, consequence
relations, congruences).
"""

from .errors import (
    BackendMismatch,
    BadMagic,
    BoundsViolation,
    DimMismatch,
    DivisibilityViolation,
    IndexMismatch,
    IndexOut,
    InvalidAlgebra,
    InvalidPartition,
    InvalidRelation,
    MalformedHeader,
    NotAHomomorphism,
    NumeratorOverflow,
    QumodError,
    SchemeMismatch,
    SizeBound,
    SubsetViolation,
    TruncatedData,
    UnsupportedMaxval,
    VersionUnsupported,
)
from .report import LawReport, LawResult
from .tnorms import (
    GODEL,
    LUKASIEWICZ,
    NILPOTENT_MINIMUM,
    PRODUCT,
    TNormKind,
    generalized_lukasiewicz,
    parse_tnorm,
    tnorm_apply,
    tnorm_residuum,
)
from .values import ONE, ZERO, UnitValue
from .quantale import (
    FiniteMonoid,
    FiniteQuantale,
    TNormQuantale,
    check_quantale_laws,
    finite_residuals,
    grid_quantale,
    lukasiewicz_chain,
    powerset_quantale,
)
from .modules import (
    FiniteModule,
    check_module_laws,
    congruence_of_ideal,
    cyclic_generator_check,
    function_module,
    ideal_closure,
    ideal_elements,
    interval_module,
    module_residuals,
    nucleus_from_hom,
    nucleus_validate,
    quotient_module,
    self_module,
    submodule_generated,
)
from .closure import (
    closure_meetclosed_bijection,
    consequence_closure_roundtrip,
)
from .matrixq import MatrixQuantale, check_matrix_laws, matrix_quantale
from .transforms import (
    CoderClass,
    FreeVector,
    Kernel,
    adjunction_check,
    classify_coder,
    coder_anatomy,
    hom_of_kernel,
    inverse_apply,
    kernel_of_hom,
    projective_kernel,
    transform_apply,
)
from .luk import LUK, LukCoder, basis_value, build_coder, luk_inverse, \
    luk_transform, partition_check
from .codec import (
    BlockScheme,
    CompressedImage,
    Image,
    block_join,
    block_split,
    build_scheme,
    compress,
    image_from_bytes,
    image_to_bytes,
    merge_channels,
    metrics,
    reconstruct,
    requantize,
    scale_image,
    scheme_coder,
    split_channels,
)
from .morphology import (
    PAD,
    TORUS,
    Grid,
    StructuringElement,
    closing,
    composite,
    constant_grid,
    dilate,
    erode,
    opening,
    outline,
    translate,
)
from .ftransform import FuzzyPartition, f_inverse, f_transform, \
    validate_partition
from .formats import (
    container_decode,
    container_encode,
    load_algebra,
    load_index_row,
    load_kernel,
    load_module,
    load_partition,
    load_se,
    load_vector,
    ltb_read,
    ltb_write,
    pnm_decode,
    pnm_encode,
    pnm_read,
    pnm_write,
)

__all__ = [name for name in dir() if not name.startswith("_")]
