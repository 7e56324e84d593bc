"""Crystal combinatorics for spin multipartitions of the twisted affine algebras A_{2n}^(2)."""

from .cartan import (
    CartanContext,
    FullWeight,
    WeightContent,
    WeightError,
    defect,
    defect_shift,
    degree,
    format_content,
    format_defect,
    format_hub,
    gram,
    hub,
    level,
    make_context,
    null_root_content,
    reflect,
    translate,
    vertex_label,
    weight_in_basis,
)
from .crystal import (
    CrystalGraph,
    VerificationReport,
    generate_crystal,
    verify,
)
from .partitions import (
    ConjectureViolation,
    CornerPartition,
    NodeRun,
    SpinMultipartition,
    TieWarning,
    addable_set,
    corner_layout,
    empty_multipartition,
    hat,
    is_h_restricted,
    is_h_strict,
    multipartition_content,
    removable_set,
    render,
    residue,
)
from .reduced import (
    ReducedCrystal,
    TruncatedStringError,
    generate,
    in_max_lambda,
    path_count,
    path_counts,
    slice_vertices,
    string_through,
    weyl_orbit,
)
from .signature import (
    MINUS,
    PLUS,
    PLUSMINUS,
    Signature,
    SignatureSymbol,
    apply_e,
    apply_f,
    build_signature,
    epsilon,
    phi,
    reduce_with_order,
)
from .signature import reduce as reduce_signature

__version__ = "0.1.0"
