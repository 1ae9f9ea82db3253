"""Magic-type arrays and the local antimagic labelings built from them."""

__version__ = "0.1.0"

from .arrays import (
    ArrayKind,
    ArrayShape,
    IntMatrix,
    KotzigMatrix,
    MagicConstants,
    SquareVariant,
    VerificationReport,
    circulant_lift,
    ka_exists,
    kotzig_array,
    magic_rectangle,
    magic_rectangle_set,
    mr_exists,
    mrs_exists,
    nearly_magic_rectangle,
    nmr_exists,
    odd_magic_square,
    quasi_kotzig_array,
    siamese_magic_square,
    verify_array,
)
from .builders import (
    BuildRecipe,
    MatrixFamily,
    Recipe,
    build_b_even_square,
    build_b_mixed_parity,
    build_b_odd_square,
    build_b_same_parity,
    build_mrs_family,
    build_zt_family_bipartite,
    build_zt_family_glued,
    build_zt_family_square,
    modify_mstar,
    shift_scale,
    verify_family,
)
from .errors import BudgetExceeded, ConstructionError, NonexistentDesign, OutOfScope, ShapeMismatch
from .graphs import (
    ChiBounds,
    EdgeLabeling,
    PartiteGraph,
    WeightColoring,
    check_local_antimagic,
    chi_la_bounds,
    label_graph,
    labeling_from_b_matrix,
    labeling_from_matrix_family,
    make_graph,
    path_graph,
    vertex_weights,
)
from .oracle import OracleResult, exact_chi_la, exists_k_class_labeling
