"""Exact-arithmetic torsion tensors, equation systems, and classification of
zero-torsion maps and integrable complex structures on low-dimensional real
Lie algebras."""

from .errors import (
    AssignmentError,
    DimensionError,
    IntegrabilityError,
    IrrationalScaleError,
    OrbitError,
    ParameterError,
    PreconditionError,
    RankError,
    SearchError,
    SingularityError,
    StructureError,
    TorsionLabError,
)
from .exact_linalg import (
    GaussianRational,
    Matrix,
    MatrixQ,
    MatrixQi,
    char_poly,
    invert,
    kernel,
    similar_2x2,
)
from .lie_algebra import (
    BUILTIN_ALGEBRAS,
    ComplexLieAlgebra,
    LieAlgebra,
    abelian,
    algebra_from_json,
    algebra_to_json,
    bracket,
    change_basis,
    complexify,
    direct_product,
    heisenberg3,
    jacobi_check,
    nxn,
    sl2_H,
    sl2_Y,
    sl2xsl2,
    subalgebra_closed,
)
from .torsion import (
    ComplexSubalgebra,
    LinearMapOnAlgebra,
    associated_subalgebra,
    has_zero_torsion,
    is_abelian_structure,
    is_complex_structure,
    torsion_tensor,
)
from .symbolic_torsion import (
    PolyQ,
    SL2_Y_PATTERN,
    TorsionSystem,
    entries_of,
    entry_name,
    evaluate_system,
    generate_system,
    heisenberg_reference_system,
    sl2_H_reference_system,
    sl2_Y_reference_system,
    system_matches_paper,
    verify_case_contradictions,
)
from .automorphism import (
    AdOrbit,
    AutomorphismElement,
    FullOrbit,
    Kind,
    OrbitClass,
    ad_matrix,
    ad_matrix_y,
    aut_n_generic,
    classify_orbit,
    conjugate,
    gamma,
    is_automorphism,
    orbit_representative,
    orbit_transporter,
    product_automorphism,
    psi0,
    theta,
)
from .classification import (
    CanonicalForm,
    ClassificationResult,
    Family,
    build_canonical,
    classify_factor_blocks,
    classify_n,
    classify_sl2,
    embed_factor_maps,
    equivalent_n,
    equivalent_sl2,
    factor_blocks,
    mixed_type_search,
    product_equivalence_check,
    second_kind_partner,
    second_kind_witness,
)
from .cr import (
    CRStructure,
    ExtensionVerdict,
    Obstruction,
    abelian_cr_form_n,
    canonical_cr_forms_n,
    cr_extension_verdict,
    is_valid_cr,
)
from .sampling import Sampler
from .cli import ReproductionReport, reproduce_paper, run

__version__ = "0.1.0"
