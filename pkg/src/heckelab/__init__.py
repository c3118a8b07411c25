"""heckelab: exact-arithmetic Hecke algebras at desk scale.

Subpackages by concern: exact arithmetic (poly, zfactor, algnum, numfield),
finite-group Hecke algebras (groups, hecke), module decomposition
(modules), the Satake-side classification (satake), and the CLI surface
(jsonio, cli).
"""

__version__ = "0.1.0"

from .algnum import (
    AlgebraicNumber,
    IntervalQ,
    Rect,
    algnum_arith,
    algnum_equal,
    conjugates,
)
from .groups import (
    FiniteGroup,
    HaarMeasure,
    Subgroup,
    a4,
    c6,
    cyclic_group,
    d4,
    q8,
    s3,
    s4,
    symmetric_group,
)
from .hecke import (
    DoubleCosetBasis,
    GroupModule,
    HeckeAlgebra,
    HeckeElement,
    LeftIdeal,
    annihilator_ideal,
    brute_structure_constants,
    build_hecke,
    character_kernel_ideal,
    construct_V,
    construct_W,
    convolve_cosets,
    double_cosets,
    end_restriction_report,
    index_character,
    m_count,
)
from .modules import (
    Commutant,
    Decomposition,
    FinDimAlgebra,
    HeckeModule,
    annihilator,
    base_change,
    commutant,
    hom_space,
    is_irreducible,
    modules_isomorphic,
    regular_module,
    split_semisimple,
)
from .numfield import (
    FieldElement,
    FieldEmbedding,
    NumberField,
    distinguished_embedding,
    embeddings,
    extend_field,
    factor_over_field,
    primitive_element,
    relative_minpoly,
    tensor_split,
)
from .poly import Polynomial, QQ, poly_mul
from .satake import (
    BaseChangeReport,
    OrbitSum,
    RootDatum,
    SphericalElement,
    TorusPoint,
    UnramifiedClass,
    base_change_table,
    classify,
    evaluate,
    generating_orbit_sums,
    maximal_ideal_variety,
    preset_datum,
    residue_field,
    same_class,
    spherical_mul,
    weyl_orbit,
)
from .zfactor import factor_over_Q
