"""Windowed Fourier analysis on non-abelian groups.

Exact engine for small finite groups (complete unitary duals, Plancherel
weights, noncommutative Fourier and windowed transforms with energy,
orthogonality and inversion identities), plus numerical engines for the
Heisenberg group and the SL(2,R) principal series.
"""

from .groups import (
    FiniteGroup,
    Signal,
    build_cyclic,
    build_dihedral,
    build_heisenberg_mod,
    build_quaternion,
    catalog,
    convolve,
    involution,
    left_translate,
    right_translate,
    verify_axioms,
)
from .irreps import (
    AtlasReport,
    PlancherelAtlas,
    UnitaryIrrep,
    dual_of,
    matrix_element,
    verify_atlas,
)
from .fourier import (
    OperatorField,
    fourier_transform,
    inverse_fourier,
    plancherel_inner,
    plancherel_norm2,
)
from .gabor import (
    GaborField,
    ModulatedWindow,
    cross_gram_matrix,
    factorization_defect,
    frame_adjoint,
    gabor_adjoint_block,
    gabor_transform,
    gabor_via_fourier,
    identity_resolution_matrix,
    modulate,
    pairing,
    reconstruct,
    sigma_inner,
    sigma_norm2,
    tensor_apply,
)

__version__ = "0.1.0"
