"""Magnetic equivariant K-theory of finite G-CW complexes.

Classification of irreducible corepresentations, coefficient groups of
(twisted) magnetic K-theory at orbits, and an Atiyah-Hirzebruch spectral
sequence driver with user-supplied higher differentials.
"""

from .abelian import AbMorphism, FgAbelianGroup, cokernel, kernel, smith_normal_form, subquotient
from .ahss import (
    Cell,
    DifferentialOverride,
    ExtensionAssertion,
    GCWComplex,
    Incidence,
    apply_overrides,
    d1,
    e1_page,
    graded_k_report,
    run_ahss,
    turn_page,
    validate_complex,
)
from .coefficients import (
    BuiltinTables,
    CoefficientRow,
    Twist,
    orbit_coefficients,
    periodicity,
    point_coefficients,
    restriction_map,
)
from .corep import (
    MagneticIrrep,
    MagneticRepRing,
    RepType,
    classify_magnetic_irreps,
    decompose,
    frobenius_check,
    induce,
    twisted_irreps,
    wigner_construct,
)
from .groups import CentralExtension, FiniteGroup, MagneticGroup, extension_splits, pullback_extension

__version__ = "0.1.0"
