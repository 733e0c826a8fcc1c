"""Schur multiple zeta values of skew type, their duality and Ohno relations."""
from .duality import (
    DualResult,
    Report,
    StructuralError,
    column_pieces,
    dual_tableau,
    is_dualizable,
    ohno_product,
    ohno_schur,
    verify_duality,
    verify_lemma31,
    verify_ohno,
)
from .jacobi_trudi import JtEntry, determinant_symbolic, jt_eval, jt_matrix
from .mzv import (
    AdmissiblePiece,
    MzvResult,
    NotAdmissibleError,
    decompose_pieces,
    dual_index,
    expand,
    ohno_sum_classical,
    zeta_mzv,
)
from .rims import RimDecomposition, e_pattern_types, enumerate_e_rim_decompositions, lemma31_rhs, theta_reading
from .shapes import Cell, Partition, SkewShape, conjugate
from .ssyt import RegionError, enumerate_ssyt, zeta_schur_direct
from .tableaux import Tableau, TableauError, diag_orbit, in_convergence_region, is_diagonal_constant, parse_tableau

__version__ = "0.1.0"
