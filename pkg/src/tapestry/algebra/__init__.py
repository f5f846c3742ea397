"""Exact arithmetic: F_p, matrices over F_p, SL(2, F_p), Laurent polynomials."""

from .field import FieldElem, ModulusMismatch, check_prime, inverse_mod, is_prime
from .laurent import LaurentPoly, equal_up_to_unit, laurent_canonicalize, laurent_divides
from .matrix import FFMatrix, SingularMatrix, matrix_arithmetic
from .polymat import LaurentMatrix, cofactor_det, polymatrix_det
from .sl2 import (MAX_TABLE_ORDER, SL2, ConjClass, ConjClassTable, TableTooLarge, conjugacy_partition,
                  sl2_elements, sl2_group)

__all__ = [
    "FieldElem", "ModulusMismatch", "check_prime", "inverse_mod", "is_prime",
    "LaurentPoly", "equal_up_to_unit", "laurent_canonicalize", "laurent_divides",
    "FFMatrix", "SingularMatrix", "matrix_arithmetic",
    "LaurentMatrix", "cofactor_det", "polymatrix_det",
    "SL2", "MAX_TABLE_ORDER", "TableTooLarge", "ConjClass", "ConjClassTable", "conjugacy_partition",
    "sl2_elements", "sl2_group",
]
