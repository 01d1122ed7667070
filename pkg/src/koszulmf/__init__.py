"""Exact homological algebra for Koszul dg modules and matrix factorizations.

The layers, bottom up: exact rings and matrices, Smith normal form,
perfect complexes with homology, Koszul algebras, dg modules over them,
the amplitude reduction, and the two-periodic matrix factorization side.
"""

from .rings import Ring, RingElement, RingError, ring_join, elem_divmod
from .matrices import (Matrix, hstack, vstack, block_matrix, block_diagonal,
                       permutation_matrix)
from .smith import (smith_normal_form, smith_with_inverses, smith_diagonal,
                    matrix_rank, solve_linear)
from .complexes import (PerfectComplex, ChainMorphism, ComplexError,
                        validate_complex, validate_chain_morphism,
                        shift_complex, cone_complex, direct_sum_complex,
                        tensor_complex, euler_characteristic,
                        HomologyGroup, homology, homology_all,
                        is_quasi_isomorphism)
from .koszul import KoszulAlgebra, koszul_algebra, koszul_product
from .modules import (KoszulModule, KoszulMorphism, ModuleError, validate,
                      validate_morphism, cone, shift_module,
                      direct_sum_module, tensor_with_koszul, phi_morphism,
                      commutator_check, box_tensor, unit_module)
from .reduction import ReductionStep, reduce_once, reduce, certify_step
from .mf import (MatrixFactorization, MFMorphism, MFError, mf_validate,
                 delta, mf_shift, mf_cone, mf_tensor, fold, fold_morphism,
                 unfold, unfold_morphism, swap_periodicity,
                 sing_cone_formula, contraction_witness, is_contractible)
from .reports import Check, Report

__all__ = [name for name in dir() if not name.startswith("_")]
