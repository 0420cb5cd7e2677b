"""Quadratic and symmetric bilinear forms over commutative semirings."""
from .semiring import (BOOL, FINITE_CATALOG, MAXPLUS, NAT, NEG_INF, SUPERTROPICAL, Check,
                       FiniteSemiring, FlagReport, ProductSemiring, Scalar, ScalarParseError,
                       Semiring, SemiringMismatch, axioms_check, catalog, from_descriptor,
                       has_nql, pair_quasilinear, try_invert)
from .modules import (BaseGuarantee, BaseReport, BasicSubmodule, FreeModule, ModuleMismatch,
                      Vector, basic_lattice, is_generalized_permutation, support,
                      unique_base_guarantee, verify_base)
from .forms import (AsymmetricGram, Expansion, FormError, FormPredicates, GramMatrix,
                    QuadraticScheme, alternate_part, balanced_companion, block_sum,
                    eval_bilinear, eval_quadratic, is_companion, make_expansion, norm_form,
                    permute_form, predicates, quasiminimal_reduce)
from .graphs import BaseGraph, ParityReport, parity_report
from .decomposition import (BasePartition, base_graph_bilinear, base_graph_quadratic,
                            check_refinement_maximal, decompose, verify_orthogonality)
from .isometry import (IsometryError, IsometryWitness, MultiplicityMap, PreconditionError,
                       isometric_by_multiplicity, isometry_search, multiplicities,
                       orthogonal_group, witt_cancel)
from .tensor import (ProductBase, expansion_independence_check, tensor_bilinear,
                     tensor_quadratic, tensor_vectors)
from .indecomposability import (TensorPrediction, full_tensor_analysis, oracle_crosscheck,
                                predict_bilinear_tensor, predict_quadratic_tensor)
from .kernels import BACKEND

__version__ = "0.1.0"
