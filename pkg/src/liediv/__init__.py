"""Exact computer algebra for free Lie algebra calculus: cyclic trace
quotients, the divergence / super-divergence / q-divergence cocycles on
tangential derivations, Grothendieck-Teichmuller and Kashiwara-Vergne
membership tests, and the depth-2 kernel dimension tables.
"""

__version__ = "0.1.0"

from .exactla import (CycloNum, CyclotomicField, ExactMatrix, Rational,
                      cyclotomic_field, format_scalar, nullspace, rank_of,
                      solve)
from .freealg import (NcPoly, component, format_poly, nc_mul, nc_substitute,
                      partial, poly_terms_json, weight_cap)
from .lie import (LieElem, ad_power, bracket, dynkin, is_lie, lie_substitute,
                  lyndon_basis, lyndon_words, parse_lie, soule, witt_number)
from .traces import TraceElem, canonical_rotation, qtr_project, trace_act
from .tder import (KrvReport, TDer, div, ihara, krv_check, krvprime_check,
                   krvprime_transform, nu, qdiv, sdiv, tder_apply,
                   tder_bracket)
from .grt import (GrtSolution, T4Elem, grt_check, grt_solve, t4_bracket,
                  t4_embed)
from .depth2 import (chi13_multiplicity, d12_characters, d12_group_check,
                     d12_matrix, depth2_basis, dims_row, f_seq, kernel_dim,
                     poly_space_dim)
