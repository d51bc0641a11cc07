"""Finite-field toolkit for certifying recursive Kummer-type tower equations."""

__version__ = "0.1.0"

from .gf import (ContextMismatch, EmbeddingMap, FieldCtx, FieldElement, embed,
                 enumerate_elements, in_subfield, make_embedding,
                 make_extension, make_prime_field)
from .poly import (BudgetExceeded, Poly, RootSet, all_roots, compose_linear,
                   distinct_roots_in, factor_degree_profile, find_embedding,
                   is_separable, poly_add, poly_divmod, poly_gcd, poly_mul,
                   poly_scale)
from .parsing import ParseError, parse_element, parse_poly
from .tower import (ClosureLimits, ClosureResult, ClosureStatus,
                    DegenerateBound, EquivalenceKey, KummerSpec,
                    RecursionSpec, ShapeError, SplitCheck, TowerReport,
                    canonical_key, certify, check_splitting,
                    closure_transform_check, compute_closure, lambda_bound,
                    places_lower_bound, sigma, to_recursion, transform,
                    verify_equivalence)
from .search import (ClassEntry, Partition, SearchConfig, SearchOutcome,
                     classify_new, enumerate_candidates, run_search)

__all__ = [name for name in dir() if not name.startswith("_")]
