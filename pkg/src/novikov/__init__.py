"""Exact-arithmetic toolkit for Novikov structures on finite-dimensional Lie algebras."""

from .core import (Algebra, CheckReport, NovikovStructure, Operator, Q,
                   associator, check_compatibility, check_left_symmetric,
                   check_lie, check_novikov, check_operator_identity, left_mult,
                   multiply, right_mult, ad)
from .subspaces import (Subspace, SeriesReport, bracket_space, center,
                        derived_series, is_left_ideal, is_right_ideal,
                        is_two_sided_ideal, lower_central_series, product_space,
                        quotient, span, upper_central_series)
from .constructions import (NamedAlgebra, abelian, counterexample_13,
                            filiform_f910, free_3step_lie, make_algebra,
                            novikov_f910, novikov_free_3step,
                            novikov_strictly_upper, standard_filiform,
                            strictly_upper_triangular, upper_triangular)
from .solver import (NonexistenceCertificate, ProveResult, grading_zeros,
                     prove, setup, verify_certificate)

__all__ = [name for name in dir() if not name.startswith("_")]
