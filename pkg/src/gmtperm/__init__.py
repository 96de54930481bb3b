"""Generalized Moebius transformations over finite field towers and the
homogeneous permutation polynomials built from them."""

from .errors import *  # noqa: F401,F403
from .field import FieldCtx, FieldElem, Level, make_field_tower
from .gmt import GmtContext, gmt_context
from .hirschfeld import counts, hirschfeld_map, list_subprimitive, subprimitive_root
from .linalg import FFMatrix, det_and_cofactors, dual_basis, moore_matrix
from .permpoly import (
    PiecewisePermutation,
    Thm37Params,
    build_from_bijection,
    construct_prop312,
    construct_thm36,
    construct_thm37,
    construct_thm310,
    index_decompose,
    interpolate_univariate,
    verify_agw,
    verify_homogeneous,
    verify_permutation,
)
from .poly import UniPoly
from .projective import PGMap, ProjPoint, check_pg_map, enumerate_pg

__version__ = "0.1.0"
