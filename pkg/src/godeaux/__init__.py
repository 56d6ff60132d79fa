"""Exact linear systems of singular plane curves and double cover invariants.

The library builds linear systems of plane curves with prescribed
(infinitely near) singularities over exact coefficient fields, solves and
certifies them, verifies the singularity scheme of explicit curves, and
computes the numerical invariants and torsion criteria of the associated
double covers.  The `godeaux` console script exposes the main entry points.
"""

__version__ = "0.1.0"

from .fields import QQ, FieldError, FunctionField, NumberField, PrimeField
from .linalg import ExactMatrix, kernel_basis, matrix_rank, z2_kernel
from .unipoly import UniPoly, resultant, squarefree_part
from .curves import PlaneCurve, ProjInvolution, eigen_split, normalize_integer
from .singular import (ProjPoint, SingChain, SchemeItem, Scheme, SchemeError,
                       Tangent)
from .linsys import (LinearSystem, ParamScheme, rank_drop_locus,
                     scheme_closure, solve_with_free_tangent)
from .verify import (absolute_factor_count, chain_verify, geometric_genus,
                     multiplicity_at, singular_locus_scan)
from .surfaces import (DivisorClass, DuValConfig, beauville_tors2,
                       campedelli_obstruction, canonical_resolution,
                       cross_check_resolution, divisor_selfcheck,
                       duval_torsion, intersect, pg_adjoint)
