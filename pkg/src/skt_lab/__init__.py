"""Hermitian invariants of almost abelian Lie algebras.

Exact rational computation of the SKT, twisted SKT, LCSKT, Kahler,
balanced, LCB and Bismut-Ricci-flat conditions, their metric-free
existence tests, and the six-dimensional classification tables.
"""

from .linalg import ConsistencyError, DEFAULT_TOL, DimensionError, DomainError
from .forms import InvariantForm, ce_d, codifferential, hodge_star, pullback, wedge
from .liealg import (
    AlmostAbelianData, IntegrabilityError, LieAlgebra, build_from_data, canonical_j,
    canonical_j1, extract_data, jacobi_check, unimodular_check,
)
from .hermitian import (
    HermitianStructure, bismut_ricci, bismut_ricci_direct, bismut_torsion,
    is_integrable, lee_form, nijenhuis,
)
from .verdicts import AlphaSpace, StructureVerdict, solve_alpha, verdict
from .spectral import (
    ExistenceReport, MetricFamilyElement, classify, construct_alpha,
    construct_normalizing_metric, exists_brf, exists_kahler, exists_lcb,
    exists_lcskt, exists_twisted_skt, family_metric, table1_row,
)
from .notation import NotationError, emit_report, format_notation, parse_form, parse_notation
from .catalog import load_catalog, match_shape, verify_entry

__version__ = "0.1.0"
