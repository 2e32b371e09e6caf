"""Exact q-series solutions of the differential equation

    f'' - ((k+1)/6) E2 f' + (k(k+1)/12) E2' f = 0,   ' = q d/dq,

for integral and half-integral weights k.
"""

from .errors import *  # noqa: F401,F403
from .qseries import QSeries, dumps, loads
from .forms import FORM_IDS, alternate, catalog
from .operators import kz_apply, kz_operator, kz_sharp_apply, rc_bracket, serre
from .solutions import (ResidueClass, ascend_ladder, classify_weight, descend,
                        frobenius_solve, known_solution, ladder_seed, pq_polynomials,
                        quasimodular_solution, solve_cuspidal, solve_normalized,
                        verify_delta_twist, verify_family)
from .analysis import (check_positivity, decompose_quasimodular, expand_in_inv_j,
                       identity_suite)

__version__ = "0.1.0"
