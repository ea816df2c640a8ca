"""q-deformed coherent and cat states on a truncated Fock space."""
from ._kernels import BACKEND
from .errors import (ConvergenceFailure, DimensionMismatch, DivergentSeries, NoRoot, NonNormalizable,
                     NullState, QcatError, QFactorialOverflow, UndefinedAtVacuum)
from .qmath import (DeformationParameter, QSeriesValue, cat_factor, overlap_ratio, q_exponential,
                    q_exponential_parts, q_factorial, q_integer)
from .reports import DiscrepancyRecord, MomentSet, NumberReport, QuadratureReport
from .states import (StateSpec, TruncatedState, build_state, cat_coefficients, choose_truncation,
                     coherent_coefficients, photon_distribution)

__version__ = "0.1.0"
