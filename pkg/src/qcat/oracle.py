"""Brute-force Fock-space evaluation of every observable.

Nothing here calls :mod:`qcat.observables` formulas: states are built as
coefficient vectors, operators as dense matrices, and every expectation is
a matrix-vector product followed by an inner product. Agreement between
the two modules is therefore evidence rather than tautology.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .reports import DiscrepancyRecord, MomentSet, NumberReport, QuadratureReport
from .operators import LadderSet, build_ladder_set
from .qmath import as_q
from .states import StateSpec, TruncatedState, build_state, choose_truncation, coherent_coefficients

GRID_Q = (0.5, 0.8, 0.9, 0.99, 1.0)
GRID_ALPHA = (0.3, 0.8, 1.5, 2.1)
GRID_KINDS = ("coherent", "cat-even", "cat-odd")
NEAR_ZERO = 1e-6


def default_grid(qs=GRID_Q, alphas=GRID_ALPHA, kinds=GRID_KINDS):
    """(q, alpha, kind) points with |alpha|^2 < radius(q) and no odd cat at alpha = 0."""
    out = []
    for q, a, kind in itertools.product(qs, alphas, kinds):
        if abs(a) ** 2 >= as_q(q).radius:
            continue
        if kind == "cat-odd" and a == 0:
            continue
        out.append((float(q), complex(a), kind))
    return out


@dataclass
class OracleConfig:
    tol: float = 1e-15
    grid: list = field(default_factory=default_grid)
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.rel_tol < self.tol:
            raise ValueError("rel_tol must be >= tol")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


def expectation(state: TruncatedState, M: np.ndarray) -> complex:
    """<psi|M|psi> over the truncated coefficients."""
    c = state.coeffs
    if M.shape != (c.size, c.size):
        raise DimensionMismatch(f"state dim {c.size} vs operator {M.shape}")
    return complex(np.vdot(c, M @ c))


def oracle_state(spec: StateSpec, tol: float = 1e-15, pad: int = 8) -> TruncatedState:
    """Padded truncated state for brute-force moments."""
    N = choose_truncation(spec, tol, moment_order=pad)
    return build_state(spec, N)


def oracle_moments(state: TruncatedState, ladders: LadderSet) -> MomentSet:
    """All seven moments from repeated matrix application.

    The fourth moment is ``||A^dag (A psi)||^2`` so that only two ladder
    applications touch the raw state.
    """
    c = state.coeffs
    if ladders.dim != c.size:
        raise DimensionMismatch(f"state dim {c.size} vs ladders {ladders.dim}")
    Ac = ladders.A @ c
    Adc = ladders.A_dag @ c
    AAc = ladders.A @ Ac
    AdAdc = ladders.A_dag @ Adc
    Ad_Ac = ladders.A_dag @ Ac
    return MomentSet(
        mean_A=complex(np.vdot(c, Ac)),
        mean_Adag=complex(np.vdot(c, Adc)),
        mean_AA=complex(np.vdot(c, AAc)),
        mean_AdagAdag=complex(np.vdot(c, AdAdc)),
        mean_AdagA=float(np.vdot(Ac, Ac).real),
        mean_AAdag=float(np.vdot(Adc, Adc).real),
        mean_AdagAAdagA=float(np.vdot(Ad_Ac, Ad_Ac).real),
    )


def oracle_quadratures(state: TruncatedState, ladders: LadderSet) -> QuadratureReport:
    c = state.coeffs
    Xc = ladders.X @ c
    Yc = ladders.Y @ c
    mx = np.vdot(c, Xc).real
    my = np.vdot(c, Yc).real
    var_X = float(np.vdot(Xc, Xc).real - mx * mx)
    var_Y = float(np.vdot(Yc, Yc).real - my * my)
    comm = np.vdot(Xc, Yc) - np.vdot(Yc, Xc)        # <[X, Y]>, X and Y Hermitian
    G = 0.5 * abs(comm)
    rhs = G * G
    lhs = var_X * var_Y
    return QuadratureReport(
        var_X=var_X, var_Y=var_Y, G_q=float(G),
        gur_lhs_sq=lhs, gur_rhs_sq=float(rhs),
        y_squeezed=bool(var_Y < G), gur_satisfied=bool(lhs >= rhs - 1e-12),
    )


def oracle_overlap(spec: StateSpec, N: int) -> float:
    """<alpha,f|-alpha,f> as a coefficient inner product."""
    plus = coherent_coefficients(StateSpec(spec.alpha, spec.q, "coherent"), N)
    minus = coherent_coefficients(StateSpec(-spec.alpha, spec.q, "coherent"), N)
    return float(np.vdot(plus.coeffs, minus.coeffs).real)


def oracle_number_report(state: TruncatedState, ladders: LadderSet) -> NumberReport:
    """Deformed-number statistics (A^dag A) by brute force.

    Brute force has a single answer, so the ``_paper`` fields simply repeat
    the derived ones; this keeps field-by-field comparison uniform.
    """
    c = state.coeffs
    Ac = ladders.A @ c
    NAc = ladders.A_dag @ Ac
    mean = float(np.vdot(Ac, Ac).real)
    var = float(np.vdot(NAc, NAc).real) - mean * mean
    Q = var / mean - 1.0
    spec = state.spec
    x = spec.x if spec is not None else float("nan")
    if spec is not None and spec.x > 0:
        R = oracle_overlap(spec, state.truncation)
    else:
        R = 1.0
    F = mean / x if x else float("nan")
    return NumberReport(mean_n=mean, var_n_paper=var, var_n_derived=var,
                        mandel_paper=Q, mandel_derived=Q, F=F, R=R)


def bare_number_stats(state: TruncatedState) -> tuple[float, float, float]:
    """(mean, variance, Mandel) of the bare number operator from P_n."""
    p = np.abs(state.coeffs) ** 2
    n = np.arange(p.size)
    mean = float(np.sum(n * p))
    var = float(np.sum(n * n * p)) - mean * mean
    return mean, var, var / mean - 1.0


def _scalar(v):
    if v is None or isinstance(v, (bool, np.bool_)):
        return None
    if isinstance(v, complex):
        return v
    return float(v)


def _oracle_field(name: str, oracle_fields: dict) -> str:
    if "paper" not in name:
        return name
    derived = name.replace("_paper", "_derived")
    return derived if derived in oracle_fields else name.replace("_paper", "")


def compare(closed, oracle, cfg: OracleConfig | None = None, context: str = "") -> list[DiscrepancyRecord]:
    """One DiscrepancyRecord per scalar field of ``closed``.

    Fields named ``*_paper*`` are checked against the oracle's derived
    counterpart and tagged ``variant='paper'``; callers report but do not
    fail on them. Complex fields give separate ``.re`` and ``.im`` records.
    Quantities with oracle magnitude below 1e-6 are judged on abs_tol.
    """
    cfg = cfg or OracleConfig(grid=[])
    records = []
    oracle_fields = oracle.as_dict()
    for name, cv in closed.as_dict().items():
        cv = _scalar(cv)
        ov = _scalar(oracle_fields.get(_oracle_field(name, oracle_fields)))
        if cv is None or ov is None:
            continue
        variant = "paper" if "paper" in name else "derived"
        if isinstance(cv, complex) or isinstance(ov, complex):
            cv, ov = complex(cv), complex(ov)
            parts = [(name + ".re", cv.real, ov.real), (name + ".im", cv.imag, ov.imag)]
        else:
            parts = [(name, cv, ov)]
        for pname, a, b in parts:
            abs_gap = abs(a - b)
            scale = abs(b)
            if scale > 0:
                rel_gap = abs_gap / scale
            else:
                rel_gap = 0.0 if abs_gap == 0 else math.inf
            ok = abs_gap <= cfg.abs_tol if scale < NEAR_ZERO else rel_gap <= cfg.rel_tol
            records.append(DiscrepancyRecord(pname, float(a), float(b), abs_gap, rel_gap,
                                             variant, bool(ok), context))
    return records
