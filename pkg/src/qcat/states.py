"""Truncated Fock-space representations of q-deformed coherent and cat states."""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NonNormalizable, NullState
from .qmath import DEFAULT_TOL, DeformationParameter, as_q, q_exponential_parts

KINDS = ("coherent", "cat-even", "cat-odd")
MIN_TRUNCATION = 16
MAX_TRUNCATION = 200_000


@dataclass(frozen=True)
class StateSpec:
    alpha: complex
    q: DeformationParameter
    kind: str = "coherent"

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "q", as_q(self.q))
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")

    @property
    def x(self) -> float:
        """|alpha|^2."""
        return abs(self.alpha) ** 2

    @property
    def parity(self) -> str | None:
        return {"cat-even": "even", "cat-odd": "odd"}.get(self.kind)

    def validate(self):
        check_normalizable(self.alpha, self.q)
        if self.kind == "cat-odd" and self.alpha == 0:
            raise NullState("odd cat state |alpha> - |-alpha> vanishes at alpha = 0")


def check_normalizable(alpha, q):
    qp = as_q(q)
    x = abs(complex(alpha)) ** 2
    if x >= qp.radius:
        raise NonNormalizable(
            f"|alpha|^2 = {x:.6g} >= 1/(1-q^2) = {qp.radius:.6g} for q = {qp.q}"
        )


@dataclass(frozen=True, eq=False)
class TruncatedState:
    """Unit-norm coefficient vector over Fock levels 0..truncation.

    ``tail_residual`` bounds the probability mass of the untruncated state
    above ``truncation``.
    """

    coeffs: np.ndarray
    truncation: int
    tail_residual: float
    spec: StateSpec | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.truncation + 1,):
            raise ValueError("coeffs length must be truncation + 1")

    @property
    def dim(self) -> int:
        return self.truncation + 1

    def norm_sq(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)


def _tail_scale(spec: StateSpec) -> float:
    # cat P_n <= 2 t_n / (E_q(x) (1 +/- R)); 1 +/- R = 2 even/E or 2 odd/E
    if spec.parity is None or spec.x == 0:
        return 1.0
    ev, od, _ = q_exponential_parts(spec.x, spec.q)
    part = ev if spec.parity == "even" else od
    return (ev + od) / part


def _tail_bound(spec: StateSpec, tol: float) -> tuple[int, float]:
    scale = _tail_scale(spec)
    n, bound = _kernels.truncation_level(spec.x, spec.q.q, tol / scale, MAX_TRUNCATION)
    if n < 0:
        raise NonNormalizable(f"no truncation below {MAX_TRUNCATION} levels reaches tol={tol}")
    return int(n), float(bound) * scale


def choose_truncation(spec: StateSpec, tol: float = DEFAULT_TOL, moment_order: int = 0) -> int:
    """Smallest N whose bounded tail mass is <= tol, plus moment_order + 4 padding.

    Never returns less than 16.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if moment_order < 0:
        raise ValueError("moment_order must be >= 0")
    check_normalizable(spec.alpha, spec.q)
    n, _ = _tail_bound(spec, tol)
    return max(MIN_TRUNCATION, n + moment_order + 4)


def _tail_residual(spec: StateSpec, N: int) -> float:
    """Upper bound on the probability mass above level N."""
    if spec.x == 0:
        return 0.0
    amps = _kernels.coherent_amplitudes(abs(spec.alpha), spec.q.q, N + 1)
    t = amps * amps
    ev, od, _ = q_exponential_parts(spec.x, spec.q)
    total = ev + od
    r = spec.x / (1.0 + spec.q.q ** 2 * _q_int(N + 1, spec.q.q))  # x/[N+2]
    if r >= 1.0:
        # ratio test not yet active: bound by the exact remainder of the series
        return max(0.0, 1.0 - float(np.sum(t[: N + 1])) / total) * _tail_scale(spec)
    return float(t[N + 1] / (1.0 - r) / total) * _tail_scale(spec)


def _q_int(n, q):
    return _kernels.q_integer_table(q, n)[n]


def _phases(alpha: complex, N: int) -> np.ndarray:
    theta = cmath.phase(alpha)
    return np.exp(1j * theta * np.arange(N + 1))


def coherent_coefficients(spec: StateSpec, N: int | None = None) -> TruncatedState:
    """Coefficients alpha^n / (sqrt([n]_q!) N_q), normalised over levels 0..N."""
    if spec.kind != "coherent":
        spec = StateSpec(spec.alpha, spec.q, "coherent")
    spec.validate()
    if N is None:
        N = choose_truncation(spec)
    amps = _kernels.coherent_amplitudes(abs(spec.alpha), spec.q.q, N)
    ev, od, _ = q_exponential_parts(spec.x, spec.q)
    c = amps * _phases(spec.alpha, N) / np.sqrt(ev + od)
    c = c / np.linalg.norm(c)
    return TruncatedState(c, N, _tail_residual(spec, N), spec)


def cat_coefficients(spec: StateSpec, N: int | None = None) -> TruncatedState:
    """Even/odd superposition |alpha,f> +/- |-alpha,f>, normalised.

    Forbidden-parity coefficients are exactly zero.

    Raises
    ------
    NullState
        For the odd cat at alpha = 0.
    """
    if spec.parity is None:
        raise ValueError("cat_coefficients needs kind 'cat-even' or 'cat-odd'")
    spec.validate()
    if N is None:
        N = choose_truncation(spec)
    amps = _kernels.coherent_amplitudes(abs(spec.alpha), spec.q.q, N)
    n = np.arange(N + 1)
    keep = (n % 2 == 0) if spec.parity == "even" else (n % 2 == 1)
    ev, od, _ = q_exponential_parts(spec.x, spec.q)
    part = ev if spec.parity == "even" else od
    # N_q^2(+/-) N_q^2(alpha,f) = 2 (E_q(x) +/- E_q(-x)) = 4 * part
    c = np.where(keep, 2.0 * amps, 0.0) * _phases(spec.alpha, N) / np.sqrt(4.0 * part)
    c[~keep] = 0.0
    c = c / np.linalg.norm(c)
    return TruncatedState(c, N, _tail_residual(spec, N), spec)


def build_state(spec: StateSpec, N: int | None = None) -> TruncatedState:
    if spec.kind == "coherent":
        return coherent_coefficients(spec, N)
    return cat_coefficients(spec, N)


def photon_distribution(state: TruncatedState) -> np.ndarray:
    """P_n = |c_n|^2 over the truncated basis."""
    return np.abs(state.coeffs) ** 2
