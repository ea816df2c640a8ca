"""q-integers, q-factorials and the q-exponential series.

All series are summed with an explicit geometric tail bound. For q < 1 the
q-exponential has the finite radius of convergence ``1/(1-q^2)`` and any
argument on or beyond it raises :class:`~qcat.errors.DivergentSeries`.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DivergentSeries, QFactorialOverflow

DEFAULT_TOL = 1e-14
MAX_TERMS = 2_000_000
PRODUCT_TERMS = 5_000_000
_ATANH_SPLIT = 1e-5


@dataclass(frozen=True)
class DeformationParameter:
    """Deformation q in (0, 1] together with its derived quantities."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (0.0 < q <= 1.0) or math.isnan(q):
            raise ValueError(f"q must lie in (0, 1], got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def tau(self) -> float:
        return math.log(self.q)

    @property
    def radius(self) -> float:
        """Radius of convergence of E_q, i.e. lim [n]_q."""
        if self.q == 1.0:
            return math.inf
        return 1.0 / (1.0 - self.q * self.q)

    def __float__(self):
        return self.q


def as_q(q) -> DeformationParameter:
    if isinstance(q, DeformationParameter):
        return q
    return DeformationParameter(q)


@dataclass(frozen=True)
class QSeriesValue:
    value: float
    terms_used: int
    tail_bound: float
    converged: bool


def q_integer(n: int, q) -> float:
    """[n]_q = 1 + q^2 + ... + q^(2(n-1)), exactly n at q = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    q2 = as_q(q).q ** 2
    acc = 0.0
    for _ in range(n):
        acc = 1.0 + q2 * acc
    return acc


class _FactorialTable:
    """Per-q table of [n]_q!, grown on demand under a lock.

    Readers only ever see a fully written prefix: the table is replaced by
    a new array rather than resized in place.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[float, np.ndarray] = {}

    def get(self, n: int, q: float) -> float:
        table = self._tables.get(q)
        if table is not None and n < table.size:
            return float(table[n])
        with self._lock:
            table = self._tables.get(q)
            if table is None or n >= table.size:
                size = max(n + 1, 2 * (table.size if table is not None else 16))
                table = self._build(size, q)
                self._tables[q] = table
        value = float(table[n])
        if math.isinf(value):
            first = int(np.argmax(np.isinf(table)))
            raise QFactorialOverflow(first, q)
        return value

    @staticmethod
    def _build(size, q):
        qint = _kernels.q_integer_table(q, size - 1)
        out = np.empty(size)
        out[0] = 1.0
        acc = 1.0
        with np.errstate(over="ignore"):
            for k in range(1, size):
                acc = acc * qint[k]
                out[k] = acc
        out.flags.writeable = False
        return out


_factorials = _FactorialTable()


def q_factorial(n: int, q) -> float:
    """[n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.

    Raises
    ------
    QFactorialOverflow
        If the product leaves the float64 range; ``exc.n`` is the first
        offending index.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return _factorials.get(n, as_q(q).q)


def _check_domain(x: float, qp: DeformationParameter):
    if qp.q < 1.0 and abs(x) >= qp.radius:
        raise DivergentSeries(
            f"|x| = {abs(x):.6g} >= 1/(1-q^2) = {qp.radius:.6g} for q = {qp.q}"
        )


def q_exponential_parts(x: float, q, tol: float = DEFAULT_TOL) -> tuple[float, float, QSeriesValue]:
    """Even- and odd-power parts of E_q(x).

    The two parts are each single-signed, so ratios built from them (such
    as the cat-state factor F) avoid the cancellation of E_q(-x).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    qp = as_q(q)
    x = float(x)
    _check_domain(x, qp)
    ev, od, n, tail, ok = _kernels.q_exp_series(x, qp.q, tol, MAX_TERMS)
    return ev, od, QSeriesValue(ev + od, int(n), float(tail), bool(ok))


def q_exponential(x: float, q, tol: float = DEFAULT_TOL) -> QSeriesValue:
    """E_q(x) = sum_n x^n / [n]_q!.

    ``converged`` is true once the geometric tail bound is at most ``tol``.

    For x < 0 the value is formed as ``E_q(|x|) * R(|x|)`` rather than from
    the cancelling alternating sum.

    Raises
    ------
    DivergentSeries
        If q < 1 and |x| >= 1/(1-q^2).
    """
    ev, od, series = q_exponential_parts(x, q, tol)
    if x < 0:
        # The alternating sum is only accurate to ~eps * E_q(|x|). Since
        # R(y) = E_q(-y)/E_q(y), E_q(-y) = E_q(y) R(y) keeps full relative
        # precision; the literal series still supplies the term count and
        # tail bound.
        y = -float(x)
        evp, odp, _ = q_exponential_parts(y, q, tol)
        value = (evp + odp) * overlap_ratio(y, q, tol)
        return QSeriesValue(value, series.terms_used, series.tail_bound, series.converged)
    return series


def overlap_ratio(x: float, q, tol: float = DEFAULT_TOL) -> float:
    """R(x) = E_q(-x) / E_q(x), the overlap <alpha,f|-alpha,f> at x = |alpha|^2.

    ``(even - odd)/(even + odd)`` loses all relative precision once R drops
    below about 1e-16, so for q < 1 the ratio comes from the product
    ``E_q(x) = prod_k 1/(1 - z_k)``, ``z_k = (1 - q^2) x q^(2k)``, giving
    ``log R = -2 sum_k atanh(z_k)``. Factors with ``z_k < 1e-5`` are summed
    in closed form through the odd powers of the atanh series. At q = 1 the
    result is ``exp(-2x)``.
    """
    if x < 0:
        raise ValueError("overlap_ratio expects x = |alpha|^2 >= 0")
    qp = as_q(q)
    x = float(x)
    _check_domain(x, qp)
    if x == 0.0:
        return 1.0
    if qp.q == 1.0:
        return math.exp(-2.0 * x)
    log_q2 = 2.0 * math.log(qp.q)
    c = -math.expm1(log_q2) * x
    K = max(0, math.ceil(math.log(_ATANH_SPLIT / c) / log_q2)) if c > _ATANH_SPLIT else 0
    if K > PRODUCT_TERMS:
        ev, od, _ = q_exponential_parts(x, qp, tol)
        return (ev - od) / (ev + od)
    head = np.arctanh(c * np.exp(log_q2 * np.arange(K))) if K else np.zeros(0)
    zK = c * math.exp(log_q2 * K)
    # sum_{k>=K} z_k^j = zK^j / (1 - q^(2j))
    tail = [zK ** j / (j * -math.expm1(j * log_q2)) for j in (1, 3, 5, 7)]
    return math.exp(-2.0 * math.fsum(list(head) + tail))


def overlap_ratio_literal(x: float, q, tol: float = DEFAULT_TOL) -> float:
    """E_q(-2x) summed literally at argument -2x; diverges for 2x >= radius."""
    return q_exponential(-2.0 * x, q, tol).value


def cat_factor(x: float, q, parity: str, tol: float = DEFAULT_TOL) -> float:
    """F = (1 -/+ R)/(1 +/- R) evaluated as odd/even or even/odd parts of E_q(x)."""
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    ev, od, _ = q_exponential_parts(x, q, tol)
    if parity == "even":
        return od / ev
    return ev / od
