"""Numeric inner loops.

Every kernel exists twice: a loop version written in the numba-compatible
subset (compiled with ``numba.njit`` when numba is importable) and a
vectorised pure-numpy version. Which one the rest of the package calls is
decided once at import time:

* ``QCAT_DISABLE_NUMBA=1`` in the environment forces the numpy path;
* otherwise numba is used when it can be imported.

Both versions stay importable under explicit names (``*_loop``, ``*_jit``,
``*_numpy``) so tests can compare them and ``benchmarks/`` can time them.
"""
import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
NUMBA_DISABLED = os.environ.get("QCAT_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED

_jit_kwargs = {"nogil": True, "cache": True}


def _jit(fn):
    if HAVE_NUMBA:
        return numba.njit(**_jit_kwargs)(fn)
    return None


def q_integer_table(q, n_max):
    """[0]_q .. [n_max]_q via the recurrence [n+1]_q = 1 + q^2 [n]_q."""
    out = np.empty(n_max + 1)
    q2 = q * q
    acc = 0.0
    out[0] = 0.0
    for n in range(1, n_max + 1):
        acc = 1.0 + q2 * acc
        out[n] = acc
    return out


# ---------------------------------------------------------------------------
# q-exponential series, split by parity of the power
# ---------------------------------------------------------------------------

def q_exp_series_loop(x, q, tol, max_terms):
    """Sum x^n / [n]_q! separately over even and odd n.

    Returns ``(even, odd, terms_used, tail_bound, converged)``. The tail
    bound is ``|t_N| r / (1 - r)`` with ``r = |x| / [N+1]_q``; it is only
    meaningful once ``r < 1``.
    """
    q2 = q * q
    ax = abs(x)
    t = 1.0
    qi = 0.0
    ev = 0.0
    ev_c = 0.0
    od = 0.0
    od_c = 0.0
    tail = math.inf
    n = 0
    while n < max_terms:
        # Neumaier compensated accumulation
        if n % 2 == 0:
            s = ev + t
            if abs(ev) >= abs(t):
                ev_c += (ev - s) + t
            else:
                ev_c += (t - s) + ev
            ev = s
        else:
            s = od + t
            if abs(od) >= abs(t):
                od_c += (od - s) + t
            else:
                od_c += (t - s) + od
            od = s
        qi = 1.0 + q2 * qi
        r = ax / qi
        if r < 1.0 and (n >= 1 or x == 0.0):
            tail = abs(t) * r / (1.0 - r)
            # bound relative to the smaller parity part (and absolute when < 1)
            scale = min(1.0, abs(ev + ev_c), abs(od + od_c)) if n >= 1 else 1.0
            if tail <= tol * scale:
                return ev + ev_c, od + od_c, n + 1, tail, True
        t = t * x / qi
        n += 1
    return ev + ev_c, od + od_c, n, tail, False


def q_exp_series_numpy(x, q, tol, max_terms):
    ax = abs(x)
    q2 = q * q
    block = 256
    while True:
        m = min(block, max_terms)
        k = np.arange(m + 1, dtype=float)
        # qint[j] = [j+1]_q
        qint = np.cumsum(q2 ** k)
        ratios = x / qint[:-1]
        terms = np.empty(m)
        terms[0] = 1.0
        terms[1:] = np.cumprod(ratios[: m - 1])
        r = ax / qint[:m]
        with np.errstate(divide="ignore", invalid="ignore"):
            tails = np.where(r < 1.0, np.abs(terms) * r / (1.0 - r), np.inf)
        even_part = np.abs(np.cumsum(np.where(k[:m] % 2 == 0, terms, 0.0)))
        odd_part = np.abs(np.cumsum(np.where(k[:m] % 2 == 1, terms, 0.0)))
        scale = np.minimum(1.0, np.minimum(even_part, odd_part))
        scale[0] = 1.0
        ok = tails <= tol * scale
        if x != 0.0:
            ok[0] = False
        hit = np.flatnonzero(ok)
        if hit.size:
            n_used = int(hit[0]) + 1
            used = terms[:n_used]
            return (math.fsum(used[0::2]), math.fsum(used[1::2]), n_used,
                    float(tails[hit[0]]), True)
        if m >= max_terms:
            finite = tails[np.isfinite(tails)]
            tail = float(finite[-1]) if finite.size else math.inf
            return math.fsum(terms[0::2]), math.fsum(terms[1::2]), m, tail, False
        block *= 4


# ---------------------------------------------------------------------------
# Fock truncation level
# ---------------------------------------------------------------------------

def truncation_level_loop(x, q, tol, max_level):
    """Smallest N with sum_{n>N} t_n <= tol * sum_{n<=N} t_n, t_n = x^n/[n]_q!.

    Returns ``(N, relative_tail_bound)``; N = -1 signals that max_level was
    reached first.
    """
    q2 = q * q
    t = 1.0
    qi = 0.0
    s = 0.0
    for n in range(max_level + 1):
        s += t
        qi = 1.0 + q2 * qi       # [n+1]
        t_next = t * x / qi      # t_{n+1}
        qi2 = 1.0 + q2 * qi      # [n+2]
        r = x / qi2
        if r < 1.0:
            bound = t_next / (1.0 - r) / s
            if bound <= tol:
                return n, bound
        t = t_next
    return -1, math.inf


def truncation_level_numpy(x, q, tol, max_level):
    q2 = q * q
    block = 256
    while True:
        m = min(block, max_level + 1)
        k = np.arange(m + 2, dtype=float)
        qint = np.cumsum(q2 ** k)                 # qint[j] = [j+1]
        terms = np.empty(m + 1)
        terms[0] = 1.0
        terms[1:] = np.cumprod(x / qint[:m])      # t_0 .. t_m
        partial = np.cumsum(terms[:m])
        r = x / qint[1 : m + 1]                   # x / [n+2]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            bound = np.where(r < 1.0, terms[1 : m + 1] / (1.0 - r) / partial, np.inf)
        hit = np.flatnonzero(bound <= tol)
        if hit.size:
            return int(hit[0]), float(bound[hit[0]])
        if m >= max_level + 1:
            return -1, math.inf
        block *= 4


# ---------------------------------------------------------------------------
# Coherent-state amplitudes |alpha|^n / sqrt([n]_q!)
# ---------------------------------------------------------------------------

def coherent_amplitudes_loop(r, q, n_max):
    out = np.empty(n_max + 1)
    q2 = q * q
    qi = 0.0
    a = 1.0
    out[0] = 1.0
    for n in range(1, n_max + 1):
        qi = 1.0 + q2 * qi
        a = a * r / math.sqrt(qi)
        out[n] = a
    return out


def coherent_amplitudes_numpy(r, q, n_max):
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max:
        qint = q_integer_table(q, n_max)[1:]
        out[1:] = np.cumprod(r / np.sqrt(qint))
    return out


# ---------------------------------------------------------------------------
# Matrix exponential: diagonal balancing + scaling-and-squaring Taylor
# ---------------------------------------------------------------------------

def balance_loop(M, max_sweeps):
    """Power-of-two diagonal similarity D^-1 M D reducing off-diagonal norms.

    Returns ``(B, d)`` with ``B = diag(1/d) M diag(d)``.
    """
    n = M.shape[0]
    B = M.copy()
    d = np.ones(n)
    for _ in range(max_sweeps):
        done = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += abs(B[j, i])
                    r += abs(B[i, j])
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            f = 1.0
            g = r / 2.0
            while c < g:
                f *= 2.0
                c *= 2.0
                r /= 2.0
                g = r / 2.0
            g = r * 2.0
            while c >= g:
                f /= 2.0
                c /= 2.0
                r *= 2.0
                g = r * 2.0
            if (c + r) < 0.95 * s:
                done = False
                d[i] *= f
                for j in range(n):
                    B[j, i] *= f
                    B[i, j] /= f
        if done:
            break
    return B, d


def balance_numpy(M, max_sweeps):
    B = M.copy()
    n = B.shape[0]
    d = np.ones(n)
    absB = np.abs(B)
    np.fill_diagonal(absB, 0.0)
    for _ in range(max_sweeps):
        done = True
        for i in range(n):
            c = absB[:, i].sum()
            r = absB[i, :].sum()
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            # exponent e with 2^e minimising c*2^e + r*2^-e, on the same
            # power-of-two lattice as the loop version
            f = 1.0
            while c < r / 2.0:
                f *= 2.0
                c *= 2.0
                r /= 2.0
            while c >= r * 2.0:
                f /= 2.0
                c /= 2.0
                r *= 2.0
            if c + r < 0.95 * s:
                done = False
                d[i] *= f
                B[:, i] *= f
                B[i, :] /= f
                absB[:, i] *= f
                absB[i, :] /= f
        if done:
            break
    return B, d


def _norm1(M):
    return np.abs(M).sum(axis=0).max()


def expm_taylor_loop(M, tol, max_terms):
    """exp(M) by scaling and squaring with a truncated Taylor series.

    Returns ``(E, converged, squarings)``.
    """
    n = M.shape[0]
    nrm = 0.0
    for j in range(n):
        c = 0.0
        for i in range(n):
            c += abs(M[i, j])
        if c > nrm:
            nrm = c
    s = 0
    while nrm > 0.5:
        nrm /= 2.0
        s += 1
    A = M / (2.0 ** s)
    E = np.eye(n, dtype=M.dtype)
    term = np.eye(n, dtype=M.dtype)
    converged = False
    for k in range(1, max_terms + 1):
        term = np.dot(term, A) / k
        E = E + term
        tn = 0.0
        for j in range(n):
            c = 0.0
            for i in range(n):
                c += abs(term[i, j])
            if c > tn:
                tn = c
        # remaining terms bounded by tn * nrm/(k+1) / (1 - nrm/(k+1))
        if tn * nrm / (k + 1 - nrm) <= tol:
            converged = True
            break
    for _ in range(s):
        E = np.dot(E, E)
    return E, converged, s


def expm_taylor_numpy(M, tol, max_terms):
    nrm = _norm1(M)
    s = 0
    while nrm > 0.5:
        nrm /= 2.0
        s += 1
    A = M / (2.0 ** s)
    E = np.eye(M.shape[0], dtype=M.dtype)
    term = E.copy()
    converged = False
    for k in range(1, max_terms + 1):
        term = term @ A / k
        E = E + term
        if _norm1(term) * nrm / (k + 1 - nrm) <= tol:
            converged = True
            break
    for _ in range(s):
        E = E @ E
    return E, converged, s


q_exp_series_jit = _jit(q_exp_series_loop)
truncation_level_jit = _jit(truncation_level_loop)
coherent_amplitudes_jit = _jit(coherent_amplitudes_loop)
balance_jit = _jit(balance_loop)
expm_taylor_jit = _jit(expm_taylor_loop)

if USE_NUMBA:
    q_exp_series = q_exp_series_jit
    truncation_level = truncation_level_jit
    coherent_amplitudes = coherent_amplitudes_jit
    balance = balance_jit
    expm_taylor = expm_taylor_jit
else:
    q_exp_series = q_exp_series_numpy
    truncation_level = truncation_level_numpy
    coherent_amplitudes = coherent_amplitudes_numpy
    balance = balance_numpy
    expm_taylor = expm_taylor_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
