"""Dense matrices of the deformed ladder operators on a truncated Fock space.

Matrices are indexed ``M[row, col]`` with the row being the output level,
so a lowering operator has its entries at ``(n-1, n)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceFailure
from .qmath import DeformationParameter, as_q
from .states import StateSpec, TruncatedState, check_normalizable, choose_truncation

MAX_EXPM_DIM = 512
EXPM_NORM_CAP = 50.0


def _frozen(M):
    M = np.ascontiguousarray(M, dtype=complex)
    M.flags.writeable = False
    return M


@dataclass(frozen=True, eq=False)
class LadderSet:
    A: np.ndarray
    A_dag: np.ndarray
    B: np.ndarray
    B_dag: np.ndarray
    number: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    q: DeformationParameter

    @property
    def dim(self) -> int:
        return self.A.shape[0]


def build_ladder_set(q, N: int) -> LadderSet:
    """Ladder, conjugate-pair, number and quadrature matrices on levels 0..N.

    ``A(n-1, n) = sqrt([n]_q)`` and ``B(n-1, n) = n / sqrt([n]_q)``, the
    latter from ``B = f(n)^{-1} a`` with ``f(n)^2 = [n+1]_q / (n+1)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    qp = as_q(q)
    qint = _kernels.q_integer_table(qp.q, N)
    n = np.arange(1, N + 1)
    sq = np.sqrt(qint[1:])
    A = np.zeros((N + 1, N + 1), dtype=complex)
    B = np.zeros((N + 1, N + 1), dtype=complex)
    A[n - 1, n] = sq
    B[n - 1, n] = n / sq
    A_dag = A.T.copy()
    B_dag = B.T.copy()
    X = (A + A_dag) / 2
    Y = (A - A_dag) / 2j
    number = np.diag(np.arange(N + 1, dtype=float)).astype(complex)
    return LadderSet(_frozen(A), _frozen(A_dag), _frozen(B), _frozen(B_dag),
                     _frozen(number), _frozen(X), _frozen(Y), qp)


def f_squared(n: np.ndarray, q) -> np.ndarray:
    """f(n)^2 = [n+1]_q / (n+1); f(-1) never contributes (multiplied by n = 0)."""
    qp = as_q(q)
    n = np.asarray(n)
    nmax = int(n.max()) + 1 if n.size else 1
    qint = _kernels.q_integer_table(qp.q, max(nmax, 1))
    safe = np.clip(n, 0, None)
    return np.where(n >= 0, qint[safe + 1] / (safe + 1), 0.0)


def interior_residual(M: np.ndarray, target: np.ndarray, edge: int = 1) -> float:
    """max |M - target| over rows/cols 0..dim-1-edge."""
    k = M.shape[0] - edge
    return float(np.max(np.abs(M[:k, :k] - target[:k, :k])))


def nonlinear_commutator_residual(q, N: int) -> float:
    """Deviation of [A, A^dag] from diag((n+1) f^2(n) - n f^2(n-1)), interior only."""
    if N < 2:
        raise ValueError("N must be >= 2")
    L = build_ladder_set(q, N)
    comm = L.A @ L.A_dag - L.A_dag @ L.A
    n = np.arange(N + 1)
    diag = (n + 1) * f_squared(n, q) - n * f_squared(n - 1, q)
    return interior_residual(comm, np.diag(diag).astype(complex))


def deformed_algebra_residual(q, N: int) -> float:
    """Interior max of |A A^dag - q^2 A^dag A - I|."""
    L = build_ladder_set(q, N)
    q2 = L.q.q ** 2
    M = L.A @ L.A_dag - q2 * (L.A_dag @ L.A)
    return interior_residual(M, np.eye(N + 1, dtype=complex))


def conjugate_pair_residual(q, N: int) -> float:
    """Interior max of |[A, B^dag] - I|."""
    L = build_ladder_set(q, N)
    M = L.A @ L.B_dag - L.B_dag @ L.A
    return interior_residual(M, np.eye(N + 1, dtype=complex))


def matrix_exponential(M: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """exp(M) for a dense square matrix.

    The matrix is first diagonally balanced (power-of-two similarity), then
    exponentiated by scaling and squaring a Taylor series, and the
    similarity undone.

    Raises
    ------
    ConvergenceFailure
        If the balanced 1-norm exceeds 50 or the series misses ``tol``.
    """
    M = np.ascontiguousarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix_exponential needs a square matrix")
    if M.shape[0] > MAX_EXPM_DIM:
        raise ValueError(f"dimension {M.shape[0]} exceeds {MAX_EXPM_DIM}")
    Bm, d = _kernels.balance(M, 100)
    nrm = float(np.abs(Bm).sum(axis=0).max())
    if nrm > EXPM_NORM_CAP:
        raise ConvergenceFailure(f"balanced 1-norm {nrm:.3g} exceeds cap {EXPM_NORM_CAP}")
    E, ok, _ = _kernels.expm_taylor(np.ascontiguousarray(Bm), tol, 60)
    if not ok:
        raise ConvergenceFailure(f"Taylor series did not reach tol={tol}")
    # exp(M) = D exp(D^-1 M D) D^-1
    return (d[:, None] * E) / d[None, :]


def displacement_generator(alpha: complex, ladders: LadderSet) -> np.ndarray:
    """alpha B^dag - conj(alpha) A."""
    alpha = complex(alpha)
    return alpha * ladders.B_dag - alpha.conjugate() * ladders.A


def displacement_vacuum(alpha: complex, q, N: int | None = None, tol: float = 1e-13) -> TruncatedState:
    """exp(alpha B^dag - alpha* A)|0>, renormalised over levels 0..N."""
    qp = as_q(q)
    check_normalizable(alpha, qp)
    spec = StateSpec(alpha, qp, "coherent")
    if N is None:
        N = choose_truncation(spec, moment_order=8)
    L = build_ladder_set(qp, N)
    E = matrix_exponential(displacement_generator(alpha, L), tol)
    v = E[:, 0].copy()
    v /= np.linalg.norm(v)
    return TruncatedState(v, N, 0.0, spec)
