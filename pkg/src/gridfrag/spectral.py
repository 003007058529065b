"""Leading-eigenpair and full-spectrum routines for grid matrices.

``leading_eigenpair`` serves both the symmetric bus adjacency and the
directed edge-direction adjacency, so it only assumes nonnegativity.  The
full symmetric spectrum uses cyclic Jacobi rotations (JIT-compiled inner
kernel); traces of high even powers are carried in log domain because
beta**(2r) overflows double precision for modest r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from numba import njit

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000

# Pre-normalization iterate norms below this are treated as exact collapse
# (nilpotent operator, e.g. the edge-direction graph of a tree).
COLLAPSE_EPS = 1e-14


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted; ``estimate`` carries the best result seen."""

    def __init__(self, message: str, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class SpectralEstimate:
    """Perron root estimate: value >= 0, unit nonnegative vector, residual in inf-norm."""

    value: float
    vector: np.ndarray
    iterations: int
    residual: float
    collapsed: bool = False


@dataclass(frozen=True)
class LogTrace:
    """Natural log of trace(A**power) for an even power."""

    log_value: float
    power: int


def _check_nonnegative(matrix) -> None:
    if sp.issparse(matrix):
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        if matrix.nnz and matrix.data.min() < 0:
            raise ValueError("matrix must be entrywise nonnegative")
    else:
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        if matrix.size and matrix.min() < 0:
            raise ValueError("matrix must be entrywise nonnegative")


def leading_eigenpair(matrix, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> SpectralEstimate:
    """Dominant eigenpair of a nonnegative matrix by power iteration.

    Starts from the normalized all-ones vector with up to 3 seeded positive
    restarts if the residual stalls.  Acceptance is on the Rayleigh-quotient
    residual ||Ax - bx||_inf <= tol.  A raw warm-up phase detects collapse of
    the iterates (nilpotent operators have Perron root 0); afterwards the
    iteration runs on A + I, which has the same eigenvectors but no
    oscillating dominant modes on bipartite or periodic structures.
    """
    _check_nonnegative(matrix)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    n = matrix.shape[0]

    total_iters = 0
    best: SpectralEstimate | None = None

    for attempt in range(4):
        if attempt == 0:
            x = np.ones(n) / math.sqrt(n)
        else:
            rng = np.random.default_rng(1000 + attempt)
            x = rng.uniform(0.1, 1.0, size=n)
            x /= np.linalg.norm(x)

        raw_budget = min(n + 1, max_iter)
        stall_window = 500
        res_checkpoint = math.inf
        accepted = None

        for it in range(max_iter):
            y = matrix @ x
            norm = np.linalg.norm(y)
            if norm < COLLAPSE_EPS:
                # x is numerically an eigenvector for eigenvalue 0.
                return SpectralEstimate(value=0.0, vector=x,
                                        iterations=total_iters + it + 1,
                                        residual=float(np.abs(y).max(initial=0.0)),
                                        collapsed=True)
            value = float(x @ y)
            residual = float(np.abs(y - value * x).max())
            if residual <= tol:
                accepted = SpectralEstimate(value=max(value, 0.0), vector=x,
                                            iterations=total_iters + it + 1,
                                            residual=residual)
                break
            if best is None or residual < best.residual:
                best = SpectralEstimate(value=max(value, 0.0), vector=x,
                                        iterations=total_iters + it + 1,
                                        residual=residual)
            if it >= raw_budget:
                y = y + x  # shift to A + I: kills period-induced oscillation
                if it % stall_window == 0:
                    if residual > 0.95 * res_checkpoint:
                        break  # stalled; restart from a fresh positive vector
                    res_checkpoint = residual
            x = y / np.linalg.norm(y)

        total_iters += it + 1
        if accepted is not None:
            return accepted

    assert best is not None
    raise ConvergenceError(
        f"power iteration did not reach tol={tol:g} in {total_iters} iterations "
        f"(best residual {best.residual:g})", estimate=best)


@njit(cache=True)
def _jacobi_diagonalize(a: np.ndarray, rel_tol: float) -> int:
    """Cyclic Jacobi sweeps in place; returns sweeps used or -1 on failure."""
    n = a.shape[0]
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[i, j] * a[i, j]
    frob = math.sqrt(frob)
    if frob == 0.0:
        return 0
    target = rel_tol * frob
    skip = target / n
    for sweep in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if math.sqrt(off) <= target:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = aip - s * (aiq + tau * aip)
                        a[i, q] = aiq + s * (aip - tau * aiq)
                        a[p, i] = a[i, p]
                        a[q, i] = a[i, q]
    return -1


def symmetric_spectrum(matrix) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, descending, via cyclic Jacobi.

    Off-diagonal mass is reduced below 1e-10 times the Frobenius norm.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.size and float(np.abs(a - a.T).max()) > 1e-12:
        raise ValueError("matrix is not symmetric within 1e-12")
    sweeps = _jacobi_diagonalize(a, 1e-10)
    if sweeps < 0:
        raise ConvergenceError("Jacobi rotations did not converge in 60 sweeps")
    return np.sort(np.diag(a))[::-1].copy()


def log_trace_power(matrix, power: int) -> LogTrace:
    """log(trace(A**power)) for even power >= 2, stable for huge powers.

    trace(A**2r) = sum_i eigenvalue_i**2r; evaluated as a log-sum-exp over
    power * log|eigenvalue| with zero eigenvalues skipped.  An all-zero
    spectrum yields -inf.
    """
    if power < 2 or power % 2 != 0:
        raise ValueError(f"power must be an even integer >= 2, got {power}")
    spectrum = symmetric_spectrum(matrix)
    if spectrum.size == 0:
        return LogTrace(log_value=-math.inf, power=power)
    scale = max(1.0, float(np.abs(spectrum).max()))
    magnitudes = np.abs(spectrum)
    nonzero = magnitudes[magnitudes > 1e-12 * scale]
    if nonzero.size == 0:
        return LogTrace(log_value=-math.inf, power=power)
    logs = power * np.log(nonzero)
    m = float(logs.max())
    log_value = m + math.log(float(np.exp(logs - m).sum()))
    return LogTrace(log_value=log_value, power=power)
