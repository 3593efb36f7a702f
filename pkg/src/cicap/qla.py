"""Dense complex linear algebra for small bipartite systems.

Index convention used everywhere in the package: row-major with the A
index major, i.e. ``|ij> = |i> (x) |j>`` sits at position ``i * d_B + j``.
"""
from typing import NamedTuple

import numpy as np

from .exceptions import ConvergenceError, DimensionError

MAX_DIM = 64
HERMITIAN_TOL = 1e-8

JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Return ``m`` (array or object with a ``.matrix``) as a finite complex 2-d array."""
    m = getattr(m, "matrix", m)
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian_residual(m) -> float:
    a = as_matrix(m)
    return float(np.linalg.norm(a - a.conj().T))


def hermitize(m) -> np.ndarray:
    a = as_matrix(m)
    return (a + a.conj().T) / 2


def _check_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"matrix must be square, got {a.shape}")
    res = float(np.linalg.norm(a - a.conj().T))
    if res > tol:
        raise ValueError(f"matrix is not Hermitian: ||m - m^H||_F = {res:.3e} > {tol:g}")


def jacobi_eigh(m, max_sweeps: int = JACOBI_MAX_SWEEPS, tol: float = JACOBI_OFF_TOL) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each pivot first removes the phase of ``a[p, q]`` and then applies a real
    Givens rotation that annihilates it.  Iteration stops once the
    off-diagonal Frobenius norm falls below ``tol * max(1, ||m||_F)``.
    """
    a = as_matrix(m)
    _check_hermitian(a)
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    sweeps = 0
    while off(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge for n={n} in {max_sweeps} sweeps (off-diagonal norm {off(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1 / np.hypot(1.0, t)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real, then rotate
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def herm_eig(m, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses :func:`numpy.linalg.eigh`; ``method="jacobi"``
    uses :func:`jacobi_eigh`.  Inputs further than 1e-8 (Frobenius) from
    Hermitian are rejected rather than symmetrized.
    """
    a = as_matrix(m)
    _check_hermitian(a)
    if method == "jacobi":
        return jacobi_eigh(a)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return EigenDecomposition(w, v)


def eigvalsh(m) -> np.ndarray:
    a = as_matrix(m)
    _check_hermitian(a)
    return np.linalg.eigvalsh((a + a.conj().T) / 2)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; entry ``(r, c)`` of ``a`` scales the block ``b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims, keep: str = "A") -> np.ndarray:
    """Reduce a bipartite operator on ``dims = (d_A, d_B)`` to one side."""
    a = as_matrix(m)
    d_a, d_b = (int(x) for x in dims)
    if a.shape != (d_a * d_b, d_a * d_b):
        raise DimensionError(f"matrix shape {a.shape} does not match dims {dims}")
    t = a.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def min_eigenvalue(m) -> float:
    return float(eigvalsh(m)[0])


def is_psd(m, tol: float = 1e-9) -> bool:
    return min_eigenvalue(m) >= -tol


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    x, y = as_matrix(a), as_matrix(b)
    if x.shape != y.shape:
        raise DimensionError(f"shapes differ: {x.shape} vs {y.shape}")
    return 0.5 * float(np.sum(np.abs(eigvalsh(hermitize(x - y)))))
