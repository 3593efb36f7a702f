"""Bipartite states: constructors, sampling, purification and twirling."""
from dataclasses import dataclass, field

import numpy as np

from . import qla
from .exceptions import DimensionError, InvalidStateError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
NORM_TOL = 1e-10

# Bell basis as columns, ordered Phi+, Phi-, Psi+, Psi-.
BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")
BELL_BASIS = np.array(
    [
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, -1, 0, 0],
    ],
    dtype=complex,
) / np.sqrt(2)


def _check_dims(dims, size: int) -> tuple:
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2 or min(dims) < 1:
        raise DimensionError(f"dims must be two positive integers, got {dims}")
    if dims[0] * dims[1] != size:
        raise DimensionError(f"dims {dims} do not multiply to {size}")
    return dims


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one PSD matrix together with its bipartite split ``(d_A, d_B)``.

    Construction validates the invariants; pass ``check=False`` only for
    matrices already known to be valid.
    """

    matrix: np.ndarray
    dims: tuple
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = qla.as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        object.__setattr__(self, "dims", _check_dims(self.dims, m.shape[0]))
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.check:
            validate_density(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def reduce(self, keep: str) -> np.ndarray:
        return qla.partial_trace(self.matrix, self.dims, keep)

    def with_dims(self, dims) -> "DensityMatrix":
        return DensityMatrix(self.matrix, dims, check=False)


def validate_density(m: np.ndarray) -> None:
    """Raise :class:`InvalidStateError` naming the first violated invariant."""
    res = float(np.linalg.norm(m - m.conj().T))
    if res > HERMITIAN_TOL:
        raise InvalidStateError(f"not Hermitian: ||m - m^H||_F = {res:.3e} > {HERMITIAN_TOL:g}")
    tr = np.trace(m).real
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr:.12g}: |Tr - 1| = {abs(tr - 1):.3e} > {TRACE_TOL:g}")
    lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    if lo < -PSD_TOL:
        raise InvalidStateError(f"not PSD: minimum eigenvalue {lo:.3e} < -{PSD_TOL:g}")


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    dims: tuple

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "dims", _check_dims(self.dims, a.size))
        nrm = float(np.linalg.norm(a))
        if abs(nrm - 1) > NORM_TOL:
            raise InvalidStateError(f"pure state norm is {nrm:.12g}, off by {abs(nrm - 1):.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def density(self) -> DensityMatrix:
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()), self.dims, check=False)

    def schmidt_coefficients(self) -> np.ndarray:
        return np.linalg.svd(self.amplitudes.reshape(self.dims), compute_uv=False)

    def schmidt_rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.schmidt_coefficients() > tol))


@dataclass(frozen=True)
class IsotropicParams:
    F: float
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"isotropic dimension must be an integer >= 2, got {self.d}")
        lo = 1 / self.d**2
        if not (lo - 1e-15 <= self.F <= 1 + 1e-15):
            raise ValueError(f"fidelity {self.F} outside [1/d^2, 1] = [{lo:g}, 1]")

    @property
    def p(self) -> float:
        """Weight of the maximally entangled component."""
        lo = 1 / self.d**2
        return min(max((self.F - lo) / (1 - lo), 0.0), 1.0)


@dataclass(frozen=True, eq=False)
class Ensemble:
    weights: np.ndarray
    members: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        members = tuple(self.members)
        if len(members) == 0 or len(members) != w.size:
            raise ValueError(f"{w.size} weights for {len(members)} members")
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-9:
            raise ValueError(f"weights must be a probability vector, got {w}")
        dims = members[0].dims
        for m in members[1:]:
            if m.dims != dims:
                raise DimensionError(f"ensemble members have dims {dims} and {m.dims}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "members", members)


def max_entangled(d: int) -> PureState:
    if d < 2:
        raise ValueError(f"maximally entangled state needs d >= 2, got {d}")
    psi = np.zeros(d * d, dtype=complex)
    psi[np.arange(d) * (d + 1)] = 1 / np.sqrt(d)
    return PureState(psi, (d, d))


def max_entangled_projector(d: int) -> np.ndarray:
    psi = max_entangled(d).amplitudes
    return np.outer(psi, psi.conj())


def fidelity_with_max_entangled(rho) -> float:
    """``<psi_+| rho |psi_+>`` for a state on ``d x d``."""
    dims = rho.dims
    if dims[0] != dims[1]:
        raise DimensionError(f"fidelity with P_+ needs d_A == d_B, got {dims}")
    psi = max_entangled(dims[0]).amplitudes
    return float(np.real(psi.conj() @ rho.matrix @ psi))


def maximally_mixed(dims) -> DensityMatrix:
    n = dims[0] * dims[1]
    return DensityMatrix(np.eye(n, dtype=complex) / n, dims, check=False)


def isotropic_matrix(F: float, d: int) -> np.ndarray:
    """``p P_+ + (1-p) I/d^2`` with P_+ fidelity ``F``.

    Valid for any ``F`` in [0, 1]; below ``1/d^2`` the weight ``p`` is negative.
    """
    p = (F - 1 / d**2) / (1 - 1 / d**2)
    return p * max_entangled_projector(d) + (1 - p) * np.eye(d * d) / d**2


def isotropic(params: IsotropicParams) -> DensityMatrix:
    return DensityMatrix(isotropic_matrix(params.F, params.d), (params.d, params.d))


def bell_diagonal(probs) -> DensityMatrix:
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (4,) or np.any(probs < 0) or abs(probs.sum() - 1) > 1e-9:
        raise ValueError(f"need a probability 4-vector, got {probs}")
    m = (BELL_BASIS * probs) @ BELL_BASIS.conj().T
    return DensityMatrix(m, (2, 2))


def bell_coefficients(rho) -> np.ndarray:
    """Matrix of ``<B_j| rho |B_k>`` in the Phi+, Phi-, Psi+, Psi- basis."""
    return BELL_BASIS.conj().T @ qla.as_matrix(rho) @ BELL_BASIS


def purify(rho) -> PureState:
    """Purification with ``rho`` on side A and the ancilla on side B.

    ``psi = sum_i sqrt(lam_i) |e_i> (x) |i>`` with the ancilla basis indexed
    by eigenvalue rank, largest first.
    """
    m = qla.as_matrix(rho)
    d = m.shape[0]
    if not (isinstance(rho, DensityMatrix) and rho.check):
        validate_density(m)
    w, v = np.linalg.eigh(qla.hermitize(m))
    w, v = w[::-1], v[:, ::-1]
    w = np.where(w > 1e-14, w, 0.0)
    amps = v * np.sqrt(w)  # column i: sqrt(lam_i) e_i
    psi = amps.reshape(d * d)  # entry (a, i) -> index a*d + i
    psi = psi / np.linalg.norm(psi)
    return PureState(psi, (d, d))


def swap_parties(psi: PureState) -> PureState:
    d_a, d_b = psi.dims
    return PureState(psi.amplitudes.reshape(d_a, d_b).T.reshape(-1), (d_b, d_a))


def random_density(d: int, seed, dims=None) -> DensityMatrix:
    """Hilbert-Schmidt random state ``G G^H / Tr(G G^H)`` from a complex Ginibre ``G``.

    ``seed`` may be an int or a :class:`numpy.random.Generator`.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    rng = np.random.default_rng(seed)
    g = ginibre(rng, d)
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return DensityMatrix(qla.hermitize(m), dims if dims is not None else (d, 1), check=False)


def random_pure(dims, seed) -> PureState:
    rng = np.random.default_rng(seed)
    n = dims[0] * dims[1]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(v / np.linalg.norm(v), dims)


def ginibre(rng: np.random.Generator, d: int, size=None) -> np.ndarray:
    shape = (d, d) if size is None else (size, d, d)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_unitaries(rng: np.random.Generator, d: int, size: int) -> np.ndarray:
    """Stack of ``size`` Haar unitaries from phase-corrected QR of Ginibre draws."""
    q, r = np.linalg.qr(ginibre(rng, d, size))
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[:, None, :]


def random_unitary(d: int, seed) -> np.ndarray:
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return haar_unitaries(np.random.default_rng(seed), d, 1)[0]


def _square_dims(sigma: DensityMatrix) -> int:
    d_a, d_b = sigma.dims
    if d_a != d_b:
        raise DimensionError(f"twirling needs d_A == d_B, got {sigma.dims}")
    return d_a


def twirl_closed_form(sigma: DensityMatrix) -> DensityMatrix:
    """Exact ``U (x) U*`` twirl: the isotropic state with the same P_+ fidelity.

    States with fidelity below ``1/d^2`` land on the isotropic line
    extended to negative ``p``, which is still a valid state.
    """
    d = _square_dims(sigma)
    F = min(max(fidelity_with_max_entangled(sigma), 0.0), 1.0)
    return DensityMatrix(isotropic_matrix(F, d), (d, d))


def twirl_monte_carlo(sigma: DensityMatrix, samples: int, seed, batch: int = 4096) -> DensityMatrix:
    """Empirical ``U (x) U*`` twirl over ``samples`` Haar draws."""
    d = _square_dims(sigma)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    t = sigma.matrix.reshape(d, d, d, d)
    acc = np.zeros((d, d, d, d), dtype=complex)
    left = samples
    while left > 0:
        k = min(batch, left)
        u = haar_unitaries(rng, d, k)
        uc = u.conj()
        # (U (x) U*) sigma (U (x) U*)^H, summed over the batch
        acc += np.einsum("sai,sbj,ijkl,sck,sdl->abcd", u, uc, t, uc, u, optimize=True)
        left -= k
    m = qla.hermitize(acc.reshape(d * d, d * d) / samples)
    m = m / np.trace(m).real
    return DensityMatrix(m, (d, d), check=False)


def mix(e: Ensemble) -> DensityMatrix:
    m = np.tensordot(e.weights, np.stack([r.matrix for r in e.members]), axes=1)
    return DensityMatrix(qla.hermitize(m), e.members[0].dims)


def product_state(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(a.matrix, b.matrix), (a.dim, b.dim), check=False)
