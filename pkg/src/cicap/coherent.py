"""Von Neumann entropy and coherent information of states and channels.

All quantities are in bits.  Coherent information is always reported as a
pair: the raw difference ``S(rho_X) - S(rho)`` and its value clipped at zero.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from . import qla
from .channels import KrausChannel, extend_apply
from .exceptions import DimensionError, InvalidStateError
from .states import DensityMatrix, IsotropicParams, bell_coefficients, purify, swap_parties

NEG_EIG_CLIP = 1e-10
NEG_EIG_ERROR = 1e-9
BELL_DIAGONAL_TOL = 1e-9
LN2 = np.log(2)


@dataclass(frozen=True)
class CIValue:
    raw: float
    clipped: float
    side: str

    @classmethod
    def from_raw(cls, raw: float, side: str) -> "CIValue":
        raw = float(raw)
        return cls(raw, max(raw, 0.0), side)


def _check_side(side: str) -> str:
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return side


def spectrum_entropy(w: np.ndarray) -> float:
    """Shannon entropy (bits) of an eigenvalue list, clipping tiny negatives."""
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -NEG_EIG_ERROR:
        raise InvalidStateError(f"eigenvalue {w.min():.3e} below -{NEG_EIG_ERROR:g}")
    w = np.clip(w, 0.0, None)
    return float(-np.sum(xlogy(w, w)) / LN2)


def entropy(rho) -> float:
    """``-Tr rho log2 rho``."""
    return spectrum_entropy(np.linalg.eigvalsh(qla.hermitize(rho)))


def batched_entropy(mats: np.ndarray) -> np.ndarray:
    w = np.clip(np.linalg.eigvalsh(mats), 0.0, None)
    return -np.sum(xlogy(w, w), axis=-1) / LN2


def coherent_info(rho: DensityMatrix, side: str = "B") -> CIValue:
    _check_side(side)
    s_x = entropy(rho.reduce(side))
    return CIValue.from_raw(s_x - entropy(rho.matrix), side)


def channel_output_state(sigma, channel: KrausChannel, purification=None) -> DensityMatrix:
    """``(I (x) channel)(|psi><psi|)`` where ``psi`` purifies ``sigma`` on side B.

    ``purification`` may supply any pure state on ``(d_ref, d_in)`` whose B
    reduction is ``sigma``; by default the eigenbasis purification is used.
    """
    if purification is None:
        d = qla.as_matrix(sigma).shape[0]
        if d != channel.d_in:
            raise DimensionError(f"input state has dimension {d}, channel expects {channel.d_in}")
        purification = swap_parties(purify(sigma))
    elif purification.dims[1] != channel.d_in:
        raise DimensionError(f"purification B side {purification.dims[1]} != d_in {channel.d_in}")
    return extend_apply(channel, purification.density())


def channel_ci(sigma, channel: KrausChannel, purification=None) -> CIValue:
    """Coherent information ``I^B`` of the channel output on a purification of ``sigma``."""
    return coherent_info(channel_output_state(sigma, channel, purification), "B")


def channel_ci_exchange(sigma, channel: KrausChannel) -> float:
    """Raw channel coherent information from output and exchange entropies.

    Uses ``S(channel(sigma)) - S(W)`` with ``W_kl = Tr(K_k sigma K_l^H)``,
    avoiding the purification.  Returns the raw value.
    """
    m = qla.as_matrix(sigma)
    if m.shape[0] != channel.d_in:
        raise DimensionError(f"input state has dimension {m.shape[0]}, channel expects {channel.d_in}")
    return float(batched_channel_ci(m[None], channel.kraus_ops)[0])


def batched_channel_ci(sigmas: np.ndarray, kraus: np.ndarray) -> np.ndarray:
    """Raw channel CI for a stack of input states ``(m, d_in, d_in)``."""
    ks = np.einsum("kab,mbc->mkac", kraus, sigmas)
    out = np.einsum("mkac,kdc->mad", ks, kraus.conj())
    w = np.einsum("mkac,lac->mkl", ks, kraus.conj())
    out = (out + np.swapaxes(out.conj(), -1, -2)) / 2
    w = (w + np.swapaxes(w.conj(), -1, -2)) / 2
    return batched_entropy(out) - batched_entropy(w)


def isotropic_ci(params: IsotropicParams, side: str = "B") -> CIValue:
    """Closed form for the isotropic state; both sides agree.

    The spectrum is ``F`` once and ``(1-F)/(d^2-1)`` with multiplicity
    ``d^2-1``, and both reductions are maximally mixed.
    """
    _check_side(side)
    F, d = float(params.F), params.d
    g = 1.0 - F
    raw = np.log2(d) + (xlogy(F, F) + xlogy(g, g / (d * d - 1))) / LN2
    return CIValue.from_raw(raw, side)


def is_bell_diagonal(rho, tol: float = BELL_DIAGONAL_TOL) -> bool:
    c = bell_coefficients(rho)
    return float(np.max(np.abs(c - np.diag(np.diag(c))))) <= tol


def hashing_rate(rho: DensityMatrix) -> float:
    """Hashing-protocol yield ``max(0, 1 - S(rho))`` of a Bell-diagonal two-qubit state."""
    if rho.dims != (2, 2):
        raise DimensionError(f"hashing rate needs a two-qubit state, got dims {rho.dims}")
    c = bell_coefficients(rho.matrix)
    off = float(np.max(np.abs(c - np.diag(np.diag(c)))))
    if off > BELL_DIAGONAL_TOL:
        raise InvalidStateError(f"state is not Bell-diagonal: largest off-diagonal Bell coefficient {off:.3e}")
    return max(0.0, 1.0 - spectrum_entropy(np.diag(c).real))
