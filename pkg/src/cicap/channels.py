"""Quantum channels as Kraus families."""
import itertools
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import qla
from .exceptions import BudgetError, DimensionError, InvalidChannelError
from .states import DensityMatrix, max_entangled

COMPLETENESS_TOL = 1e-9
STANDARD_KINDS = ("dephasing", "depolarizing", "amplitude_damping", "erasure")

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map ``rho -> sum_k K_k rho K_k^H`` with ``K_k`` of shape ``(d_out, d_in)``."""

    kraus_ops: tuple
    d_in: int
    d_out: int
    name: str = field(default="channel", compare=False)

    def __post_init__(self):
        ops = np.asarray([qla.as_matrix(k) for k in self.kraus_ops], dtype=complex)
        if ops.ndim != 3 or len(ops) == 0:
            raise InvalidChannelError("need at least one Kraus operator")
        if ops.shape[1:] != (self.d_out, self.d_in):
            raise DimensionError(f"Kraus shape {ops.shape[1:]} does not match (d_out, d_in) = ({self.d_out}, {self.d_in})")
        res = completeness_residual(ops)
        if res > COMPLETENESS_TOL:
            raise InvalidChannelError(f"Kraus family is not trace preserving: ||sum K^H K - I||_F = {res:.3e}")
        ops.setflags(write=False)
        object.__setattr__(self, "kraus_ops", ops)

    def __len__(self):
        return len(self.kraus_ops)


def completeness_residual(ops) -> float:
    ops = np.asarray(ops, dtype=complex)
    s = np.einsum("kji,kjl->il", ops.conj(), ops)
    return float(np.linalg.norm(s - np.eye(ops.shape[2])))


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(d),), d, d, name=f"identity(d={d})")


def standard_channel(kind: str, param: float) -> KrausChannel:
    """Dephasing, depolarizing, amplitude-damping or erasure qubit channel.

    depolarizing p acts as ``(1-p) rho + p I/2``.  Erasure maps the qubit
    into a qutrit whose level 2 flags the erasure.
    """
    if kind not in STANDARD_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}; choose from {', '.join(STANDARD_KINDS)}")
    p = float(param)
    if not 0 <= p <= 1:
        raise ValueError(f"channel parameter must lie in [0, 1], got {param}")
    name = f"{kind}({p:g})"
    if kind == "dephasing":
        return KrausChannel((np.sqrt(1 - p) * _I, np.sqrt(p) * _Z), 2, 2, name)
    if kind == "depolarizing":
        w = np.sqrt([1 - 3 * p / 4, p / 4, p / 4, p / 4])
        return KrausChannel(tuple(c * s for c, s in zip(w, (_I, _X, _Y, _Z))), 2, 2, name)
    if kind == "amplitude_damping":
        k0 = np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex)
        k1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
        return KrausChannel((k0, k1), 2, 2, name)
    keep = np.sqrt(1 - p) * np.eye(3, 2, dtype=complex)
    flag0 = np.zeros((3, 2), dtype=complex)
    flag0[2, 0] = np.sqrt(p)
    flag1 = np.zeros((3, 2), dtype=complex)
    flag1[2, 1] = np.sqrt(p)
    return KrausChannel((keep, flag0, flag1), 2, 3, name)


def apply(channel: KrausChannel, rho) -> np.ndarray:
    m = qla.as_matrix(rho)
    if m.shape != (channel.d_in, channel.d_in):
        raise DimensionError(f"state of shape {m.shape} fed to channel with d_in={channel.d_in}")
    k = channel.kraus_ops
    return np.einsum("kab,bc,kdc->ad", k, m, k.conj())


def apply_state(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    out = qla.hermitize(apply(channel, rho))
    return DensityMatrix(out, (channel.d_out, 1), check=False)


def extend_apply(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """``(I (x) channel)`` acting on the B side of ``rho``."""
    d_a, d_b = rho.dims
    if d_b != channel.d_in:
        raise DimensionError(f"B side has dimension {d_b}, channel expects {channel.d_in}")
    k = channel.kraus_ops
    t = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    out = np.einsum("kab,ibjc,kdc->iajd", k, t, k.conj(), optimize=True)
    n = d_a * channel.d_out
    return DensityMatrix(qla.hermitize(out.reshape(n, n)), (d_a, channel.d_out), check=False)


def tensor_power(channel: KrausChannel, n: int, max_dim: int = qla.MAX_DIM) -> KrausChannel:
    """``channel^(x)n``; Kraus operators enumerated lexicographically over factor indices."""
    if n < 1:
        raise ValueError(f"tensor power needs n >= 1, got {n}")
    if n == 1:
        return channel
    d_in, d_out = channel.d_in**n, channel.d_out**n
    if max(d_in, d_out) > max_dim:
        raise BudgetError(
            f"{channel.name}^(x){n} has dimensions d_in={d_in}, d_out={d_out}; budget is {max_dim}"
        )
    ops = tuple(
        reduce(np.kron, combo) for combo in itertools.product(channel.kraus_ops, repeat=n)
    )
    return KrausChannel(ops, d_in, d_out, name=f"{channel.name}^(x){n}")


def choi_state(channel: KrausChannel) -> DensityMatrix:
    """``(I (x) channel)(P_+)`` with the reference held on side A."""
    return extend_apply(channel, max_entangled(channel.d_in).density())
