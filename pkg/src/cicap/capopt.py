"""Finite-n coherent-information lower bounds for channels.

``maximize_ci`` estimates ``(1/n) max_rho I(rho, channel^(x)n)`` by multi-start
gradient ascent over ``rho = A A^H / Tr(A A^H)``.  Every value it returns is a
finite-n lower bound, not the asymptotic capacity.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import qla
from .channels import KrausChannel, tensor_power
from .coherent import batched_channel_ci, channel_ci
from .exceptions import BudgetError
from .states import DensityMatrix, ginibre

log = logging.getLogger(__name__)

FD_STEP = 1e-5
STALL_STEPS = 5
ARMIJO = 1e-4


@dataclass(frozen=True)
class OptConfig:
    n: int = 1
    restarts: int = 8
    max_iters: int = 2000
    step_init: float = 1.0
    tol: float = 1e-9
    seed: int = 0
    workers: int = 1


@dataclass(frozen=True)
class RestartTrace:
    index: int
    value: float  # clipped CI per copy
    raw: float  # raw CI per copy
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class OptResult:
    best_input: DensityMatrix
    best_ci_per_copy: float
    per_restart: list
    n: int
    channel_name: str = ""
    best_restart: int = 0
    label: str = field(default="finite-n lower bound")

    @property
    def converged(self) -> list:
        return [t.converged for t in self.per_restart]


def check_budget(channel: KrausChannel, n: int, max_dim: int = qla.MAX_DIM) -> int:
    d = channel.d_in**n
    if d > max_dim:
        raise BudgetError(f"input dimension d_in^n = {channel.d_in}^{n} = {d} exceeds {max_dim}")
    return d


def _rho_from_params(x: np.ndarray, d: int) -> np.ndarray:
    """Map stacked real parameters ``(..., 2 d^2)`` to density matrices."""
    a = x[..., : d * d] + 1j * x[..., d * d :]
    a = a.reshape(*x.shape[:-1], d, d)
    r = a @ np.swapaxes(a.conj(), -1, -2)
    return r / np.trace(r, axis1=-2, axis2=-1).real[..., None, None]


def _objective(x: np.ndarray, d: int, kraus: np.ndarray) -> np.ndarray:
    return batched_channel_ci(_rho_from_params(np.atleast_2d(x), d), kraus)


def _gradient(x: np.ndarray, d: int, kraus: np.ndarray) -> np.ndarray:
    m = x.size
    h = FD_STEP * np.maximum(1.0, np.abs(x))
    pts = np.repeat(x[None], 2 * m, axis=0)
    idx = np.arange(m)
    pts[idx, idx] += h
    pts[m + idx, idx] -= h
    f = _objective(pts, d, kraus)
    return (f[:m] - f[m:]) / (2 * h)


def _ascend(x0: np.ndarray, d: int, kraus: np.ndarray, cfg: OptConfig):
    x = x0.copy()
    f = float(_objective(x, d, kraus)[0])
    step = cfg.step_init
    stall = 0
    converged = False
    it = 0
    while it < cfg.max_iters:
        it += 1
        g = _gradient(x, d, kraus)
        gg = float(g @ g)
        if gg == 0.0:
            converged = True
            break
        accepted = False
        while step > 1e-14:
            x_new = x + step * g
            f_new = float(_objective(x_new, d, kraus)[0])
            if f_new >= f + ARMIJO * step * gg:
                accepted = True
                break
            step /= 2
        if not accepted:
            converged = True
            break
        gain = f_new - f
        x, f = x_new, f_new
        step *= 2
        stall = stall + 1 if gain < cfg.tol else 0
        if stall >= STALL_STEPS:
            converged = True
            break
    return x / np.linalg.norm(x), f, it, converged


def _start_point(r: int, d: int, seed: int) -> np.ndarray:
    if r == 0:
        a = np.eye(d, dtype=complex) / np.sqrt(d)
    else:
        a = ginibre(np.random.default_rng(seed + r), d)
        a = a / np.linalg.norm(a)
    a = a.reshape(-1)
    return np.concatenate([a.real, a.imag])


def maximize_ci(channel: KrausChannel, cfg: OptConfig = OptConfig()) -> OptResult:
    """Multi-restart ascent of the channel coherent information.

    Restart 0 starts at the maximally mixed input; restart ``r > 0`` starts
    from a Ginibre draw seeded with ``cfg.seed + r``.  The result is
    independent of ``cfg.workers``.
    """
    if cfg.restarts < 1:
        raise ValueError("restarts must be >= 1")
    d = check_budget(channel, cfg.n)
    big = tensor_power(channel, cfg.n)
    kraus = big.kraus_ops

    def run(r):
        return _ascend(_start_point(r, d, cfg.seed), d, kraus, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            runs = list(pool.map(run, range(cfg.restarts)))
    else:
        runs = [run(r) for r in range(cfg.restarts)]

    traces = []
    for r, (_, f, it, conv) in enumerate(runs):
        traces.append(RestartTrace(r, max(f, 0.0) / cfg.n, f / cfg.n, it, conv))
    # first maximal index wins ties
    best = int(np.argmax([t.raw for t in traces]))
    x_best = runs[best][0]
    rho = DensityMatrix(qla.hermitize(_rho_from_params(x_best[None], d)[0]), (d, 1))
    value = channel_ci(rho, big).clipped / cfg.n
    if all(t.raw <= traces[0].raw + 1e-12 for t in traces[1:]) and traces[0].raw <= 0:
        log.info("no restart improved on the maximally mixed input for %s", channel.name)
    return OptResult(rho, value, traces, cfg.n, channel.name, best)


def maximally_mixed_ci(channel: KrausChannel, n: int = 1) -> float:
    """Clipped per-copy CI at the maximally mixed input of ``channel^(x)n``."""
    d = check_budget(channel, n)
    big = tensor_power(channel, n)
    return channel_ci(DensityMatrix(np.eye(d) / d, (d, 1)), big).clipped / n


def grid_oracle_diag(channel: KrausChannel, grid_points: int = 10_000) -> float:
    """Best clipped CI over diagonal qubit inputs ``diag(q, 1-q)``, q on a uniform grid.

    Evaluated with the purification route so it stays independent of the
    optimizer's exchange-entropy objective.
    """
    if channel.d_in != 2:
        raise ValueError(f"grid oracle needs a qubit input, got d_in={channel.d_in}")
    best = 0.0
    for q in np.linspace(0.0, 1.0, grid_points):
        sigma = DensityMatrix(np.diag([q, 1 - q]).astype(complex), (2, 1), check=False)
        best = max(best, channel_ci(sigma, channel).clipped)
    return best
