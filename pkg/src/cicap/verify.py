"""Numerical checks of the coherent-information inequalities, limits and closed forms.

Every check returns a :class:`VerificationReport` whose instances all use the
relation ``lhs <= rhs + tolerance``; ``margin = rhs - lhs``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import qla
from .capopt import OptConfig, maximize_ci
from .channels import KrausChannel, choi_state, standard_channel
from .coherent import channel_ci, coherent_info, entropy, hashing_rate, isotropic_ci
from .exceptions import DimensionError
from .states import (
    DensityMatrix,
    IsotropicParams,
    PureState,
    bell_diagonal,
    haar_unitaries,
    max_entangled,
    maximally_mixed,
    product_state,
    purify,
    random_density,
    random_pure,
    swap_parties,
    twirl_closed_form,
)

RELATION = "lhs <= rhs + tolerance"
PROPERTY_TOL = 1e-9


@dataclass(frozen=True)
class Instance:
    description: str
    lhs: float
    rhs: float
    margin: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    check_name: str
    tolerance: float
    seed: int | None = None
    parameters: dict = field(default_factory=dict)
    instances: list = field(default_factory=list)
    inconclusive: bool = False
    notes: list = field(default_factory=list)

    def add(self, description: str, lhs: float, rhs: float, tolerance: float | None = None) -> Instance:
        tol = self.tolerance if tolerance is None else tolerance
        lhs, rhs = float(lhs), float(rhs)
        inst = Instance(description, lhs, rhs, rhs - lhs, bool(lhs <= rhs + tol))
        self.instances.append(inst)
        return inst

    @property
    def passed(self) -> int:
        return sum(i.passed for i in self.instances)

    @property
    def total(self) -> int:
        return len(self.instances)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def failures(self) -> list:
        return [i for i in self.instances if not i.passed]

    def worst_margin(self, prefix: str = "") -> float:
        ms = [i.margin for i in self.instances if i.description.startswith(prefix)]
        return min(ms) if ms else float("nan")

    def summary_line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = " (inconclusive)" if self.inconclusive else ""
        return f"{self.check_name}: {status} {self.passed}/{self.total}{extra}"

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "relation": RELATION,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "parameters": self.parameters,
            "inconclusive": self.inconclusive,
            "notes": list(self.notes),
            "instances": [i.to_dict() for i in self.instances],
            "summary": {"passed": self.passed, "total": self.total},
        }


def lemma_ratios(sequence_length: int, fidelity=lambda n: 1 - 1 / n) -> dict:
    """``I^X(rho(F_n, 2^n)) / n`` for ``n = 2..sequence_length`` from the closed form."""
    out = {}
    for n in range(2, sequence_length + 1):
        F = max(fidelity(n), 4.0**-n)
        out[n] = isotropic_ci(IsotropicParams(F, 2**n)).clipped / n
    return out


def check_lemma_continuity(sequence_length: int = 20, threshold: float = 0.98, fidelity=None) -> VerificationReport:
    """Isotropic CI per log-dimension along ``F_n -> 1``, ``d_n = 2^n``.

    Passes when the ratio never decreases along the sequence and its final
    value reaches ``threshold``.
    """
    if sequence_length < 3:
        raise ValueError("sequence_length must be >= 3")
    fidelity = fidelity or (lambda n: 1 - 1 / n)
    report = VerificationReport(
        "lemma", 0.0, parameters={"sequence_length": sequence_length, "threshold": threshold}
    )
    ratios = lemma_ratios(sequence_length, fidelity)
    ns = sorted(ratios)
    for a, b in zip(ns, ns[1:]):
        report.add(f"monotone: ratio(n={a}) <= ratio(n={b})", ratios[a], ratios[b], 1e-12)
    last = ns[-1]
    report.add(f"limit: threshold <= ratio(n={last})", threshold, ratios[last])
    report.add(f"bound: ratio(n={last}) <= 1", ratios[last], 1.0, 1e-12)
    return report


def theorem1_rates(channel: KrausChannel, cfg: OptConfig) -> tuple:
    """(twirled-Choi hashing rate, optimized finite-n CI) for a qubit channel."""
    if (channel.d_in, channel.d_out) != (2, 2):
        raise DimensionError(f"Theorem-1 spot check needs a qubit channel, got {channel.d_in}->{channel.d_out}")
    r = hashing_rate(twirl_closed_form(choi_state(channel)))
    c = maximize_ci(channel, cfg).best_ci_per_copy
    return r, c


def check_theorem1_spot(channel, cfg: OptConfig = OptConfig(), report: VerificationReport | None = None) -> VerificationReport:
    """Achievable hashing rate of the twirled Choi state versus the CI lower bound.

    ``channel`` may be a single channel or a list of channels; all land in
    one report.
    """
    report = report or VerificationReport(
        "theorem1", 1e-6, seed=cfg.seed, parameters={"n": cfg.n, "restarts": cfg.restarts}
    )
    channels = channel if isinstance(channel, (list, tuple)) else [channel]
    for ch in channels:
        r, c = theorem1_rates(ch, cfg)
        report.add(f"{ch.name}: hashing(twirl(choi)) <= max CI (n={cfg.n})", r, c)
    return report


def theorem1_suite(cfg: OptConfig = OptConfig()) -> VerificationReport:
    channels = [
        standard_channel(kind, p)
        for kind in ("dephasing", "depolarizing", "amplitude_damping")
        for p in (0.1, 0.3)
    ]
    return check_theorem1_spot([standard_channel("dephasing", 0.0)] + channels, cfg)


def _random_probs(rng, k: int) -> np.ndarray:
    return rng.dirichlet(np.ones(k))


def check_hashing_instances(trials: int = 100, seed: int = 0) -> VerificationReport:
    """Hashing inequality on families where the distillable rate is known.

    Bell-diagonal states: ``I^B <= hashing rate``.  Pure states:
    ``I^B <= S(rho_B)``, the distillable entanglement of a pure state.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = VerificationReport("hashing", PROPERTY_TOL, seed=seed, parameters={"trials": trials})

    def bell(desc, rho):
        report.add(f"bell-diagonal {desc}: I^B <= hashing rate", coherent_info(rho, "B").clipped, hashing_rate(rho))

    bell("phi+", max_entangled(2).density())
    bell("maximally mixed", maximally_mixed((2, 2)))
    bell("(0.8,0.2,0,0)", bell_diagonal([0.8, 0.2, 0.0, 0.0]))
    for t in range(trials):
        p = _random_probs(rng, 4)
        bell(f"random #{t}", bell_diagonal(p))
    for t in range(trials):
        dims = (2, 2) if t % 2 == 0 else (3, 3)
        psi = random_pure(dims, rng)
        rho = psi.density()
        report.add(
            f"pure {dims[0]}x{dims[1]} #{t}: I^B <= S(rho_B)",
            coherent_info(rho, "B").clipped,
            entropy(rho.reduce("B")),
        )
    return report


def reduction_min_eigs(rho: DensityMatrix) -> tuple:
    """Minimum eigenvalues of ``rho_A (x) I - rho`` and ``I (x) rho_B - rho``."""
    d_a, d_b = rho.dims
    ra = np.kron(rho.reduce("A"), np.eye(d_b)) - rho.matrix
    rb = np.kron(np.eye(d_a), rho.reduce("B")) - rho.matrix
    return qla.min_eigenvalue(qla.hermitize(ra)), qla.min_eigenvalue(qla.hermitize(rb))


def check_reduction_implies_zero_ci(trials: int = 10_000, seed: int = 0, dims_list=((2, 2), (3, 3)),
                                    tol: float = 1e-9) -> VerificationReport:
    """States obeying the reduction criterion must have zero coherent information."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = VerificationReport(
        "reduction", PROPERTY_TOL, seed=seed,
        parameters={"trials": trials, "dims": [list(d) for d in dims_list], "criterion_tol": tol},
    )
    singlet = DensityMatrix(_singlet_matrix(), (2, 2))
    lo = min(reduction_min_eigs(singlet))
    report.add("singlet violates the reduction criterion: min eigenvalue <= -tol", lo, -tol, 0.0)
    report.notes.append(f"singlet reduction-criterion minimum eigenvalue {lo!r}")

    product = product_state(random_density(2, rng), random_density(2, rng))
    _reduction_instance(report, "product state", product, tol, require_pass=True)
    found = 0
    for dims in dims_list:
        n = dims[0] * dims[1]
        for t in range(trials):
            rho = random_density(n, rng, dims)
            found += _reduction_instance(report, f"ginibre {dims[0]}x{dims[1]} #{t}", rho, tol)
    report.parameters["passed_filter"] = found
    if found == 0:
        report.inconclusive = True
        report.notes.append("no random state passed the reduction-criterion filter")
    return report


def _singlet_matrix() -> np.ndarray:
    psi = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    return np.outer(psi, psi.conj())


def _reduction_instance(report, desc, rho, tol, require_pass=False) -> int:
    lo = min(reduction_min_eigs(rho))
    if require_pass:
        report.add(f"{desc} satisfies the reduction criterion: tol <= min eigenvalue", tol, lo, 0.0)
    # borderline states with |min eigenvalue| < tol are left out
    if lo < tol:
        return 0
    raw = max(coherent_info(rho, "A").raw, coherent_info(rho, "B").raw)
    report.add(f"{desc}: reduction criterion holds => max raw I^X <= 0", raw, 0.0)
    return 1


def _random_pure_ensemble(rng, size: int, dims) -> tuple:
    weights = _random_probs(rng, size)
    members = [random_pure(dims, rng).density() for _ in range(size)]
    return weights, members


def check_info_loss(trials: int = 1000, ensemble_size: int = 4, seed: int = 0) -> VerificationReport:
    """Mixing pure states: loss of coherent information versus entropy gain.

    Checks ``sum_i p_i S(rho_i^B) - S(rho) <= I^B(rho)`` for the mixture
    ``rho``, and the equivalent difference form with ``I^B`` standing in for
    the distillable entanglement.  Ensemble sizes cycle over
    ``2..ensemble_size``; dims alternate between 2x2 and 3x3.
    """
    if trials < 1 or ensemble_size < 2:
        raise ValueError("need trials >= 1 and ensemble_size >= 2")
    rng = np.random.default_rng(seed)
    report = VerificationReport(
        "infoloss", PROPERTY_TOL, seed=seed, parameters={"trials": trials, "ensemble_size": ensemble_size}
    )
    sizes = range(2, ensemble_size + 1)
    for t in range(trials):
        size = sizes[t % len(sizes)]
        dims = (2, 2) if (t // len(sizes)) % 2 == 0 else (3, 3)
        weights, members = _random_pure_ensemble(rng, size, dims)
        mixed = DensityMatrix(qla.hermitize(sum(w * m.matrix for w, m in zip(weights, members))), dims)
        s_mix = entropy(mixed.matrix)
        s_b = np.array([entropy(m.reduce("B")) for m in members])
        ci_mix = coherent_info(mixed, "B").clipped
        tag = f"{size} pure {dims[0]}x{dims[1]} #{t}"
        report.add(f"{tag}: sum p S(rho_i^B) - S(rho) <= I^B(rho)", weights @ s_b - s_mix, ci_mix)
        # pure members: I^B(rho_i) = S(rho_i^B), S(rho_i) = 0
        ci_members = np.array([coherent_info(m, "B").clipped for m in members])
        report.add(f"{tag}: sum p I^B(rho_i) - I^B(rho) <= S(rho) - sum p S(rho_i)",
                   weights @ ci_members - ci_mix, s_mix - 0.0)
    return report


def _random_dims(rng) -> tuple:
    return [(2, 2), (2, 3), (3, 2)][rng.integers(3)]


def check_ci_properties(trials: int = 10_000, seed: int = 0) -> VerificationReport:
    """Convexity, product-unitary invariance, additivity, purification
    independence and the ``log2 d_A`` bound, each over ``trials`` random
    instances."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = VerificationReport("properties", PROPERTY_TOL, seed=seed, parameters={"trials": trials})

    for t in range(trials):
        dims = _random_dims(rng)
        n = dims[0] * dims[1]
        r1, r2 = random_density(n, rng, dims), random_density(n, rng, dims)
        p = rng.random()
        mixed = DensityMatrix(qla.hermitize(p * r1.matrix + (1 - p) * r2.matrix), dims, check=False)
        for side in "AB":
            lhs = coherent_info(mixed, side).clipped
            rhs = p * coherent_info(r1, side).clipped + (1 - p) * coherent_info(r2, side).clipped
            report.add(f"convexity I^{side} #{t}", lhs, rhs)

    for t in range(trials):
        dims = _random_dims(rng)
        rho = _mixed_or_entangled(rng, dims)
        u = haar_unitaries(rng, dims[0], 1)[0]
        v = haar_unitaries(rng, dims[1], 1)[0]
        uv = np.kron(u, v)
        rot = DensityMatrix(qla.hermitize(uv @ rho.matrix @ uv.conj().T), dims, check=False)
        dev = max(abs(coherent_info(rot, s).raw - coherent_info(rho, s).raw) for s in "AB")
        report.add(f"product-unitary invariance #{t}: |dI|", dev, 0.0)

    for t in range(trials):
        da, db = _random_dims(rng), _random_dims(rng)
        r1 = _mixed_or_entangled(rng, da)
        r2 = _mixed_or_entangled(rng, db)
        joint = _bipartite_product(r1, r2)
        dev = max(
            abs(coherent_info(joint, s).raw - coherent_info(r1, s).raw - coherent_info(r2, s).raw) for s in "AB"
        )
        report.add(f"raw additivity #{t}: |dI|", dev, 0.0)

    channels = [standard_channel(k, p) for k in ("dephasing", "depolarizing", "amplitude_damping", "erasure")
                for p in (0.1, 0.3)]
    for t in range(trials):
        ch = channels[rng.integers(len(channels))]
        sigma = random_density(2, rng)
        psi = swap_parties(purify(sigma))
        k = int(rng.integers(2, 5))  # reference dimension >= rank
        u = haar_unitaries(rng, k, 1)[0]
        amps = np.zeros((k, 2), dtype=complex)
        amps[:2] = psi.amplitudes.reshape(2, 2)
        other = PureState((u @ amps).reshape(-1), (k, 2))
        dev = abs(channel_ci(sigma, ch).raw - channel_ci(sigma, ch, purification=other).raw)
        report.add(f"purification independence {ch.name} #{t}: |dI|", dev, 0.0)

    for t in range(trials):
        dims = _random_dims(rng)
        rho = _mixed_or_entangled(rng, dims)
        report.add(f"I^B <= log2 d_A #{t}", coherent_info(rho, "B").clipped, np.log2(dims[0]))
    return report


def _mixed_or_entangled(rng, dims) -> DensityMatrix:
    """Half the draws are pure states so that large positive CI values get exercised."""
    if rng.random() < 0.5:
        return random_pure(dims, rng).density()
    return random_density(dims[0] * dims[1], rng, dims)


def _bipartite_product(r1: DensityMatrix, r2: DensityMatrix) -> DensityMatrix:
    """``r1 (x) r2`` regrouped as ``(A1 A2) | (B1 B2)``."""
    a1, b1 = r1.dims
    a2, b2 = r2.dims
    t = np.kron(r1.matrix, r2.matrix).reshape(a1, b1, a2, b2, a1, b1, a2, b2)
    t = t.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    n = a1 * a2 * b1 * b2
    return DensityMatrix(t.reshape(n, n), (a1 * a2, b1 * b2), check=False)


SUITES = {
    "lemma": lambda trials, seed: check_lemma_continuity(20),
    "theorem1": lambda trials, seed: theorem1_suite(OptConfig(seed=seed)),
    "hashing": lambda trials, seed: check_hashing_instances(trials, seed),
    "reduction": lambda trials, seed: check_reduction_implies_zero_ci(trials, seed),
    "infoloss": lambda trials, seed: check_info_loss(trials, 4, seed),
    "properties": lambda trials, seed: check_ci_properties(trials, seed),
}


def run_suite(name: str, trials: int, seed: int) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or 'all'")
    report = SUITES[name](trials, seed)
    report.seed = seed
    return report
