"""Exit criteria for the toolkit, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""
import json
import time

import numpy as np
import pytest

from cicap import cli, io, qla, verify
from cicap.capopt import OptConfig, grid_oracle_diag, maximize_ci
from cicap.channels import standard_channel
from cicap.coherent import coherent_info, isotropic_ci
from cicap.states import (
    BELL_LABELS,
    IsotropicParams,
    bell_diagonal,
    isotropic,
    random_density,
    twirl_closed_form,
    twirl_monte_carlo,
)

from conftest import ACCEPTANCE_LINES, binary_entropy


def record(num, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{num:02d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")


def test_01_singlet_coherent_information(tmp_path, capsys):
    t0 = time.perf_counter()
    values = {}
    for k, label in enumerate(BELL_LABELS):
        p = np.zeros(4)
        p[k] = 1
        path = tmp_path / f"{label}.json"
        io.save_state(bell_diagonal(p), path)
        assert cli.main(["ci", "--state", str(path), "--side", "B"]) == 0
        out = capsys.readouterr().out
        values[label] = float(out.split("clipped:")[1].split()[0])
    elapsed = time.perf_counter() - t0
    worst = max(abs(v - 1) for v in values.values())
    ok = worst <= 1e-9 and elapsed < 1
    record(1, "Bell-state CI = 1", ok, f"max |I^B - 1| = {worst:.1e}, {elapsed:.2f}s")
    assert worst <= 1e-9
    assert elapsed < 1


def test_02_isotropic_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    for F in (0.3, 0.5, 0.7, 0.9, 0.99):
        for d in (2, 3, 4, 8):
            params = IsotropicParams(F, d)
            for side in "AB":
                a = isotropic_ci(params, side)
                b = coherent_info(isotropic(params), side)
                worst = max(worst, abs(a.raw - b.raw), abs(a.clipped - b.clipped))
    elapsed = time.perf_counter() - t0
    record(2, "isotropic closed form", worst <= 1e-10 and elapsed < 5, f"max deviation {worst:.1e}, {elapsed:.2f}s")
    assert worst <= 1e-10
    assert elapsed < 5


def test_03_continuity_lemma():
    t0 = time.perf_counter()
    ratios = verify.lemma_ratios(20)
    elapsed = time.perf_counter() - t0
    monotone = all(ratios[n] < ratios[n + 1] for n in range(2, 20))
    final = ratios[20]
    ok = monotone and final >= 0.98 and elapsed < 1
    record(3, "continuity lemma F_n=1-1/n, d_n=2^n", ok,
           f"monotone={monotone}, ratio(n=20)={final:.6f} (need >= 0.98), {elapsed:.3f}s")
    assert monotone
    assert elapsed < 1
    assert final >= 0.98


def test_04_optimizer_vs_closed_forms():
    t0 = time.perf_counter()
    cfg = OptConfig(n=1, restarts=8, seed=0)
    errors = {}
    for p in (0.05, 0.1, 0.25):
        got = maximize_ci(standard_channel("dephasing", p), cfg).best_ci_per_copy
        errors[f"dephasing {p}"] = abs(got - (1 - binary_entropy(p)))
    got = maximize_ci(standard_channel("erasure", 0.25), cfg).best_ci_per_copy
    errors["erasure 0.25"] = abs(got - 0.5)
    for g in (0.1, 0.25, 0.4):
        ch = standard_channel("amplitude_damping", g)
        errors[f"amplitude damping {g}"] = abs(maximize_ci(ch, cfg).best_ci_per_copy - grid_oracle_diag(ch, 10_000))
    errors["amplitude damping 0.6"] = abs(maximize_ci(standard_channel("amplitude_damping", 0.6), cfg).best_ci_per_copy)
    elapsed = time.perf_counter() - t0
    worst = max(errors.values())
    record(4, "optimizer vs closed forms", worst <= 1e-4 and elapsed < 60, f"max error {worst:.1e}, {elapsed:.1f}s")
    assert worst <= 1e-4, errors
    assert elapsed < 60


def test_05_theorem1_spot_checks():
    t0 = time.perf_counter()
    channels = [standard_channel(k, p) for k in ("dephasing", "depolarizing", "amplitude_damping") for p in (0.1, 0.3)]
    report = verify.check_theorem1_spot(channels, OptConfig(n=1, restarts=8, seed=0))
    elapsed = time.perf_counter() - t0
    ok = report.ok and report.total == 6 and elapsed < 60
    record(5, "twirled-Choi hashing <= max CI", ok,
           f"{report.passed}/{report.total}, worst margin {report.worst_margin():.2e}, {elapsed:.1f}s")
    assert report.ok and report.total == 6
    assert elapsed < 60


def test_06_property_suites():
    t0 = time.perf_counter()
    report = verify.check_ci_properties(10_000, seed=0)
    elapsed = time.perf_counter() - t0
    counts = {}
    for inst in report.instances:
        key = inst.description.split(" #")[0].split(" I^")[0]
        key = "purification independence" if key.startswith("purification") else key
        counts[key] = counts.get(key, 0) + 1
    ok = report.ok and elapsed < 120
    record(6, "property suites", ok, f"{report.passed}/{report.total} instances over {sorted(counts)}, {elapsed:.1f}s")
    assert all(c >= 10_000 for c in counts.values()) and len(counts) == 5, counts
    assert report.ok, report.failures()[:5]
    assert elapsed < 120


def test_07_reduction_criterion():
    t0 = time.perf_counter()
    report = verify.check_reduction_implies_zero_ci(10_000, seed=0, dims_list=((2, 2),))
    elapsed = time.perf_counter() - t0
    singlet = report.instances[0]
    singlet_ok = abs(singlet.lhs + 0.5) <= 1e-9
    ok = report.ok and singlet_ok and not report.inconclusive and elapsed < 60
    record(7, "reduction criterion => zero CI", ok,
           f"{report.parameters['passed_filter']} filtered states, violations {report.total - report.passed}, "
           f"singlet min eig {singlet.lhs:.12f}, {elapsed:.1f}s")
    assert singlet_ok
    assert report.ok and not report.inconclusive
    assert elapsed < 60


def test_08_information_loss():
    t0 = time.perf_counter()
    report = verify.check_info_loss(1000, 4, seed=0)
    elapsed = time.perf_counter() - t0
    ok = report.ok and elapsed < 60
    record(8, "information-loss inequality", ok, f"violations {report.total - report.passed}/{report.total}, {elapsed:.1f}s")
    assert report.ok
    assert elapsed < 60


def test_09_monte_carlo_twirl():
    t0 = time.perf_counter()
    dists = []
    for s in range(5):
        sigma = random_density(4, s, (2, 2))
        dists.append(qla.trace_distance(twirl_monte_carlo(sigma, 10_000, 100 + s), twirl_closed_form(sigma)))
    elapsed = time.perf_counter() - t0
    ok = max(dists) <= 0.02 and elapsed < 30
    record(9, "Monte-Carlo twirl", ok, f"max trace distance {max(dists):.4f}, {elapsed:.1f}s")
    assert max(dists) <= 0.02
    assert elapsed < 30


def _strip_timestamp(text):
    obj = json.loads(text)
    obj["manifest"].pop("timestamp")
    return io.dumps(obj)


def test_10_determinism(tmp_path):
    outputs = []
    for _ in range(2):
        code = cli.main(["verify", "all", "--trials", "200", "--seed", "5", "--out", str(tmp_path)])
        assert code in (cli.EXIT_OK, cli.EXIT_VERIFY)
        outputs.append({p.name: _strip_timestamp(p.read_text()) for p in sorted(tmp_path.glob("*.json"))})
    same = outputs[0] == outputs[1] and len(outputs[0]) == len(verify.SUITES)
    record(10, "verify all is deterministic", same, f"{len(outputs[0])} report files compared")
    assert same
