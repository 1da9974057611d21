"""Acceptance suite: the ten headline checks for the package.

Each test covers exactly one criterion and prints a single ``PASS``/``FAIL``
line with its elapsed time (visible under ``pytest -s``; under plain
``pytest -v`` the test outcome line itself serves the same purpose).
Criteria with a stated runtime budget fail if they exceed it.

Known failure: in criterion 8 the entanglement-vs-mutual-information rank
correlation over the random probe family measures ~0.958 against the 0.99
bar asserted here (discord-vs-mutual-information passes at ~0.999).  The gap
is structural — entanglement saturates under a one-sided thermal pool while
total correlations keep growing — and the bar is kept rather than loosened,
so that test fails by design until the bar itself is revisited.
"""

import functools
import math
import time

import numpy as np
from scipy.stats import spearmanr

from lossprobe.channel import LossChannel
from lossprobe.cli import main
from lossprobe.correlations import correlation_report
from lossprobe.gaussian import make_two_mode_st
from lossprobe.probes import (
    ProbeSpec,
    critical_transmissivity,
    cubic_residual,
    delta_q,
    delta_q_gamma,
    params_from_spec,
    q1,
    q1_analytic,
    q2,
    q2_analytic,
    random_sweep,
    threshold_energy,
    threshold_fit_near_critical,
)
from lossprobe.verification import run_all

GAMMA_BAR = 0.999  # near-total asymmetry of the thermal split


def criterion(number, title, time_limit=None):
    """Print one PASS/FAIL line per criterion, enforcing a runtime budget."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
                dt = time.perf_counter() - t0
                if time_limit is not None and dt > time_limit:
                    raise AssertionError(
                        f"runtime {dt:.2f} s exceeds the {time_limit:g} s budget"
                    )
            except BaseException:
                dt = time.perf_counter() - t0
                print(f"FAIL  criterion {number:>2}: {title}  ({dt:.2f} s)")
                raise
            print(f"PASS  criterion {number:>2}: {title}  ({dt:.2f} s)")

        return wrapper

    return deco


def _strictly_increasing(values) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def _strictly_decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _probe_points(count: int, seed: int):
    """Deterministic (n, beta, gamma_ch) triples with n in (0, 5], gamma in (0, 2]."""
    for k in range(count):
        rng = np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, k]))
        u = rng.uniform(size=3)
        yield 5.0 * (1.0 - u[0]), float(u[1]), 2.0 * (1.0 - u[2])


# Grids shared by criteria 3 and 7.
N_GRID = np.linspace(0.4, 20.0, 50)
ETA_GRID = np.linspace(0.05, 0.99, 20)


@criterion(1, "critical transmissivity and loss exponent", time_limit=1.0)
def test_criterion_01_critical_point():
    eta_c, gamma_c = critical_transmissivity()
    assert 0.294 <= eta_c <= 0.298, eta_c
    assert 1.21 <= gamma_c <= 1.23, gamma_c
    assert math.isclose(gamma_c, -math.log(eta_c), rel_tol=1e-14)
    assert abs(cubic_residual()) < 1e-12


@criterion(2, "quadratic threshold fit near the critical point", time_limit=5.0)
def test_criterion_02_threshold_fit():
    c1, c2, rms = threshold_fit_near_critical()
    assert 3.5 <= c1 <= 4.5, c1
    assert 4.5 <= c2 <= 6.5, c2
    assert rms < 1e-3, rms


@criterion(3, "pipeline matches closed forms at full squeezing", time_limit=10.0)
def test_criterion_03_closed_form_agreement():
    worst = 0.0
    for eta in ETA_GRID:
        ch = LossChannel.from_eta(float(eta))
        for n in N_GRID:
            worst = max(worst, abs(q1(float(n), 1.0, ch) - q1_analytic(float(n), float(eta))))
            worst = max(worst, abs(q2(float(n), 1.0, 1.0, ch) - q2_analytic(float(n), float(eta))))
    assert worst <= 1e-9, worst


@criterion(4, "pure squeezing is the optimal budget split")
def test_criterion_04_beta_optimum_at_one():
    betas = np.linspace(0.0, 1.0, 101)
    for gamma_ch in (0.1, 0.69, 2.3):
        ch = LossChannel.from_gamma(gamma_ch)
        for n in (0.5, 1.0, 2.0, 5.0):
            q1s = [q1(n, float(b), ch) for b in betas]
            q2s = [q2(n, float(b), 1.0, ch) for b in betas]
            assert int(np.argmin(q1s)) == len(betas) - 1, (gamma_ch, n)
            assert int(np.argmin(q2s)) == len(betas) - 1, (gamma_ch, n)


@criterion(5, "two-mode advantage and optimal thermal split", time_limit=30.0)
def test_criterion_05_two_mode_advantage():
    # The strict inequality is a sample statistic, not a for-all claim: a
    # sliver of relative volume ~2e-5 hugging beta = 1 (below the threshold
    # energy, at weak damping) genuinely has Q2 > Q1 by continuity with the
    # pure-probe threshold behavior.  The frozen seed's 1000 draws sit far
    # from it; beta within 1e-3 of 1 is where the exceptions live.
    gamma_grid = np.linspace(0.0, 1.0, 11)
    for n, beta, gamma_ch in _probe_points(1000, seed=20240519):
        ch = LossChannel.from_gamma(gamma_ch)
        v1 = q1(n, beta, ch)
        v2 = q2(n, beta, 1.0, ch)
        assert v2 < v1, (n, beta, gamma_ch)
        for g in gamma_grid:
            assert v2 <= q2(n, beta, float(g), ch) + 1e-12, (n, beta, gamma_ch, g)


@criterion(6, "truncated-basis oracle agrees with the Gaussian pipeline", time_limit=120.0)
def test_criterion_06_oracle_equivalence():
    results = run_all()
    assert len({r.case for r in results}) >= 12
    failures = [r for r in results if not r.passed]
    assert not failures, [(f.case, f.check, f.value, f.tol) for f in failures]


@criterion(7, "monotonicity of the headline quantities")
def test_criterion_07_monotonicity():
    # Q decreases strictly with energy at every loss level, and increases
    # strictly with transmissivity at every energy.
    for eta in ETA_GRID:
        ch = LossChannel.from_eta(float(eta))
        assert _strictly_decreasing([q1(float(n), 1.0, ch) for n in N_GRID]), eta
        assert _strictly_decreasing([q2(float(n), 1.0, 1.0, ch) for n in N_GRID]), eta
    for n in N_GRID:
        by_eta_1 = [q1(float(n), 1.0, LossChannel.from_eta(float(e))) for e in ETA_GRID]
        by_eta_2 = [q2(float(n), 1.0, 1.0, LossChannel.from_eta(float(e))) for e in ETA_GRID]
        assert _strictly_increasing(by_eta_1), n
        assert _strictly_increasing(by_eta_2), n

    # The threshold energy never decreases as the channel gets cleaner.
    eta_c, _ = critical_transmissivity()
    eta_axis = np.linspace(eta_c + 1e-3, 0.99, 40)
    thresholds = [threshold_energy(float(e)) for e in eta_axis]
    assert all(b >= a for a, b in zip(thresholds, thresholds[1:]))

    # The two-mode gain grows strictly with loss at fixed interior-beta probes.
    # The sample points keep beta away from the endpoints: at beta = 0 the two
    # probes coincide (gain identically zero) and at beta = 1 the gain changes
    # sign at the threshold energy, so neither endpoint is monotone in Gamma.
    # The window stops at Gamma = 1.5 because the gain peaks near Gamma ~ 2
    # and declines as both probes decohere toward the same thermal output.
    gamma_axis = np.linspace(0.05, 1.5, 30)
    for n, beta in [(0.5, 0.2), (1.0, 0.5), (2.0, 0.8), (3.0, 0.5), (5.0, 0.3)]:
        gains = [delta_q(n, beta, LossChannel.from_gamma(float(g))) for g in gamma_axis]
        assert gains[0] > 0.0, (n, beta)
        assert _strictly_increasing(gains), (n, beta)


@criterion(8, "correlation quantifiers track the two-mode gain")
def test_criterion_08_correlations_track_gain():
    n_axis = np.linspace(5.0 / 101, 5.0, 101)

    def cm(n, beta):
        p = params_from_spec(ProbeSpec(modes=2, n=float(n), beta=float(beta), gamma=GAMMA_BAR))
        return make_two_mode_st(p)

    for beta in (0.1, 0.9):
        reports = [correlation_report(cm(n, beta)) for n in n_axis]
        assert _strictly_increasing([r.log_negativity for r in reports]), beta
        assert _strictly_increasing([r.discord for r in reports]), beta
        assert _strictly_increasing([r.mutual_information for r in reports]), beta
        for gamma_ch in (0.1, 0.5, 0.9):
            ch = LossChannel.from_gamma(gamma_ch)
            gains = [delta_q_gamma(float(n), beta, GAMMA_BAR, ch) for n in n_axis]
            assert _strictly_increasing(gains), (beta, gamma_ch)

    # Rank agreement across a broad random family of probe states.  Note the
    # two bands have genuinely different thickness: discord tracks mutual
    # information tightly, while entanglement at fixed I still depends
    # strongly on the squeezing fraction (the one-sided thermal pool pushes
    # low-beta states toward separability without erasing their total
    # correlations), so the E-vs-I rank correlation sits near 0.958.
    e_vals, d_vals, i_vals = [], [], []
    for n, beta, _ in _probe_points(10_000, seed=20240520):
        report = correlation_report(cm(n, beta))
        e_vals.append(report.log_negativity)
        d_vals.append(report.discord)
        i_vals.append(report.mutual_information)
        if report.discord > 1.0:
            assert report.log_negativity > 0.0, (n, beta)
    rho_ei = float(spearmanr(e_vals, i_vals).statistic)
    rho_di = float(spearmanr(d_vals, i_vals).statistic)
    failures = []
    if not rho_ei > 0.99:
        failures.append(f"Spearman(E, I) = {rho_ei:.5f} (required > 0.99)")
    if not rho_di > 0.99:
        failures.append(f"Spearman(D, I) = {rho_di:.5f} (required > 0.99)")
    assert not failures, "; ".join(failures)


@criterion(9, "gain stays positive under near-total split asymmetry")
def test_criterion_09_positive_fraction():
    # Seed 12345 is the package default (the shipped sweep artifacts use it).
    # The population fraction at gamma = 0.99 is ~0.992, so 1000-sample draws
    # land near 0.99 with sigma ~ 0.003.
    fractions = {}
    for gamma in (0.99, 0.9, 0.8, 0.7):
        records = random_sweep(1000, gamma=gamma, seed=12345)
        fractions[gamma] = sum(r.delta_q > 0 for r in records) / len(records)
    print(
        "      positive-gain fraction by split:",
        ", ".join(f"gamma={g:g}: {f:.3f}" for g, f in fractions.items()),
    )
    assert fractions[0.99] >= 0.99, fractions


@criterion(10, "every CSV artifact is byte-for-byte deterministic")
def test_criterion_10_csv_determinism(tmp_path):
    def render(dest):
        dest.mkdir()
        commands = [
            ["sweep", "--samples", "30", "--seed", "9", "-o", str(dest / "sweep.csv")],
            ["threshold", "--eta-grid", "0.3:0.6:5", "--format", "csv",
             "-o", str(dest / "threshold.csv")],
            ["figure", "2", "--points", "4", "--outdir", str(dest)],
            ["figure", "3", "--points", "4", "--outdir", str(dest)],
            ["figure", "4", "--points", "4", "--outdir", str(dest)],
            ["figure", "5", "--gamma", "0.9", "--samples", "20", "--seed", "9",
             "--outdir", str(dest)],
            ["figure", "6", "--beta", "0.1", "--points", "4", "--samples", "6",
             "--seed", "9", "--outdir", str(dest)],
        ]
        for argv in commands:
            assert main(argv) == 0, argv

    first, second = tmp_path / "a", tmp_path / "b"
    render(first)
    render(second)
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    assert len(names) >= 10, names
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
