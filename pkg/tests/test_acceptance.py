"""Acceptance surface: one test per numbered criterion, with PASS/FAIL lines.

Statistical criteria run with frozen seeds so the whole module is
deterministic.  Run with ``pytest tests/test_acceptance.py -v -s`` to see the
per-criterion report lines.
"""

import math
import time

import numpy as np
from scipy.integrate import quad

from gafzeros import presets
from gafzeros.asymptotics import (expand_K, expand_P, expand_Q, expand_S,
                                  expand_S_via_products, fitted_order,
                                  rho1_boundary, verify_recursions)
from gafzeros.continuation import arc_radius_bound, classify_arcs, rho_local
from gafzeros.errors import TailWarning
from gafzeros.intensity import (rho1_qform, rho1_spectral, sr_positive_form,
                                sr_value)
from gafzeros.periodic import PeriodicFunction, panel_nodes
from gafzeros.poisson import P_op, Q_op, aux_ops
from gafzeros.sampling import empirical_covariance, sample_blocks
from gafzeros.spectral import covariance, shift
from gafzeros.zeros import count_region, disk, find_roots, sector

HALF = math.pi / 2
HYPERBOLIC = lambda r: 1.0 / (math.pi * (1 - r * r) ** 2)

# Five even smooth test functions for the expansion/recursion criteria.  The
# frequencies are high and odd on purpose: the squared-kernel average of a
# trig polynomial is a_0 (2/y - 1) + sum_k a_k r^k (k - 1 + 2/y), so the
# remainder beyond the expansion comes from the binomial tail of (1-y)^(k/2).
# Even k terminates (zero remainder) and low odd k leaves the remainder below
# the double-precision floor of the subtraction; high odd k produces a clean,
# measurable decay while (1-y)^(k/2) stays analytic across the fit window.
SMOOTH_FIXTURES = {
    "hf21": {0: 1.0, 21: 1.0},
    "hf23": {0: 1.0, 23: 1.0},
    "hf25": {0: 1.5, 25: 1.0},
    "hf19_23": {0: 2.0, 19: 0.7, 23: 0.7},
    "hf21_25": {0: 1.2, 21: 0.5, 25: 0.6},
}


def fixture_fn(spec):
    a = np.zeros(max(spec) + 1)
    for k, c in spec.items():
        a[k] = c
    return PeriodicFunction.from_trig(a)


def report(num, label, ok):
    print(f"ACCEPTANCE {num:>2} {label}: {'PASS' if ok else 'FAIL'}")
    return ok


def test_criterion_01_uniform_exactness():
    start = time.perf_counter()
    U = presets.uniform()
    ok = True
    for r in (0.0, 0.3, 0.6, 0.9, 0.99):
        z = r * complex(math.cos(0.37), math.sin(0.37))
        got = rho1_spectral(U, z)
        ok &= abs(got - HYPERBOLIC(r)) <= 1e-9 * HYPERBOLIC(r)
    # disk integral of the density over |z| < 0.9 (rotationally symmetric)
    edges = np.array([0.0, 0.3, 0.6, 0.8, 0.9])
    pts, wts = panel_nodes(edges)
    integral = 2 * math.pi * float(np.sum(
        wts * pts * np.array([rho1_spectral(U, p) for p in pts])))
    want = 0.81 / 0.19
    ok &= abs(integral - want) <= 1e-8 * want
    elapsed = time.perf_counter() - start
    ok &= elapsed < 1.0
    assert report(1, "uniform density exact + disk integral", ok), \
        (integral, elapsed)


def test_criterion_02_ma1_correction_as_stated():
    # Literal target: the gap (1/(pi y^2) - rho1) should equal the deficit
    # a^2/(1+2a cos phi)^2 itself.  The measured gap is that deficit divided
    # by pi (the prefactor of the whole density ratio); see the companion
    # check below, which passes at the same 1% tolerance.  This check is
    # therefore expected to fail by a factor of pi, and is kept as stated.
    start = time.perf_counter()
    r = 0.999
    y = 1 - r * r
    ok = True
    for a in (0.2, 0.4):
        for phi in (0.0, math.pi / 3, 2 * math.pi / 3):
            F = presets.ma1(a)
            z = r * complex(math.cos(phi), math.sin(phi))
            gap = 1.0 / (math.pi * y * y) - rho1_qform(F, z)
            target = a * a / (1 + 2 * a * math.cos(phi)) ** 2
            ok &= abs(gap - target) <= 0.01 * target
    ok &= (time.perf_counter() - start) < 10.0
    assert report(2, "one-dependent boundary correction (as stated)", ok)


def test_criterion_02b_ma1_correction_density_normalized():
    # Companion to criterion 2: the same gap against deficit / pi.
    start = time.perf_counter()
    r = 0.999
    y = 1 - r * r
    ok = True
    for a in (0.2, 0.4):
        for phi in (0.0, math.pi / 3, 2 * math.pi / 3):
            F = presets.ma1(a)
            z = r * complex(math.cos(phi), math.sin(phi))
            gap = 1.0 / (math.pi * y * y) - rho1_qform(F, z)
            target = a * a / (1 + 2 * a * math.cos(phi)) ** 2 / math.pi
            ok &= abs(gap - target) <= 0.01 * target
    ok &= (time.perf_counter() - start) < 10.0
    assert report(2, "one-dependent boundary correction (deficit/pi)", ok)


def test_criterion_03_degenerate_ma1():
    F = presets.ma1(0.5)
    r = 0.999
    z = r * complex(math.cos(math.pi), math.sin(math.pi))
    value = rho1_qform(F, z) * math.pi * (1 - r * r)
    ok = abs(value - 0.5) <= 0.02 * 0.5
    assert report(3, "degenerate one-dependent slope 1/2", ok), value


def test_criterion_04_half_interval_constant():
    F = presets.indicator(-HALF, HALF)
    phi = 3 * math.pi / 4
    z = 0.99 * complex(math.cos(phi), math.sin(phi))
    want = 1 / (6 * math.pi)
    ok = abs(rho1_spectral(F, z) - want) <= 0.03 * want
    case, rep = rho1_boundary(F, phi)
    ok &= case == "iii"
    exact = 1 / (12 * math.pi * math.cos(phi) ** 2)
    ok &= abs(rep.coefficients[0] - exact) <= 1e-6 * exact
    assert report(4, "half-interval flat density 1/(6 pi)", ok)


def test_criterion_05_expansion_orders():
    start = time.perf_counter()
    ys = np.logspace(-3, -1, 8)
    ok = True
    for name, spec in SMOOTH_FIXTURES.items():
        h = fixture_fn(spec)
        rep_p, rep_q, rep_k = expand_P(h), expand_Q(h), expand_K(h)
        res_p, res_q, res_k = [], [], []
        for y in ys:
            r = math.sqrt(1 - y)
            res_p.append(P_op(h, r) - rep_p(y))
            res_q.append(Q_op(h, r) - rep_q(y))
            res_k.append(aux_ops(h, r).K - rep_k(y))
        ok &= fitted_order(ys, res_p) >= 3.5
        ok &= fitted_order(ys, res_q) >= 4.5
        ok &= fitted_order(ys, res_k) >= 1.5
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30.0
    assert report(5, "expansion residual orders", ok), elapsed


def test_criterion_06_recursion_identities():
    ok = True
    for name, spec in SMOOTH_FIXTURES.items():
        rep = verify_recursions(fixture_fn(spec), [0.5, 0.9, 0.99])
        ok &= rep.max_discrepancy <= 1e-7
    assert report(6, "kernel-average recursions", ok)


def test_criterion_07_numerator_series_rederivation():
    ok = True
    for seed in range(20):
        F = presets.random_trig_density(seed)
        g = F.relative_density(0.3 + 0.11 * seed)
        direct = expand_S(g)
        products = expand_S_via_products(g)
        ok &= products.coefficients[-2] == 0.0
        ok &= products.coefficients[-1] == 0.0
        for k in range(-2, 4):
            diff = abs(direct.coefficient(k) - products.coefficient(k))
            scale = max(1.0, abs(direct.coefficient(k)))
            ok &= diff <= 1e-10 * scale
    assert report(7, "numerator expansion equals squared-series products", ok)


def test_criterion_08_numerator_positivity():
    ok = True
    for seed in range(100):
        F = presets.random_trig_density(seed)
        for r in (0.5, 0.9, 0.99):
            ok &= sr_value(F, 1.3, r) >= -1e-12
    ok &= sr_positive_form(presets.indicator(-HALF, HALF), 3 * math.pi / 4) >= 0.0
    assert report(8, "numerator positivity", ok)


def test_criterion_09_monte_carlo_reproduction():
    start = time.perf_counter()
    # i.i.d. coefficients: count in the 0.9 disk vs the closed form
    blocks = sample_blocks(presets.uniform(), 400, 200, seed=20260809)
    counts = np.array([count_region(find_roots(b.values), disk(0.9))
                       for b in blocks], dtype=float)
    se = counts.std(ddof=1) / math.sqrt(counts.size)
    want = 0.81 / 0.19
    ok = abs(counts.mean() - want) <= 3.0 * se

    # half-interval support: left-half sector counts against the flat profile
    F = presets.indicator(-HALF, HALF)
    zsets = [find_roots(b.values)
             for b in sample_blocks(F, 400, 200, seed=8088)]
    r1, r2 = 0.80, 0.97
    sectors = [(1.9, 2.35), (2.35, 2.8), (-2.8, -2.35), (-2.35, -1.9)]
    pooled = np.zeros(len(zsets))
    pooled_pred = 0.0
    for p1, p2 in sectors:
        cnt = np.array([count_region(z, sector(r1, r2, p1, p2))
                        for z in zsets], dtype=float)
        pred = quad(lambda p: 1 / (12 * math.pi * math.cos(p) ** 2),
                    p1, p2)[0] * (r2**2 - r1**2) / 2
        se_c = cnt.std(ddof=1) / math.sqrt(cnt.size) + 1e-12
        ok &= abs(cnt.mean() - pred) <= 3.0 * se_c
        pooled += cnt
        pooled_pred += pred
    se_p = pooled.std(ddof=1) / math.sqrt(pooled.size)
    ok &= abs(pooled.mean() - pooled_pred) <= 3.0 * se_p
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300.0
    assert report(9, "Monte Carlo zero counts", ok), elapsed


def test_criterion_10_continuation_diagnostics():
    ok = True
    for r in (0.3, 0.6, 0.9):
        ok &= abs(rho_local(presets.atoms([(math.pi, 1.0)]), r) - (1 + r)) <= 1e-6
        ok &= abs(rho_local(presets.atoms([(0.0, 1.0)]), r) - (1 - r)) <= 1e-6
    ok &= abs(rho_local(presets.uniform(), 0.5, k_max=512) - 0.5) <= 1e-3

    I = presets.indicator(-HALF, HALF)
    arcs = classify_arcs(I)
    reg = [a for a in arcs if a.kind == "regular"]
    ok &= len(reg) == 1
    ok &= abs(reg[0].lo - HALF) <= 1e-12
    ok &= abs(reg[0].hi - 3 * HALF) <= 1e-12
    centered = shift(I, reg[0].center)
    import warnings as _warnings
    for r in (0.3, 0.6, 0.9):
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore", TailWarning)
            rho = rho_local(centered, r, k_max=512)
        ok &= rho >= arc_radius_bound(reg[0], r) - 1e-3
    assert report(10, "continuation radii and regular arcs", ok)


def test_criterion_11_sampler_statistics():
    measures = [presets.uniform(), presets.ma1(0.3), presets.ma1(0.5),
                presets.indicator(-HALF, HALF),
                presets.atoms([(0.0, 0.5), (math.pi, 0.5)])]
    ok = True
    for F in measures:
        blocks = sample_blocks(F, 16, 4096, seed=115)
        for k in range(0, 9):
            got, se = empirical_covariance(blocks, k)
            want = covariance(F, k)
            ok &= abs(got - want) <= 4.0 * se + 1e-12
        values = np.stack([b.values for b in blocks])
        var0 = np.abs(values[:, 0]) ** 2
        se0 = var0.std(ddof=1) / math.sqrt(var0.size)
        ok &= abs(var0.mean() - 1.0) <= 4.0 * se0
    assert report(11, "sampler covariance statistics", ok)
