import json
import math
import warnings

import numpy as np
import pytest

from gafzeros import presets
from gafzeros.continuation import (Arc, arc_radius_bound, classify_arcs,
                                   continuation_report, log_variance_alpha,
                                   rho_local, variance_alpha)
from gafzeros.errors import DomainError, SupportUnknown, TailWarning
from gafzeros.periodic import PeriodicFunction
from gafzeros.spectral import SpectralMeasure, shift

HALF = math.pi / 2


def test_variance_atom_closed_forms():
    Api = presets.atoms([(math.pi, 1.0)])
    A0 = presets.atoms([(0.0, 1.0)])
    for r in (0.3, 0.5, 0.9):
        for k in (0, 3, 10):
            assert variance_alpha(Api, r, k) == pytest.approx(
                (1 + r) ** (-2 * (k + 1)), rel=1e-12)
            assert variance_alpha(A0, r, k) == pytest.approx(
                (1 - r) ** (-2 * (k + 1)), rel=1e-12)


def test_variance_uniform_k0_matches_kernel_diagonal():
    U = presets.uniform()
    assert variance_alpha(U, 0.5, 0) == pytest.approx(4.0 / 3.0, rel=1e-10)


def test_variance_overflow_goes_to_log_space():
    A0 = presets.atoms([(0.0, 1.0)])
    lv = log_variance_alpha(A0, 0.9, 512)
    assert lv == pytest.approx(-2 * 513 * math.log(0.1), rel=1e-12)
    assert variance_alpha(A0, 0.9, 512) == math.inf


def test_variance_vectorized_ks():
    U = presets.uniform()
    lv = log_variance_alpha(U, 0.5, np.array([1, 2, 4]))
    assert lv.shape == (3,)
    assert np.all(np.diff(lv) > 0)


def test_rho_local_atoms_exact():
    for r in (0.3, 0.6, 0.9):
        assert rho_local(presets.atoms([(math.pi, 1.0)]), r) == pytest.approx(
            1 + r, abs=1e-6)
        assert rho_local(presets.atoms([(0.0, 1.0)]), r) == pytest.approx(
            1 - r, abs=1e-6)


def test_rho_local_uniform():
    got = rho_local(presets.uniform(), 0.5, k_max=512)
    assert got == pytest.approx(0.5, abs=1e-3)


def test_rho_local_needs_tail():
    with pytest.raises(DomainError):
        rho_local(presets.uniform(), 0.5, k_max=32)


def test_variance_ratio_lower_bound():
    # var_{k+1} >= var_k * min over the support of 1/(1 - 2 r cos t + r^2)
    cases = [
        (presets.uniform(), (1 + 0.6) ** 2),
        (presets.indicator(-HALF, HALF), 1 - 2 * 0.6 * math.cos(HALF) + 0.36),
        (presets.atoms([(0.0, 0.5), (math.pi, 0.5)]), (1 + 0.6) ** 2),
    ]
    r = 0.6
    for F, max_d in cases:
        lv = log_variance_alpha(F, r, np.arange(0, 12))
        steps = np.diff(lv)
        assert np.all(steps >= -math.log(max_d) - 1e-10), F.label


def test_classify_uniform_full_circle():
    arcs = classify_arcs(presets.uniform())
    assert len(arcs) == 1
    assert arcs[0].kind == "singular"
    assert arcs[0].hi - arcs[0].lo == pytest.approx(2 * math.pi)


def test_classify_half_interval():
    arcs = classify_arcs(presets.indicator(-HALF, HALF))
    kinds = {a.kind for a in arcs}
    assert kinds == {"regular", "singular"}
    reg = [a for a in arcs if a.kind == "regular"]
    assert len(reg) == 1
    assert reg[0].lo == pytest.approx(HALF, abs=1e-12)
    assert reg[0].hi == pytest.approx(3 * HALF, abs=1e-12)
    sing = [a for a in arcs if a.kind == "singular"]
    assert sing[0].lo == pytest.approx(-HALF, abs=1e-12)
    assert sing[0].hi == pytest.approx(HALF, abs=1e-12)


def test_classify_two_atoms():
    arcs = classify_arcs(presets.atoms([(0.0, 0.5), (math.pi, 0.5)]))
    points = [a for a in arcs if a.kind == "singular"]
    gaps = [a for a in arcs if a.kind == "regular"]
    assert len(points) == 2
    assert all(a.lo == a.hi for a in points)
    assert len(gaps) == 2
    assert sum(a.hi - a.lo for a in gaps) == pytest.approx(2 * math.pi)


def test_classify_smooth_positive_density():
    arcs = classify_arcs(presets.ma1(0.3))
    assert len(arcs) == 1 and arcs[0].kind == "singular"
    # isolated zero of the density (a = 1/2 at t = pi) does not open an arc
    arcs = classify_arcs(presets.ma1(0.5))
    assert len(arcs) == 1 and arcs[0].kind == "singular"


def test_classify_refuses_unstructured_vanishing():
    def bump(s):
        out = np.cos(s) - 0.5
        return np.where(out > 0, out, 0.0) / 2.275730985272986
    dens = PeriodicFunction.from_callable(bump)
    F = SpectralMeasure(density=dens, label="flat-bump")
    with pytest.raises(SupportUnknown):
        classify_arcs(F)


def test_regular_arc_bound_holds():
    I = presets.indicator(-HALF, HALF)
    reg = [a for a in classify_arcs(I) if a.kind == "regular"][0]
    centered = shift(I, reg.center)  # support now faces away from direction 0
    for r in (0.3, 0.6, 0.9):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TailWarning)
            rho = rho_local(centered, r, k_max=512)
        assert rho >= arc_radius_bound(reg, r) - 1e-3


def test_support_point_upper_bound():
    # when the measure charges the direction of r, rho cannot exceed 1 - r
    U = presets.uniform()
    for r in (0.3, 0.6, 0.9):
        assert rho_local(U, r, k_max=512) <= 1 - r + 1e-3


def test_arc_bound_validation():
    with pytest.raises(DomainError):
        arc_radius_bound(Arc(0.0, 1.0, "singular"), 0.5)


def test_tail_warning_fires_on_slow_tail():
    I = shift(presets.indicator(-HALF, HALF), math.pi)
    with pytest.warns(TailWarning):
        rho_local(I, 0.3, k_max=128)


def test_continuation_report_json():
    rep = continuation_report(presets.indicator(-HALF, HALF), 0.5, k_max=128)
    payload = json.loads(rep.to_json())
    assert payload["r"] == 0.5
    assert len(payload["log_var_sequence"]) == 129
    kinds = {a["kind"] for a in payload["arcs"]}
    assert kinds == {"regular", "singular"}
    reg = [a for a in payload["arcs"] if a["kind"] == "regular"][0]
    assert reg["radius_bound"] == pytest.approx(
        math.sqrt(1 - 2 * 0.5 * math.cos(math.pi / 2) + 0.25))
    assert payload["rho_estimate"] == pytest.approx(0.5, abs=1e-3)
