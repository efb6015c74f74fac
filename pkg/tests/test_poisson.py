import cmath
import math

import numpy as np
import pytest

from gafzeros import presets
from gafzeros.errors import DomainError, PrecisionError
from gafzeros.periodic import PeriodicFunction, mean
from gafzeros.poisson import (AuxValues, K_diag, K_offdiag, KernelPoint, P_op,
                              Q_op, aux_ops, harmonic_extension,
                              poisson_kernel)

ONE = PeriodicFunction.constant(1.0)
X = PeriodicFunction.from_trig([1.0, -1.0])  # 1 - cos s


def test_kernel_point_validation():
    pt = KernelPoint.from_polar(0.6, 0.3)
    assert pt.y == pytest.approx(1 - 0.36)
    with pytest.raises(DomainError):
        KernelPoint.from_z(1.0 + 0j)
    with pytest.raises(DomainError):
        KernelPoint.from_polar(-0.1, 0.0)


def test_poisson_kernel_values():
    s = np.linspace(-3, 3, 25)
    assert np.allclose(poisson_kernel(0.0, s), 1.0)
    for r in (0.2, 0.9, 0.999):
        assert poisson_kernel(r, 0.0) == pytest.approx((1 + r) / (1 - r), rel=1e-12)
        assert np.all(poisson_kernel(r, s) > 0)
    with pytest.raises(DomainError):
        poisson_kernel(1.0, 0.1)


def test_poisson_kernel_small_angle_stability():
    # naive 1 - cos(s) underflows at s = 1e-9; the stable form must not
    r = 0.99999
    stable = (1 - r * r) / ((1 - r) ** 2 + 4 * r * math.sin(0.5e-9) ** 2)
    assert poisson_kernel(r, 1e-9) == pytest.approx(stable, rel=1e-12)
    naive = (1 - r * r) / ((1 - r) ** 2 + 2 * r * (1 - math.cos(1e-9)))
    assert naive != pytest.approx(stable, rel=1e-9)  # the naive form is wrong here


def test_poisson_normalization_high_r():
    assert P_op(ONE, 0.99) == pytest.approx(1.0, abs=1e-10)
    assert P_op(ONE, 0.999999) == pytest.approx(1.0, abs=1e-10)


def test_Q_closed_forms():
    for r in (0.3, 0.9, 0.99, 0.999):
        assert Q_op(ONE, r) == pytest.approx((1 + r * r) / (1 - r * r), rel=1e-12)
        assert Q_op(X, r) == pytest.approx((1 - r) / (1 + r), rel=1e-12)


def test_precision_ceiling():
    with pytest.raises(PrecisionError) as err:
        Q_op(ONE, 1 - 1e-8)
    assert err.value.achievable is not None
    with pytest.raises(PrecisionError):
        harmonic_extension(presets.uniform(), (1 - 1e-8) + 0j)
    with pytest.raises(PrecisionError):
        K_offdiag(presets.uniform(), (1 - 1e-8) + 0j, 0.2 + 0j)


def test_aux_identity_V_eq_I_plus_K():
    h = PeriodicFunction.from_trig([1.0, 0.4, 0.0, 0.2])
    for r in (0.5, 0.9, 0.99, 0.999):
        vals = aux_ops(h, r)
        assert isinstance(vals, AuxValues)
        assert vals.V == pytest.approx(mean(h) + (1 - r) * vals.K, rel=1e-8)


def test_aux_identity_U_vs_P():
    h = X
    for r in (0.5, 0.9, 0.99):
        vals = aux_ops(h, r)
        rhs = mean(h) - (1 - r * r) / (1 + r) ** 2 * P_op(h, r)
        assert r * vals.U == pytest.approx(rhs, abs=1e-12)


def test_aux_K_limit_constant():
    # K_r(1) tends to 2*mean - 3/4 = 5/4 as r -> 1
    vals = aux_ops(ONE, 0.9999)
    assert vals.K == pytest.approx(1.25, abs=2e-4)


def test_fatou_convergence():
    h = PeriodicFunction.from_trig([1.0, 0.5, 0.25])
    gaps = [abs(P_op(h, r) - h(0.0)) for r in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_symmetry_filtering():
    # the squared kernel only sees the matching parity component
    f = PeriodicFunction.from_trig([1.0, 0.3, 0.1], [0.0, 0.4, -0.2])
    for r in (0.5, 0.95):
        assert Q_op(f, r) == pytest.approx(Q_op(f.hat(), r), rel=1e-12)
        assert Q_op(f.times_cos(), r) == pytest.approx(
            Q_op(f.hat().times_cos(), r), rel=1e-12)
        assert Q_op(f.times_sin(), r) == pytest.approx(
            Q_op(f.check().times_sin(), r), rel=1e-12)


def test_harmonic_extension_uniform():
    U = presets.uniform()
    for z in (0.0, 0.3 + 0.4j, 0.99j):
        assert harmonic_extension(U, z) == pytest.approx(1.0, abs=1e-12)
        assert K_diag(U, z) == pytest.approx(1 / (1 - abs(z) ** 2), rel=1e-12)


def test_K_offdiag_uniform_geometric_series_oracle():
    U = presets.uniform()
    rng = np.random.default_rng(4)
    for _ in range(6):
        z = (rng.uniform(0, 0.9) * cmath.exp(1j * rng.uniform(-math.pi, math.pi)))
        w = (rng.uniform(0, 0.9) * cmath.exp(1j * rng.uniform(-math.pi, math.pi)))
        got = K_offdiag(U, z, w)
        # independent oracle: partial geometric sum of z^k conj(w)^k
        q = z * np.conj(w)
        oracle = sum(q ** k for k in range(420))
        assert got == pytest.approx(oracle, rel=1e-10)


def test_K_single_atom():
    A = presets.atoms([(0.0, 1.0)])
    z = 0.55 * cmath.exp(0.4j)
    assert K_diag(A, z) == pytest.approx(1 / abs(1 - z) ** 2, rel=1e-13)
    w = 0.3 * cmath.exp(-1.0j)
    want = 1 / ((1 - z) * np.conj(1 - w))
    assert K_offdiag(A, z, w) == pytest.approx(want, rel=1e-13)


def test_kernel_positivity_and_cauchy_schwarz():
    rng = np.random.default_rng(11)
    measures = [presets.uniform(), presets.ma1(0.4),
                presets.indicator(-math.pi / 2, math.pi / 2),
                presets.mix((0.7, presets.uniform()),
                            (0.3, presets.atoms([(1.0, 1.0)])))]
    for F in measures:
        for _ in range(8):
            z = rng.uniform(0, 0.95) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
            w = rng.uniform(0, 0.95) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
            kzz = K_diag(F, z)
            kww = K_diag(F, w)
            kzw = K_offdiag(F, z, w)
            assert kzz > 0
            assert abs(kzw) ** 2 <= kzz * kww * (1 + 1e-10)


def test_harmonic_extension_matches_offdiag_on_diagonal():
    F = presets.ma1(0.25)
    z = 0.8 * cmath.exp(2.2j)
    kd = K_diag(F, z)
    ko = K_offdiag(F, z, z)
    assert kd == pytest.approx(ko.real, rel=1e-10)
    assert abs(ko.imag) < 1e-12 * kd
