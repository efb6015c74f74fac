"""Boundary expansions of the kernel averages and of the zero density.

Everything here is organized around six scalar functionals of an even
function h: h(0), h''(0), h''''(0), and the period averages of Th, T^2 h,
T^3 h, where T is the difference quotient (h - h(0))/(1 - cos s).  The
expansions are polynomials in y = 1 - r^2 whose coefficients are fixed
rational combinations of those functionals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateDenominator, DomainError
from .periodic import PI, PeriodicFunction, mean, t_operator
from .poisson import P_op, aux_ops
from .spectral import SpectralMeasure

__all__ = [
    "ExpansionReport", "expand_P", "expand_Q", "expand_K", "expand_S",
    "expand_S_via_products", "rho1_boundary", "verify_recursions",
    "RecursionReport", "fitted_order",
]


@dataclass(frozen=True)
class ExpansionReport:
    """Truncated expansion in powers of y = 1 - r^2.

    ``coefficients`` maps the integer power k to its coefficient; only powers
    the source formula controls are present.  ``valid_order`` is the largest
    k with a controlled remainder; ``inputs`` records the scalar functionals
    the coefficients were assembled from.
    """

    coefficients: dict[int, float]
    valid_order: int
    source: str
    inputs: dict[str, float] = field(default_factory=dict)
    variable: str = "y"

    def __call__(self, y: float) -> float:
        return float(sum(c * float(y) ** k for k, c in self.coefficients.items()))

    def coefficient(self, k: int) -> float:
        return self.coefficients.get(k, 0.0)


def _require_even_smooth(h: PeriodicFunction):
    if not h.smooth_at_zero:
        raise DomainError("expansion requires smoothness at s = 0")
    if not h.is_even():
        raise DomainError("expansion requires an even function")


def scalar_functionals(h: PeriodicFunction, depth: int = 3) -> dict[str, float]:
    """The derivative and averaged-quotient functionals driving all expansions."""
    _require_even_smooth(h)
    out = {
        "h0": h.derivative_at_zero(0),
        "d2": h.derivative_at_zero(2),
        "d4": h.derivative_at_zero(4),
        "I_h": mean(h),
    }
    t = h
    for m in range(1, depth + 1):
        t = t_operator(t)
        out[f"I_T{m}h"] = mean(t)
    return out


def expand_P(h: PeriodicFunction) -> ExpansionReport:
    """Poisson average to third order: the sharpened boundary-limit statement."""
    f = scalar_functionals(h, depth=2)
    h0, d2, i1, i2 = f["h0"], f["d2"], f["I_T1h"], f["I_T2h"]
    coeffs = {
        0: h0,
        1: i1 / 2.0,
        2: (i1 - d2 / 2.0) / 4.0,
        3: (1.5 * i1 - d2 - i2 / 2.0) / 8.0,
    }
    return ExpansionReport(coefficients=coeffs, valid_order=3, source="poisson_average",
                           inputs=f)


def expand_Q(h: PeriodicFunction) -> ExpansionReport:
    """Squared-kernel average from its diverging 1/y term down to y^4."""
    f = scalar_functionals(h, depth=3)
    h0, d2, d4 = f["h0"], f["d2"], f["d4"]
    i2, i3 = f["I_T2h"], f["I_T3h"]
    coeffs = {
        -1: 2.0 * h0,
        0: -h0,
        1: d2 / 4.0,
        2: i2 / 4.0 + d2 / 8.0,
        3: i2 / 4.0 + d2 / 16.0 - d4 / 64.0,
        4: i2 / 4.0 - i3 / 16.0 + d2 / 32.0 - 3.0 * d4 / 128.0,
    }
    return ExpansionReport(coefficients=coeffs, valid_order=4,
                           source="squared_kernel_average", inputs=f)


def expand_K(h: PeriodicFunction) -> ExpansionReport:
    """First-order expansion of the auxiliary kernel average K_r."""
    f = scalar_functionals(h, depth=1)
    h0, ih, i1 = f["h0"], f["I_h"], f["I_T1h"]
    coeffs = {
        0: 2.0 * ih - 0.75 * h0,
        1: -15.0 / 16.0 * h0 + 1.5 * ih - i1 / 2.0,
    }
    return ExpansionReport(coefficients=coeffs, valid_order=1,
                           source="aux_kernel_average", inputs=f)


def _slice_functionals(g: PeriodicFunction) -> dict[str, float]:
    """Functionals of a general (not necessarily even) density slice."""
    if not g.smooth_at_zero:
        raise DomainError("slice has a breakpoint at s = 0")
    g_hat = g.hat()
    g_chk = g.check()
    vals = {
        "g0": g_hat.derivative_at_zero(0),
        "g2": g_hat.derivative_at_zero(2),
        "gc1": g_chk.derivative_at_zero(1),
        "I_Tgh": mean(t_operator(g_hat)),
        "I_T2gh": mean(t_operator(g_hat, 2)),
        "I_T2ghcos": mean(t_operator(g_hat.times_cos(), 2)),
        "I_T2gcsin": mean(t_operator(g_chk.times_sin(), 2)),
    }
    return vals


def expand_S(g: PeriodicFunction) -> ExpansionReport:
    """Expansion of the intensity numerator for a density slice g.

    The two leading powers vanish identically; the surviving coefficients are
    quadratic forms in the slice functionals.
    """
    f = _slice_functionals(g)
    g0, g2, gc1 = f["g0"], f["g2"], f["gc1"]
    i1, i2 = f["I_Tgh"], f["I_T2gh"]
    i2cos, i2sin = f["I_T2ghcos"], f["I_T2gcsin"]
    s2 = 0.5 * g0 * i1 - 0.25 * (g0 * g2 + gc1 * gc1)
    coeffs = {
        -2: 0.0,
        -1: 0.0,
        0: g0 * g0,
        1: g0 * i1,
        2: s2,
        3: s2 + (g2 * i1 + g0 * i2cos - 2.0 * gc1 * i2sin) / 8.0 - 0.25 * g0 * i2,
    }
    return ExpansionReport(coefficients=coeffs, valid_order=3,
                           source="intensity_numerator", inputs=f)


def expand_S_via_products(g: PeriodicFunction) -> ExpansionReport:
    """Re-derive the numerator expansion as a difference of squared series.

    Squares the squared-kernel expansions of the even part, of (even part)
    cos s, and of (odd part) sin s, convolving coefficient series in exact
    rational arithmetic so the vanishing of the leading two powers is exact,
    then subtracts.  Floating point enters only through the functionals.
    """
    g_hat = g.hat()
    parts = [g_hat, g_hat.times_cos(), g.check().times_sin()]
    signs = [1, -1, -1]
    total: dict[int, Fraction] = {}
    for part, sign in zip(parts, signs):
        q = expand_Q(part)
        series = {k: Fraction(v) for k, v in q.coefficients.items()}
        for k1, c1 in series.items():
            for k2, c2 in series.items():
                p = k1 + k2
                if p > 3:
                    continue
                total[p] = total.get(p, Fraction(0)) + sign * c1 * c2
    coeffs = {k: float(v) for k, v in sorted(total.items())}
    return ExpansionReport(coefficients=coeffs, valid_order=3,
                           source="squared_series_product")


# ---------------------------------------------------------------------------
# boundary behavior of the zero density
# ---------------------------------------------------------------------------

_F0_TOL = 1e-10
_D2_TOL = 1e-8


def rho1_boundary(F: SpectralMeasure, phi: float):
    """Boundary expansion of the zero density in the direction phi.

    Returns ``(case, report)`` where case is "i", "ii" or "iii" according to
    the degeneracy of the density slice at the boundary point, and the report
    carries the controlled powers of y = 1 - r^2:

    * case i  (slice positive):   1/(pi y^2) plus a constant deficit
      -(f'(0)^2 + I(T fhat)^2) / (4 pi f(0)^2); dependence can only push the
      density below the independent-coefficient profile.
    * case ii (simple zero):      [f''(0) / (2 I(T fhat))] / (pi y).
    * case iii (double zero):     a flat profile whose height is a ratio of
      averaged double quotients.
    """
    if F.density is None:
        raise DomainError("boundary expansion requires a density")
    g = F.relative_density(float(phi))
    if not g.smooth_at_zero:
        raise DomainError("density slice has a breakpoint at the boundary direction")
    f = _slice_functionals(g)
    f0, d2 = f["g0"], f["g2"]
    i1 = f["I_Tgh"]
    if abs(f0) > _F0_TOL:
        fp = g.derivative_at_zero(1)
        deficit = (fp * fp + i1 * i1) / (4.0 * f0 * f0)
        coeffs = {-2: 1.0 / PI, 0: -deficit / PI}
        inputs = dict(f, f1=fp, deficit=deficit)
        report = ExpansionReport(coefficients=coeffs, valid_order=0,
                                 source="boundary_case_i", inputs=inputs)
        return "i", report
    if abs(i1) < 1e-12:
        raise DegenerateDenominator(
            "I(T fhat) vanishes; the expansion denominators are degenerate")
    if abs(d2) > _D2_TOL:
        coeffs = {-1: d2 / (2.0 * i1) / PI}
        report = ExpansionReport(coefficients=coeffs, valid_order=-1,
                                 source="boundary_case_ii", inputs=f)
        return "ii", report
    num = f["I_T2gh"] ** 2 - f["I_T2ghcos"] ** 2 - f["I_T2gcsin"] ** 2
    coeffs = {0: num / (4.0 * i1 * i1) / PI}
    report = ExpansionReport(coefficients=coeffs, valid_order=0,
                             source="boundary_case_iii", inputs=f)
    return "iii", report


# ---------------------------------------------------------------------------
# recursion identities as numerical checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecursionReport:
    poisson_discrepancy: dict[float, float]
    aux_kernel_discrepancy: dict[float, float]

    @property
    def max_discrepancy(self) -> float:
        vals = list(self.poisson_discrepancy.values()) + \
            list(self.aux_kernel_discrepancy.values())
        return max(abs(v) for v in vals)


def verify_recursions(h: PeriodicFunction, r_list) -> RecursionReport:
    """Evaluate both sides of the two lowering recursions by quadrature.

    First: P_r(h) = h(0) + (y/2r) I(Th) - (y^2 / (2r(1+r)^2)) P_r(Th).
    Second: the self-referential recursion for the auxiliary average K_r,
    whose right side mixes K_r(h), P_r(Th) and K_r(Th).
    """
    _require_even_smooth(h)
    th = t_operator(h)
    h0 = h.derivative_at_zero(0)
    i_h = mean(h)
    i_th = mean(th)
    p_disc: dict[float, float] = {}
    k_disc: dict[float, float] = {}
    for r in r_list:
        r = float(r)
        y = 1.0 - r * r
        lhs = P_op(h, r)
        rhs = h0 + y / (2.0 * r) * i_th - y**2 / (2.0 * r * (1.0 + r) ** 2) * P_op(th, r)
        p_disc[r] = lhs - rhs

        k_h = aux_ops(h, r).K
        k_th = aux_ops(th, r).K
        rhs_k = (2.0 * i_h
                 + (2.0 * r - 3.0) * (1.0 + 4.0 * r + r * r) / (1.0 + r) ** 3 * h0
                 + ((1.0 + 2.0 * r) / (1.0 + r) * i_h
                    + (2.0 * r - 3.0) * (1.0 + r * r) / (2.0 * r * (1.0 + r)) * i_th) * y
                 + ((1.0 + 2.0 * r) / (1.0 + r) ** 2 * k_h
                    - (2.0 * r - 3.0) / (2.0 * r * (1.0 + r) ** 3) * P_op(th, r)
                    + r * (2.0 * r - 3.0) / (2.0 * (1.0 + r) ** 2) * k_th) * y**2)
        k_disc[r] = k_h - rhs_k
    return RecursionReport(poisson_discrepancy=p_disc, aux_kernel_discrepancy=k_disc)


def fitted_order(y_values, residuals) -> float:
    """Least-squares slope of log |residual| against log y (decay order)."""
    y = np.asarray(y_values, dtype=float)
    res = np.abs(np.asarray(residuals, dtype=float))
    res = np.where(res > 0, res, 1e-300)
    slope = np.polyfit(np.log(y), np.log(res), 1)[0]
    return float(slope)
