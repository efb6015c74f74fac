"""Analytic-continuation diagnostics of the random series.

The local convergence radius at a point r inside the disk is read off the
derivative variances

    var_k(r) = int (1 - 2 r cos t + r^2)^(-(k+1)) dF(t),

whose log is eventually linear in k: rho(r) = lim var_k^(-1/2k).  Arcs of the
circle outside the support of the measure are exactly the directions across
which the series continues; each such arc comes with the computable bound
rho(r) >= (1 - 2 r cos(delta) + r^2)^(1/2) for the arc half-width delta.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PrecisionError, SupportUnknown, TailWarning
from .periodic import PI, TWOPI, panel_nodes, wrap_angle
from .poisson import graded_edges
from .spectral import SpectralMeasure

__all__ = [
    "variance_alpha", "log_variance_alpha", "rho_local", "classify_arcs",
    "Arc", "arc_radius_bound", "ContinuationReport", "continuation_report",
]


def _log_weights(F: SpectralMeasure, r: float, k_max: int):
    """Quadrature nodes for the variance integrals: log-density weights and
    log of the squared boundary distance at each node/atom."""
    if not 0.0 < r < 1.0:
        raise DomainError("radius must lie strictly inside (0, 1)")
    parts_logw = []
    parts_logd = []
    if F.density is not None:
        dens = F.density
        # integrand width shrinks like (1-r)/sqrt(k); grade accordingly
        floor = 16.0 * math.sqrt(k_max + 1.0)
        pts, wts = panel_nodes(graded_edges(r, dens.breakpoints, centers=(0.0,),
                                            floor_scale=floor))
        vals = dens(pts) * wts
        keep = vals > 0.0
        with np.errstate(divide="ignore"):
            parts_logw.append(np.log(vals[keep]))
        parts_logd.append(np.log((1.0 - r) ** 2 + 2.0 * r *
                                 (1.0 - np.cos(pts[keep]))))
    for t, m in F.atoms:
        parts_logw.append(np.array([math.log(m)]))
        parts_logd.append(np.array([math.log((1.0 - r) ** 2 +
                                             2.0 * r * (1.0 - math.cos(t)))]))
    if not parts_logw:
        raise DomainError("measure carries no mass")
    return np.concatenate(parts_logw), np.concatenate(parts_logd)


def _logsumexp(a):
    m = np.max(a)
    return float(m + math.log(np.sum(np.exp(a - m))))


def log_variance_alpha(F: SpectralMeasure, r: float, k) -> np.ndarray:
    """log of the k-th derivative variance, vectorized over k (overflow-free)."""
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    logw, logd = _log_weights(F, r, int(ks.max()))
    out = np.array([_logsumexp(logw - (kk + 1.0) * logd) for kk in ks])
    return out if np.ndim(k) else float(out[0])


def variance_alpha(F: SpectralMeasure, r: float, k: int) -> float:
    """Variance of the k-th Taylor coefficient of the series centered at r.

    Evaluated in log space; may overflow to inf for large k when the measure
    charges the direction of r (use :func:`log_variance_alpha` there).
    A PrecisionError is raised if two quadrature depths disagree beyond 1e-6
    relative.
    """
    lv = log_variance_alpha(F, r, int(k))
    if F.density is not None:
        # embedded accuracy check: halve the grading floor
        logw, logd = _log_weights(F, r, max(4 * int(k), 64))
        lv2 = _logsumexp(logw - (k + 1.0) * logd)
        if abs(lv2 - lv) > 1e-6:
            raise PrecisionError(
                f"variance quadrature disagrees between depths: {lv} vs {lv2}",
                achievable=abs(lv2 - lv))
    return float(np.exp(lv)) if lv < 709.0 else math.inf


def rho_local(F: SpectralMeasure, r: float, k_max: int = 512) -> float:
    """Local convergence radius estimate var_k^(-1/2k) extrapolated in k.

    Uses log-variances at k_max/4, k_max/2, k_max: the two slopes of
    log var_k are Richardson-combined (2 a2 - a1), which cancels the
    log(k)/k correction of Laplace-type tails exactly for geometric k.
    A TailWarning (carrying the raw sequence) fires when the two slopes
    disagree by more than 1 percent.
    """
    if k_max < 64:
        raise DomainError("tail extrapolation needs k_max >= 64")
    ks = np.array([k_max // 4, k_max // 2, k_max], dtype=float)
    lv = log_variance_alpha(F, r, ks)
    a1 = (lv[1] - lv[0]) / (ks[1] - ks[0])
    a2 = (lv[2] - lv[1]) / (ks[2] - ks[1])
    slope = 2.0 * a2 - a1
    if abs(a2 - a1) > 0.01 * max(abs(slope), 1e-30):
        warnings.warn(
            f"variance tail has not settled: slopes {a1:.6g} vs {a2:.6g}; "
            f"raw log-variances {list(zip(ks.tolist(), lv.tolist()))}",
            TailWarning, stacklevel=2)
    return math.exp(-0.5 * slope)


# ---------------------------------------------------------------------------
# support classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Circle arc from lo to hi (radians, hi may exceed pi to wrap);
    degenerate lo == hi marks a single point."""

    lo: float
    hi: float
    kind: str  # "regular" | "singular"

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))

    @property
    def half_width(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def center(self) -> float:
        return float(wrap_angle(0.5 * (self.hi + self.lo)))


def arc_radius_bound(arc: Arc, r: float) -> float:
    """Lower bound on the local radius at r looking into a regular arc:
    the distance from r to the arc endpoints, (1 - 2r cos(delta) + r^2)^(1/2)."""
    if arc.kind != "regular":
        raise DomainError("bound applies to regular arcs")
    delta = arc.half_width
    return math.sqrt(1.0 - 2.0 * r * math.cos(delta) + r * r)


_ZERO_TOL = 1e-12


def classify_arcs(F: SpectralMeasure, resolution: int = 4096) -> list[Arc]:
    """Partition the circle into maximal arcs outside/inside the support.

    Works from the breakpoint representation of the density (plus atoms);
    densities without breakpoints are probed at ``resolution`` points: an
    everywhere-positive probe means full support, isolated zeros do not open
    arcs, but an apparent run of zeros without breakpoint backing raises
    SupportUnknown rather than guessing endpoints numerically.
    """
    atoms = sorted(wrap_angle(t) for t, _ in F.atoms)
    if F.density is None:
        if not atoms:
            raise DomainError("measure carries no mass")
        arcs: list[Arc] = []
        for i, t in enumerate(atoms):
            arcs.append(Arc(lo=t, hi=t, kind="singular"))
            nxt = atoms[(i + 1) % len(atoms)]
            hi = nxt if nxt > t else nxt + TWOPI
            if hi - t > _ZERO_TOL:
                arcs.append(Arc(lo=t, hi=hi, kind="regular"))
        return arcs

    dens = F.density
    if dens.breakpoints.size:
        support_arcs = _support_from_pieces(dens, resolution)
    else:
        probe = wrap_angle(-PI + TWOPI * (np.arange(resolution) + 0.5) / resolution)
        vals = dens(probe)
        if np.min(vals) < -1e-12:
            raise DomainError("density is negative")
        zero = vals <= _ZERO_TOL
        if not np.any(zero):
            support_arcs = [(-PI, PI)]
        else:
            runs = _zero_runs(zero)
            if max(hi - lo for lo, hi in runs) >= 3:
                raise SupportUnknown(
                    "density appears to vanish on an interval but carries no "
                    "breakpoint structure; refusing to guess arc endpoints")
            support_arcs = [(-PI, PI)]  # isolated zeros do not open the support
    return _merge_with_atoms(support_arcs, atoms)


def _zero_runs(mask):
    runs = []
    start = None
    for i, m in enumerate(mask):
        if m and start is None:
            start = i
        elif not m and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(mask)))
    return runs


def _support_from_pieces(dens, resolution: int):
    breaks = list(dens.breakpoints)
    edges = breaks + [breaks[0] + TWOPI]
    per_piece = max(8, resolution // max(len(breaks), 1))
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        probe = wrap_angle(np.linspace(lo, hi, per_piece + 2)[1:-1])
        occupied = bool(np.max(np.abs(dens(probe))) > _ZERO_TOL)
        pieces.append((lo, hi, occupied))
    merged = []
    for lo, hi, occ in pieces:
        if merged and merged[-1][2] == occ and abs(merged[-1][1] - lo) < 1e-12:
            merged[-1] = (merged[-1][0], hi, occ)
        else:
            merged.append((lo, hi, occ))
    # wrap-around merge
    if len(merged) > 1 and merged[0][2] == merged[-1][2] and \
            abs((merged[0][0] + TWOPI) - merged[-1][1]) < 1e-12:
        lo, hi, occ = merged.pop()
        first = merged.pop(0)
        merged.append((lo, first[1] + TWOPI, occ))
    return [(lo, hi) for lo, hi, occ in merged if occ]


def _merge_with_atoms(support_arcs, atoms):
    """Union the density support with atom points; return labeled arcs."""
    events = []
    for lo, hi in support_arcs:
        events.append((lo, hi))
    full = sum(hi - lo for lo, hi in events) >= TWOPI - 1e-12
    if full:
        return [Arc(lo=-PI, hi=PI, kind="singular")]
    # normalize event arcs into non-overlapping sorted form on the circle
    segs = sorted((wrap_angle(lo), wrap_angle(lo) + (hi - lo)) for lo, hi in events)
    arcs: list[Arc] = []
    boundary_atoms = set()
    for t in atoms:
        inside = any(lo - 1e-12 <= t <= hi + 1e-12 or
                     lo - 1e-12 <= t + TWOPI <= hi + 1e-12 for lo, hi in segs)
        if not inside:
            boundary_atoms.add(t)
    points = sorted(boundary_atoms)
    # build the complement of the support, then split it at isolated atoms
    cursor = None
    closed = []
    for lo, hi in segs:
        closed.append((lo, hi))
    if not closed:
        closed = []
    gaps = []
    if closed:
        for (lo1, hi1), (lo2, _) in zip(closed, closed[1:] + [(closed[0][0] + TWOPI,
                                                               closed[0][1])]):
            if lo2 - hi1 > 1e-12:
                gaps.append((hi1, lo2))
    else:
        gaps = [(-PI, PI)]
    for lo, hi in closed:
        arcs.append(Arc(lo=lo, hi=hi, kind="singular"))
    for lo, hi in gaps:
        inner = [t for t in points if lo < t < hi] + \
            [t + TWOPI for t in points if lo < t + TWOPI < hi]
        cur = lo
        for t in sorted(inner):
            if t - cur > 1e-12:
                arcs.append(Arc(lo=cur, hi=t, kind="regular"))
            arcs.append(Arc(lo=t, hi=t, kind="singular"))
            cur = t
        if hi - cur > 1e-12:
            arcs.append(Arc(lo=cur, hi=hi, kind="regular"))
    arcs.sort(key=lambda a: a.lo)
    return arcs


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuationReport:
    r: float
    k_max: int
    log_var_sequence: np.ndarray
    rho_estimate: float
    arcs: list[Arc]
    F_label: str = ""

    def to_json(self) -> str:
        payload = {
            "r": self.r,
            "k_max": self.k_max,
            "rho_estimate": self.rho_estimate,
            "F_label": self.F_label,
            "log_var_sequence": [float(v) for v in self.log_var_sequence],
            "var_sequence": [math.exp(v) if v < 709.0 else None
                             for v in self.log_var_sequence],
            "arcs": [{"lo": a.lo, "hi": a.hi, "kind": a.kind,
                      "radius_bound": (arc_radius_bound(a, self.r)
                                       if a.kind == "regular" else None)}
                     for a in self.arcs],
        }
        return json.dumps(payload, indent=1)


def continuation_report(F: SpectralMeasure, r: float, k_max: int = 512,
                        resolution: int = 4096) -> ContinuationReport:
    """Variance tail, radius estimate, and arc classification in one record."""
    ks = np.arange(0, k_max + 1)
    lv = log_variance_alpha(F, r, ks)
    rho = rho_local(F, r, k_max)
    try:
        arcs = classify_arcs(F, resolution)
    except SupportUnknown:
        arcs = []
    return ContinuationReport(r=float(r), k_max=int(k_max), log_var_sequence=lv,
                              rho_estimate=rho, arcs=arcs, F_label=F.label)
