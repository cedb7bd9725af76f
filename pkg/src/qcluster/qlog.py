"""Quantum logarithm and quantum dilogarithm by contour quadrature.

The two special functions evaluated here are

    philog(z)  = -2*pi*hbar * I[ exp(-i p z) / ((e^{pi p}-e^{-pi p})(e^{pi hbar p}-e^{-pi hbar p})) ]
    logPhi(z)  = -(1/4)    * I[ exp(-i p z) / (sinh(pi p) sinh(pi hbar p) p) ]

where I[...] integrates over a contour running along the real axis from -T to
T and bypassing the origin along a small upper semicircle (the integrands
carry a second / third order pole at p = 0).  The numerical contour is

    [-T, -r]  +  upper semicircle of radius r  +  [r, T]

with composite Gauss-Legendre nodes on geometrically graded panels; the
truncation T comes from the exponential tail bound
|integrand| <~ exp(-(pi(1+hbar) - |Im z|)|p|) with a 10x safety factor.

Direct evaluation needs |Im z| < pi*(1+hbar).  Outside a safety band the
evaluators walk back into the strip with the exact shift identities
(steps of 2*pi*i*hbar and 2*pi*i), accumulating the generated elementary
factors, so both functions extend to the whole plane minus their poles.

For bulk real-line use (operator symbols, kernel phases) the module provides
cubic-spline caches; on the real axis the dilogarithm is a pure phase whose
unwrapped angle comes straight out of the defining integral, so the cache
stores that angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from scipy.special import spence

__all__ = [
    "QuadratureConfig",
    "ComplexValue",
    "QuadratureError",
    "phi",
    "Phi",
    "log_Phi",
    "phi_values",
    "Phi_values",
    "log_Phi_values",
    "li2",
    "property_residual",
    "residue_phi",
    "residue_dlog_Phi",
    "PhiPhaseCache",
    "PhiSymbolCache",
    "get_phase_cache",
    "get_symbol_cache",
    "IDENTITY_THRESHOLDS",
    "default_sweep",
]

TWO_PI = 2.0 * math.pi


class QuadratureError(RuntimeError):
    """Configuration cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Contour parameters.  Unset radius/truncation are derived per call:
    r = 0.25*min(1, 1/hbar) and T from the tail bound (10x safety)."""

    contour_radius: float | None = None
    truncation: float | None = None
    nodes: int = 400
    tolerance: float = 1e-10


DEFAULT_CFG = QuadratureConfig()


@dataclass(frozen=True)
class ComplexValue:
    """Value with an attached absolute error estimate."""

    value: complex
    abs_error: float

    @property
    def rel_error(self) -> float:
        m = abs(self.value)
        return self.abs_error / m if m else float("inf")

    def __complex__(self):
        return complex(self.value)


# ---------------------------------------------------------------------------
# Contour construction
# ---------------------------------------------------------------------------

def _radius(hbar: float, cfg: QuadratureConfig) -> float:
    r = cfg.contour_radius if cfg.contour_radius is not None else 0.25 * min(1.0, 1.0 / hbar)
    limit = 0.5 * min(1.0, 1.0 / hbar)
    if not 0.0 < r < limit:
        raise QuadratureError(
            f"contour radius {r} must lie in (0, {limit}) to separate the origin "
            "from the nearest imaginary poles"
        )
    return r


def _tail_bound(T: float, rate: float, hbar: float, which: str) -> float:
    damp = (1.0 - math.exp(-2.0 * math.pi * T)) * (1.0 - math.exp(-2.0 * math.pi * hbar * T))
    if which == "phi":
        pref = math.pi * hbar
    else:  # log Phi
        pref = 0.5 / max(T, 1e-12)
    return pref * math.exp(-rate * T) / (rate * damp)


def _truncation(hbar: float, im_max: float, cfg: QuadratureConfig, which: str) -> float:
    rate = math.pi * (1.0 + hbar) - im_max
    if rate <= 0:
        raise QuadratureError(f"|Im z| = {im_max} outside the convergence strip")
    if cfg.truncation is not None:
        T = cfg.truncation
    else:
        T = 4.0
        for _ in range(60):
            if _tail_bound(T, rate, hbar, which) <= cfg.tolerance / 10.0:
                break
            T *= 1.25
    if _tail_bound(T, rate, hbar, which) > cfg.tolerance:
        raise QuadratureError(
            f"tail bound {_tail_bound(T, rate, hbar, which):.3e} above tolerance "
            f"{cfg.tolerance:.1e}; enlarge truncation/nodes"
        )
    return T


def _contour(hbar: float, im_max: float, re_max: float, cfg: QuadratureConfig,
             which: str, refine: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and complex weights for the deformed contour.  Panel node counts
    grow with the number of oscillations width*|Re z|/(2 pi) each panel sees."""
    r = _radius(hbar, cfg)
    T = _truncation(hbar, im_max, cfg, which)

    edges = [r]
    while edges[-1] < T:
        edges.append(min(2.0 * edges[-1], T))
    panels = list(zip(edges[:-1], edges[1:]))
    base = max(24, int(0.5 * cfg.nodes / max(len(panels), 1)))

    pts: list[np.ndarray] = []
    wts: list[np.ndarray] = []
    freq = re_max / TWO_PI
    for a, b in panels:
        cycles = (b - a) * freq
        n = refine * max(base, 24 + int(3.4 * cycles))
        x, w = leggauss(n)
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        p = mid + half * x
        pw = half * w
        pts.extend([p, -p])          # right and mirrored left segment
        wts.extend([pw, pw])

    n_semi = refine * max(64, cfg.nodes // 4)
    x, w = leggauss(n_semi)
    theta = 0.5 * math.pi * (x + 1.0)          # (0, pi)
    tw = 0.5 * math.pi * w
    psemi = r * np.exp(1j * theta)
    wsemi = -1j * psemi * tw                   # traversed from pi to 0 (above the origin)
    pts.append(psemi)
    wts.append(wsemi)

    return np.concatenate(pts), np.concatenate(wts).astype(complex)


def _integrate(z: np.ndarray, hbar: float, cfg: QuadratureConfig, which: str,
               refine: int = 1) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    im_max = float(np.max(np.abs(z.imag))) if z.size else 0.0
    re_max = float(np.max(np.abs(z.real))) if z.size else 0.0
    p, w = _contour(hbar, im_max, re_max, cfg, which, refine=refine)
    denom = np.sinh(math.pi * p) * np.sinh(math.pi * hbar * p)
    if which == "phi":
        coef = w / (4.0 * denom)
        pref = -2.0 * math.pi * hbar
    else:
        coef = w / (denom * p)
        pref = -0.25
    out = np.empty(z.shape, dtype=complex)
    chunk = max(1, int(4e6 / max(p.size, 1)))
    for lo in range(0, z.size, chunk):
        zz = z.reshape(-1)[lo:lo + chunk]
        E = np.exp(-1j * np.outer(p, zz))
        out.reshape(-1)[lo:lo + chunk] = pref * (coef @ E)
    return out


# ---------------------------------------------------------------------------
# Strip reduction via the shift identities
# ---------------------------------------------------------------------------

def _reduction_steps(z: complex, hbar: float) -> list[tuple[float, str, int]]:
    """Plan of (imag step, identity kind, direction) moves taking z into the
    band |Im| <= 0.6*pi*(1+hbar)."""
    thresh = 0.6 * math.pi * (1.0 + hbar)
    steps = []
    im = z.imag
    for _ in range(256):
        if abs(im) <= thresh:
            break
        direction = -1 if im > 0 else 1
        cands = [(TWO_PI * hbar, "h"), (TWO_PI, "1")]
        best = min(cands, key=lambda c: abs(im + direction * c[0]))
        if abs(im + direction * best[0]) >= abs(im):
            break
        steps.append((best[0], best[1], direction))
        im += direction * best[0]
    return steps


def _phi_corrections(z: complex, hbar: float) -> tuple[complex, complex]:
    """Shift z into the strip; returns (reduced z, additive correction)."""
    corr = 0.0 + 0.0j
    for _step, kind, direction in _reduction_steps(z, hbar):
        if kind == "h":
            half = 1j * math.pi * hbar
            amount = 2j * math.pi * hbar
        else:
            half = 1j * math.pi
            amount = 2j * math.pi
        # phi(z) = phi(z -+ 2*half) +- amount / (exp(-scaled centre) + 1)
        centre = z + direction * half
        scaled = centre if kind == "h" else centre / hbar
        corr -= direction * amount / (np.exp(-scaled) + 1.0)
        z = z + direction * 2 * half
    return z, corr


def _log_phi_factors(z: complex, hbar: float) -> tuple[complex, complex]:
    """Shift z into the strip; returns (reduced z, additive log correction).
    Principal logs are used for the accumulated factors."""
    q = np.exp(1j * math.pi * hbar)
    qv = np.exp(1j * math.pi / hbar)
    corr = 0.0 + 0.0j
    for step, kind, direction in _reduction_steps(z, hbar):
        if kind == "h":
            if direction < 0:
                z = z - 2j * math.pi * hbar
                corr += np.log(1.0 + q * np.exp(z))
            else:
                corr -= np.log(1.0 + q * np.exp(z))
                z = z + 2j * math.pi * hbar
        else:
            if direction < 0:
                z = z - 2j * math.pi
                corr += np.log(1.0 + qv * np.exp(z / hbar))
            else:
                corr -= np.log(1.0 + qv * np.exp(z / hbar))
                z = z + 2j * math.pi
    return z, corr


def _values(z, hbar: float, cfg: QuadratureConfig, which: str, refine: int = 1) -> np.ndarray:
    zarr = np.asarray(z, dtype=complex)
    shape = zarr.shape
    flat = zarr.reshape(-1)
    reducer = _phi_corrections if which == "phi" else _log_phi_factors
    reduced = np.empty_like(flat)
    corr = np.empty_like(flat)
    for idx, zz in enumerate(flat):
        reduced[idx], corr[idx] = reducer(complex(zz), hbar)
    base = _integrate(reduced, hbar, cfg, which, refine=refine)
    return (base + corr).reshape(shape)


def phi_values(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> np.ndarray:
    """Vectorized quantum logarithm (plain ndarray, no error estimates)."""
    return _values(z, hbar, cfg, "phi")


def log_Phi_values(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> np.ndarray:
    """Vectorized log of the quantum dilogarithm."""
    return _values(z, hbar, cfg, "logPhi")


def Phi_values(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> np.ndarray:
    return np.exp(log_Phi_values(z, hbar, cfg))


def _with_estimate(z, hbar, cfg, which) -> ComplexValue:
    fine = _values(z, hbar, cfg, which)[()]
    coarse_cfg = QuadratureConfig(cfg.contour_radius, cfg.truncation,
                                  max(48, cfg.nodes // 2), cfg.tolerance)
    coarse = _values(z, hbar, coarse_cfg, which)[()]
    est = abs(fine - coarse) + cfg.tolerance / 10.0
    return ComplexValue(complex(fine), float(est))


def phi(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> ComplexValue:
    """Quantum logarithm at a point, with error estimate."""
    return _with_estimate(complex(z), hbar, cfg, "phi")


def log_Phi(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> ComplexValue:
    return _with_estimate(complex(z), hbar, cfg, "logPhi")


def Phi(z, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG) -> ComplexValue:
    """Quantum dilogarithm at a point, with error estimate."""
    lp = _with_estimate(complex(z), hbar, cfg, "logPhi")
    val = np.exp(lp.value)
    return ComplexValue(complex(val), float(abs(val)) * (math.exp(lp.abs_error) - 1.0))


# ---------------------------------------------------------------------------
# Classical dilogarithm
# ---------------------------------------------------------------------------

def li2(x: float) -> float:
    """Classical dilogarithm -int_0^x log(1-t)/t ... dt for x <= 1."""
    if x > 1.0:
        raise ValueError(f"li2 requires x <= 1, got {x}")
    return float(spence(1.0 - x))


# ---------------------------------------------------------------------------
# Residues at the nearest singular points
# ---------------------------------------------------------------------------

def _pole_radius(hbar: float) -> float:
    return 0.4 * min(TWO_PI, TWO_PI * hbar)


def residue_phi(z0: complex, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG,
                radius: float | None = None, m: int = 64) -> complex:
    """(1/2 pi i) * closed circle integral of the quantum logarithm around z0
    (trapezoid rule on the circle; spectrally accurate)."""
    rho = radius if radius is not None else _pole_radius(hbar)
    theta = TWO_PI * np.arange(m) / m
    ring = z0 + rho * np.exp(1j * theta)
    vals = phi_values(ring, hbar, cfg)
    return complex((rho / m) * np.sum(vals * np.exp(1j * theta)))


def residue_dlog_Phi(z0: complex, hbar: float, cfg: QuadratureConfig = DEFAULT_CFG,
                     radius: float | None = None, m: int = 64, h: float = 1e-5) -> complex:
    """Residue of 2 pi i hbar * dlog Phi around z0; the log derivative is a
    central difference of Phi, so this probes the pole/zero of Phi itself."""
    rho = radius if radius is not None else _pole_radius(hbar)
    theta = TWO_PI * np.arange(m) / m
    ring = z0 + rho * np.exp(1j * theta)
    up = Phi_values(ring + h, hbar, cfg)
    dn = Phi_values(ring - h, hbar, cfg)
    mid = Phi_values(ring, hbar, cfg)
    dlog = (up - dn) / (2.0 * h) / mid
    w = 2j * math.pi * hbar * dlog
    return complex((rho / m) * np.sum(w * np.exp(1j * theta)))


# ---------------------------------------------------------------------------
# Identity residuals
# ---------------------------------------------------------------------------

IDENTITY_THRESHOLDS: dict[str, float] = {
    "A1": 0.05, "A2": 1e-8, "A3": 1e-8, "A4": 1e-8, "A5": 1e-8, "A6": 1e-6,
    "B": 1e-5, "B0": 1e-6, "B1": 0.05, "B2": 1e-6, "B3": 1e-6, "B4": 1e-6,
    "B5": 1e-6, "B6": 1e-6,
}


def property_residual(name: str, z: complex, hbar: float,
                      cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """Absolute residual of one stated identity at (z, hbar).

    A1/B1 are the semiclassical comparisons (meaningful for small hbar; B1 is
    relative in the exponent).  A6/B6 ignore z and integrate around the
    nearest singular point i*pi*(1+hbar).
    """
    z = complex(z)
    pv = lambda w: phi_values(w, hbar, cfg)
    if name == "A1":
        return float(abs(pv(z)[()] - np.log1p(np.exp(z))))
    if name == "A2":
        a, b = pv(np.array([z, -z]))
        return float(abs(a - b - z))
    if name == "A3":
        a = pv(z)[()]
        b = pv(np.conjugate(z))[()]
        return float(abs(np.conjugate(a) - b))
    if name == "A4":
        a = pv(z)[()]
        b = phi_values(z / hbar, 1.0 / hbar, cfg)[()]
        return float(abs(a / hbar - b))
    if name == "A5":
        up, dn = pv(np.array([z + 1j * math.pi * hbar, z - 1j * math.pi * hbar]))
        r1 = abs(up - dn - 2j * math.pi * hbar / (np.exp(-z) + 1.0))
        up2, dn2 = pv(np.array([z + 1j * math.pi, z - 1j * math.pi]))
        r2 = abs(up2 - dn2 - 2j * math.pi / (np.exp(-z / hbar) + 1.0))
        return float(max(r1, r2))
    if name == "A6":
        z0 = 1j * math.pi * (1.0 + hbar)
        return float(abs(residue_phi(z0, hbar, cfg) - 2j * math.pi * hbar))
    if name == "B":
        h = 1e-4
        d = (log_Phi_values(z + h, hbar, cfg)[()] - log_Phi_values(z - h, hbar, cfg)[()]) / (2 * h)
        return float(abs(2j * math.pi * hbar * d - pv(z)[()]))
    if name == "B0":
        return float(abs(Phi_values(z, hbar, cfg)[()] - 1.0))
    if name == "B1":
        target = -li2(float(-np.exp(np.real(z)))) / (2j * math.pi * hbar)
        got = log_Phi_values(complex(np.real(z)), hbar, cfg)[()]
        return float(abs(got - target) / abs(target))
    if name == "B2":
        a, b = Phi_values(np.array([z, -z]), hbar, cfg)
        rhs = np.exp(z * z / (4j * math.pi * hbar)) * np.exp(-1j * math.pi / 12.0 * (hbar + 1.0 / hbar))
        return float(abs(a * b - rhs))
    if name == "B3":
        if abs(z.imag) < 1e-14:
            return float(abs(abs(Phi_values(z, hbar, cfg)[()]) - 1.0))
        a = Phi_values(z, hbar, cfg)[()]
        b = Phi_values(np.conjugate(z), hbar, cfg)[()]
        return float(abs(np.conjugate(a) - 1.0 / b))
    if name == "B4":
        a = Phi_values(z, hbar, cfg)[()]
        b = Phi_values(z / hbar, 1.0 / hbar, cfg)[()]
        return float(abs(a - b))
    if name == "B5":
        q = np.exp(1j * math.pi * hbar)
        qv = np.exp(1j * math.pi / hbar)
        a = Phi_values(z + 2j * math.pi * hbar, hbar, cfg)[()]
        b = Phi_values(z, hbar, cfg)[()]
        r1 = abs(a - b * (1.0 + q * np.exp(z)))
        c = Phi_values(z + 2j * math.pi, hbar, cfg)[()]
        r2 = abs(c - b * (1.0 + qv * np.exp(z / hbar)))
        return float(max(r1, r2))
    if name == "B6":
        z0 = 1j * math.pi * (1.0 + hbar)
        return float(abs(residue_dlog_Phi(z0, hbar, cfg) - 2j * math.pi * hbar))
    raise ValueError(f"unknown identity {name!r}")


def default_sweep(cfg: QuadratureConfig = DEFAULT_CFG,
                  hbars: Sequence[float] = (0.3, 1.0, 2.5)) -> list[dict]:
    """Residual rows for the standard identity battery.

    Returns dicts with keys identity, z, hbar, residual, threshold, ok.
    A1/B1 appear as per-hbar errors on the halving sequence 0.08 -> 0.01 plus
    one synthetic ``*-monotone`` row (residual 0.0 when errors decrease
    monotonically, 1.0 otherwise, threshold 0.5).
    """
    rows: list[dict] = []
    z_grid = [complex(re, im) for re in (-2.0, -1.0, 0.0, 1.0, 2.0)
              for im in (-0.5, -0.25, 0.0, 0.25, 0.5)]

    def add(name, z, hbar, resid):
        thr = IDENTITY_THRESHOLDS[name.split("-")[0]] if name.split("-")[0] in IDENTITY_THRESHOLDS else 0.5
        rows.append({"identity": name, "z": z, "hbar": hbar,
                     "residual": float(resid), "threshold": thr,
                     "ok": bool(resid <= thr)})

    for hbar in hbars:
        for name in ("A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5"):
            worst = max(property_residual(name, z, hbar, cfg) for z in z_grid)
            add(name, "grid-max", hbar, worst)
        add("B", 0.3, hbar, property_residual("B", 0.3, hbar, cfg))
        # B0 is a limit along horizontal lines; both exponential scales of the
        # approach (e^z and e^(z/hbar)) must be deep in the asymptotic regime,
        # so the abscissa scales with hbar.
        z0 = -30.0 * max(1.0, hbar)
        add("B0", z0, hbar, property_residual("B0", z0, hbar, cfg))
        add("A6", "pole", hbar, property_residual("A6", 0.0, hbar, cfg))
        add("B6", "pole", hbar, property_residual("B6", 0.0, hbar, cfg))

    halving = (0.08, 0.04, 0.02, 0.01)
    z_small = [-1.0, -0.5, 0.0, 0.5, 1.0]
    a1 = [max(property_residual("A1", z, hb, cfg) for z in z_small) for hb in halving]
    b1 = [max(property_residual("B1", z, hb, cfg) for z in z_small) for hb in halving]
    for hb, err in zip(halving, a1):
        add("A1", "grid-max", hb, err)
    for hb, err in zip(halving, b1):
        add("B1", "grid-max", hb, err)
    rows.append({"identity": "A1-monotone", "z": "-", "hbar": "-",
                 "residual": 0.0 if all(x > y for x, y in zip(a1, a1[1:])) else 1.0,
                 "threshold": 0.5, "ok": all(x > y for x, y in zip(a1, a1[1:]))})
    rows.append({"identity": "B1-monotone", "z": "-", "hbar": "-",
                 "residual": 0.0 if all(x > y for x, y in zip(b1, b1[1:])) else 1.0,
                 "threshold": 0.5, "ok": all(x > y for x, y in zip(b1, b1[1:]))})
    return rows


# ---------------------------------------------------------------------------
# Real-line caches
# ---------------------------------------------------------------------------

class PhiPhaseCache:
    """Unwrapped phase of the quantum dilogarithm on a real interval.

    On the real axis |Phi| = 1; the defining integral yields the continuous
    angle directly (no mod-2pi jumps), so a cubic spline of that angle
    reproduces Phi(x) = exp(i*angle(x)) to the tuned interpolation error.
    """

    def __init__(self, hbar: float, lo: float, hi: float,
                 spacing: float | None = None, cfg: QuadratureConfig = DEFAULT_CFG):
        if spacing is None:
            spacing = 0.02 * min(1.0, max(hbar, 0.05))
        n = int(math.ceil((hi - lo) / spacing)) + 1
        self.hbar = hbar
        self.lo, self.hi = float(lo), float(hi)
        self.x = np.linspace(lo, hi, n)
        vals = log_Phi_values(self.x, hbar, cfg)
        self.theta = np.ascontiguousarray(vals.imag)
        self._spline = CubicSpline(self.x, self.theta)

    def phase(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.size and (x.min() < self.lo or x.max() > self.hi):
            raise ValueError("argument outside cached range")
        return self._spline(x)

    def value(self, x) -> np.ndarray:
        return np.exp(1j * self.phase(x))


class PhiSymbolCache:
    """Real-line values of the quantum logarithm (real by conjugation
    symmetry), splined for operator-symbol use."""

    def __init__(self, hbar: float, lo: float, hi: float,
                 spacing: float | None = None, cfg: QuadratureConfig = DEFAULT_CFG):
        if spacing is None:
            spacing = 0.02 * min(1.0, max(hbar, 0.05))
        n = int(math.ceil((hi - lo) / spacing)) + 1
        self.hbar = hbar
        self.lo, self.hi = float(lo), float(hi)
        self.x = np.linspace(lo, hi, n)
        vals = phi_values(self.x, hbar, cfg)
        self.y = np.ascontiguousarray(vals.real)
        self._spline = CubicSpline(self.x, self.y)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.size and (x.min() < self.lo or x.max() > self.hi):
            raise ValueError("argument outside cached range")
        return self._spline(x)


_PHASE_CACHES: dict[tuple, PhiPhaseCache] = {}
_SYMBOL_CACHES: dict[tuple, PhiSymbolCache] = {}


def _bucket(lo: float, hi: float) -> tuple[float, float]:
    step = 25.0
    return (step * math.floor(lo / step), step * math.ceil(hi / step))


def get_phase_cache(hbar: float, lo: float, hi: float,
                    cfg: QuadratureConfig = DEFAULT_CFG) -> PhiPhaseCache:
    lo_b, hi_b = _bucket(lo - 1.0, hi + 1.0)
    key = ("Phi", round(hbar, 12), lo_b, hi_b)
    if key not in _PHASE_CACHES:
        _PHASE_CACHES[key] = PhiPhaseCache(hbar, lo_b, hi_b, cfg=cfg)
    return _PHASE_CACHES[key]


def get_symbol_cache(hbar: float, lo: float, hi: float,
                     cfg: QuadratureConfig = DEFAULT_CFG) -> PhiSymbolCache:
    lo_b, hi_b = _bucket(lo - 1.0, hi + 1.0)
    key = ("phi", round(hbar, 12), lo_b, hi_b)
    if key not in _SYMBOL_CACHES:
        _SYMBOL_CACHES[key] = PhiSymbolCache(hbar, lo_b, hi_b, cfg=cfg)
    return _SYMBOL_CACHES[key]
