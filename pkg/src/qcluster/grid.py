"""Discretized Hilbert-space model in logarithmic coordinates.

Functions live on a uniform rectangular grid over R^n, one axis per seed
label (coordinate a_j).  The operators

    xhat_j^-  =  -pi*i*hbar*(1/d_j) d/da_j  +  sum_l eps_jl a_l
    xhat_j^+  =  +pi*i*hbar*(1/d_j) d/da_j  +  sum_l eps_jl a_l

are realized with spectral derivatives (FFT, multiply by i*p, inverse FFT on
the unshifted frequency grid p in [-pi*N/(2L), pi*N/(2L))).  Functional
calculus of the quantum logarithm applied to +-xhat_k works in the mixed
representation: transform along axis k only, multiply by

    philog_{hbar_k}( arg_sign * ( -(sign) * pi*hbar*(1/d_k) p_k + sum_{j!=k} eps_kj a_j ) ),

transform back.  This is legitimate because eps_kk = 0, so the derivative and
multiplication parts of xhat_k commute.

Periodization is controlled by the test-function class: centered complex
Gaussians whose boundary values are at rounding level for the grids used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .seeds import Label, Seed, sgn
from . import qlog

__all__ = [
    "GridAxis",
    "GridSpec",
    "GridFunction",
    "inner_product",
    "norm",
    "apply_xhat",
    "apply_phi_of_xhat",
    "kappa_apply",
    "random_gaussian",
    "commutator_residual",
    "selfadjointness_residual",
    "grid_selftest",
]


@dataclass(frozen=True)
class GridAxis:
    center: float
    half_width: float
    points: int

    def __post_init__(self):
        n = self.points
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError(f"axis points must be a power of two >= 8, got {n}")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    def coordinates(self) -> np.ndarray:
        return self.center - self.half_width + self.spacing * np.arange(self.points)

    def frequencies(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.points, d=self.spacing)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[GridAxis, ...]

    @staticmethod
    def uniform(rank: int, points: int, half_width: float, center: float = 0.0) -> "GridSpec":
        return GridSpec(tuple(GridAxis(center, half_width, points) for _ in range(rank)))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.points for ax in self.axes)

    @property
    def cell(self) -> float:
        out = 1.0
        for ax in self.axes:
            out *= ax.spacing
        return out

    def coord_array(self, axis: int) -> np.ndarray:
        """Coordinates along ``axis`` broadcast to the full grid shape."""
        c = self.axes[axis].coordinates()
        shape = [1] * len(self.axes)
        shape[axis] = -1
        return c.reshape(shape)

    def freq_array(self, axis: int) -> np.ndarray:
        p = self.axes[axis].frequencies()
        shape = [1] * len(self.axes)
        shape[axis] = -1
        return p.reshape(shape)


@dataclass
class GridFunction:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.spec.shape:
            raise ValueError(f"values shape {self.values.shape} != grid {self.spec.shape}")

    def copy(self) -> "GridFunction":
        return GridFunction(self.spec, self.values.copy())

    def __add__(self, other):
        _same_spec(self, other)
        return GridFunction(self.spec, self.values + other.values)

    def __sub__(self, other):
        _same_spec(self, other)
        return GridFunction(self.spec, self.values - other.values)

    def __mul__(self, c):
        return GridFunction(self.spec, self.values * c)

    __rmul__ = __mul__


def _same_spec(f: GridFunction, g: GridFunction):
    if f.spec != g.spec:
        raise ValueError("grid functions live on different grids")


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Riemann-sum sesquilinear form int f * conj(g) da."""
    _same_spec(f, g)
    return complex(np.sum(f.values * np.conj(g.values)) * f.spec.cell)


def norm(f: GridFunction) -> float:
    return math.sqrt(max(inner_product(f, f).real, 0.0))


def _axis_index(s: Seed, g: GridFunction, label: Label) -> int:
    if len(g.spec.axes) != s.rank:
        raise ValueError("grid rank does not match seed rank")
    return s.index(label)


def _linear_symbol(s: Seed, spec: GridSpec, row: int, skip: int | None = None) -> np.ndarray:
    """sum_j eps[row][j] * a_j, optionally skipping one axis (eps_kk = 0 makes
    skipping the row's own axis a no-op)."""
    total = np.zeros((1,) * len(spec.axes))
    for j in range(len(spec.axes)):
        if j == skip:
            continue
        e = s.epsilon[row][j]
        if e:
            total = total + e * spec.coord_array(j)
    return total


def apply_xhat(s: Seed, hbar: float, g: GridFunction, j: Label, sign: str) -> GridFunction:
    """Apply xhat_j^sign: spectral derivative along axis j plus the linear
    coordinate multiplier."""
    sg = {"+": 1, "-": -1}[sign]
    jj = _axis_index(s, g, j)
    dhat = 1.0 / s.d[jj]
    p = g.spec.freq_array(jj)
    F = np.fft.fft(g.values, axis=jj)
    deriv = np.fft.ifft(1j * p * F, axis=jj)
    lin = _linear_symbol(s, g.spec, jj)
    out = sg * 1j * math.pi * hbar * dhat * deriv + lin * g.values
    return GridFunction(g.spec, out)


def apply_phi_of_xhat(s: Seed, hbar: float, g: GridFunction, k: Label, sign: str,
                      arg_sign: int, cfg: qlog.QuadratureConfig = qlog.DEFAULT_CFG,
                      use_cache: bool = True) -> GridFunction:
    """Apply philog_{hbar_k}(arg_sign * xhat_k^sign) by Fourier multiplier in
    the mixed representation along axis k."""
    sg = {"+": 1, "-": -1}[sign]
    if arg_sign not in (-1, 1):
        raise ValueError("arg_sign must be +-1")
    kk = _axis_index(s, g, k)
    dhat = 1.0 / s.d[kk]
    hbar_k = hbar * dhat
    p = g.spec.freq_array(kk)
    lin = _linear_symbol(s, g.spec, kk, skip=kk)
    symbol = arg_sign * (-sg * math.pi * hbar * dhat * p + lin)
    if use_cache:
        cache = qlog.get_symbol_cache(hbar_k, float(np.min(symbol)), float(np.max(symbol)), cfg)
        mult = cache(symbol)
    else:
        mult = qlog.phi_values(symbol.astype(complex).reshape(-1), hbar_k, cfg).real.reshape(symbol.shape)
    F = np.fft.fft(g.values, axis=kk)
    out = np.fft.ifft(mult * F, axis=kk)
    return GridFunction(g.spec, out)


def kappa_apply(s: Seed, hbar: float, g: GridFunction, k: Label, i: Label, sign: str,
                convention: str = "uniform",
                cfg: qlog.QuadratureConfig = qlog.DEFAULT_CFG) -> GridFunction:
    """Apply the mutation image of the primed operator xhat'_i^sign:

        i == k:   -xhat_k^sign
        i != k:   xhat_i^sign - coeff * philog_{hbar_k}(arg_sign * xhat_k^sign)

    ``convention`` fixes the +-branch bookkeeping of (coeff, arg_sign):

    * ``uniform``: coeff = eps_ik, arg_sign = -sgn(eps_ik) for both signs
      (the form the kernel derivation actually uses; this is the target the
      integral operator satisfies);
    * ``chiral``:  coeff = (+-)eps_ik, arg_sign = -sgn((+-)eps_ik) with the
      branch sign substituted, the other printed reading of the target map.
    """
    if i == k:
        return -1 * apply_xhat(s, hbar, g, k, sign)
    ii, kk = s.index(i), s.index(k)
    e = s.epsilon[ii][kk]
    base = apply_xhat(s, hbar, g, i, sign)
    if e == 0:
        return base
    if convention == "uniform":
        coeff, arg_sign = e, -sgn(e)
    elif convention == "chiral":
        branch = {"+": 1, "-": -1}[sign]
        coeff, arg_sign = branch * e, -sgn(branch * e)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    corr = apply_phi_of_xhat(s, hbar, g, k, sign, arg_sign, cfg)
    return base - coeff * corr


def random_gaussian(spec: GridSpec, rng: np.random.Generator,
                    sigma_range: tuple[float, float] = (0.9, 1.6),
                    wave: float = 1.5) -> GridFunction:
    """Centered complex Gaussian with random covariance, wavevector and phase,
    normalized to unit norm.  Decay at the grid boundary is far below any
    tolerance used in the residual suites."""
    n = len(spec.axes)
    sig = rng.uniform(*sigma_range, size=n)
    quad = np.diag(1.0 / sig**2)
    if n > 1:
        m = rng.normal(size=(n, n))
        qmat, _ = np.linalg.qr(m)
        quad = qmat.T @ quad @ qmat
    kvec = rng.uniform(-wave, wave, size=n)
    phase0 = rng.uniform(0, 2 * math.pi)
    coords = [spec.coord_array(j) for j in range(n)]
    quad_form = np.zeros((1,) * n)
    for a in range(n):
        for b in range(n):
            if quad[a, b]:
                quad_form = quad_form + quad[a, b] * coords[a] * coords[b]
    lin = np.zeros((1,) * n)
    for a in range(n):
        lin = lin + kvec[a] * coords[a]
    vals = np.exp(-0.5 * quad_form + 1j * (lin + phase0))
    f = GridFunction(spec, np.broadcast_to(vals, spec.shape).copy())
    return (1.0 / norm(f)) * f


# ---------------------------------------------------------------------------
# Residual diagnostics
# ---------------------------------------------------------------------------

def commutator_residual(s: Seed, hbar: float, g: GridFunction,
                        j: Label, k: Label, signs: tuple[str, str]) -> float:
    """Relative residual of [xhat_j^s1, xhat_k^s2] against its scalar value:
    2*pi*i*hbar*eh_jk for (-,-), the negative for (+,+), zero for mixed."""
    s1, s2 = signs
    a = apply_xhat(s, hbar, apply_xhat(s, hbar, g, k, s2), j, s1)
    b = apply_xhat(s, hbar, apply_xhat(s, hbar, g, j, s1), k, s2)
    comm = a - b
    eh = Fraction(s.epsilon[s.index(j)][s.index(k)], s.d[s.index(k)])
    if s1 == s2:
        scalar = 2j * math.pi * hbar * float(eh) * (1 if s1 == "-" else -1)
    else:
        scalar = 0.0
    resid = comm - scalar * g
    scale = max(abs(scalar), 2 * math.pi * hbar)
    return norm(resid) / (scale * norm(g))


def selfadjointness_residual(s: Seed, hbar: float, f: GridFunction, g: GridFunction,
                             j: Label, sign: str) -> float:
    """| <xhat f, g> - <f, xhat g> | / (||xhat f|| ||g||)."""
    xf = apply_xhat(s, hbar, f, j, sign)
    xg = apply_xhat(s, hbar, g, j, sign)
    num = abs(inner_product(xf, g) - inner_product(f, xg))
    return num / max(norm(xf) * norm(g), 1e-300)


def langlands_commutator_residual(s: Seed, hbar: float, g: GridFunction,
                                  i: Label, j: Label) -> float:
    """Rescaled generators xhat_i / ((1/d_i) hbar) must satisfy the dual
    Heisenberg relations with hbar_dual = 1/hbar and eh_dual_ij = d_i*eps_ij."""
    ii, jj = s.index(i), s.index(j)
    ci = 1.0 / ((1.0 / s.d[ii]) * hbar)
    cj = 1.0 / ((1.0 / s.d[jj]) * hbar)
    a = apply_xhat(s, hbar, apply_xhat(s, hbar, g, j, "-"), i, "-")
    b = apply_xhat(s, hbar, apply_xhat(s, hbar, g, i, "-"), j, "-")
    comm = ci * cj * (a - b)
    eh_dual = s.d[ii] * s.epsilon[ii][jj]
    scalar = 2j * math.pi * (1.0 / hbar) * eh_dual
    resid = comm - scalar * g
    scale = max(abs(scalar), 2 * math.pi / hbar)
    return norm(resid) / (scale * norm(g))


def grid_selftest(s: Seed, hbar: float, points: int, half_width: float,
                  rng: np.random.Generator, n_funcs: int = 3) -> dict[str, float]:
    """Worst-case residuals of the operator relations on random Gaussians."""
    spec = GridSpec.uniform(s.rank, points, half_width)
    out: dict[str, float] = {}
    labels = s.labels
    for _ in range(n_funcs):
        g = random_gaussian(spec, rng)
        f = random_gaussian(spec, rng)
        for a in labels:
            for b in labels:
                if a == b:
                    continue
                out["comm--"] = max(out.get("comm--", 0.0),
                                    commutator_residual(s, hbar, g, a, b, ("-", "-")))
                out["comm++"] = max(out.get("comm++", 0.0),
                                    commutator_residual(s, hbar, g, a, b, ("+", "+")))
                out["comm-+"] = max(out.get("comm-+", 0.0),
                                    commutator_residual(s, hbar, g, a, b, ("-", "+")))
                out["langlands"] = max(out.get("langlands", 0.0),
                                       langlands_commutator_residual(s, hbar, g, a, b))
        for a in labels:
            for sign in ("+", "-"):
                out["selfadjoint"] = max(out.get("selfadjoint", 0.0),
                                         selfadjointness_residual(s, hbar, f, g, a, sign))
    return out
