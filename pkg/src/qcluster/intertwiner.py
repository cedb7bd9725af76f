"""The unitary mutation intertwiner and its verification machinery.

For a mutation direction k the integral operator

    (K f)(..., a'_k, ...) = int G(..., a'_k + a_k, ...) f(..., a_k, ...) da_k

conjugates the logarithmic Heisenberg operators of a seed into their images
for the mutated seed.  Everything here works with the Fourier transform of
the kernel, which is an explicit pure phase (writing hb_k = hbar/d_k,
S = sum_j eps_kj a_j, th = unwrapped dilogarithm phase on the real line):

    Ghat(c, a) = C * Phi_{hb_k}(c/d_k - S)^(-1) * Phi_{hb_k}(-c/d_k - S) * exp(i * mod(c, a))

with one of two exponent conventions for the modulation ``mod``:

* ``ghat`` (the closed-form solution of the kernel's first-order system):
      mod = + c * sum_{eps_kj > 0} eps_kj a_j / (pi hbar)
* ``g`` (the convention carried by the stated convolution kernel):
      mod = - c * sum_{eps_kj < 0} eps_kj a_j / (pi hbar)

The two differ by the modulation exp(-c*S/(pi*i*hbar)); which one actually
intertwines is adjudicated empirically by the PDE and intertwining residuals
(``adjudicate_conventions``), not assumed.

K itself is applied spectrally: with the scaled transform
(T h)(c) = int exp(a c/(pi i hbar)) h(a) da one has

    K f = (1/(2 pi^2 hbar)) T[ Ghat * T f ],

which on the grid becomes plain FFTs (the coupling da*dc = 2 pi^2 hbar / N
makes the c-grid a derived quantity), and dividing out |C| leaves an exactly
unitary operator since the remaining multiplier is a pure phase.  Applying T
twice builds in the reflection a'_k = -a_k, matching the sign flip of the
k-th operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .seeds import Label, Seed, mutate_seed, sgn
from .grid import GridFunction, GridSpec, apply_xhat, kappa_apply, norm
from . import qlog

__all__ = [
    "KernelSpec",
    "kernel_G_hat",
    "kernel_G",
    "apply_K",
    "intertwining_residual",
    "pde_residual",
    "pde_sweep",
    "adjudicate_conventions",
]

CONVENTIONS = ("ghat", "g")


@dataclass(frozen=True)
class KernelSpec:
    """Everything needed to build and apply one mutation kernel."""

    seed: Seed
    k: Label
    hbar: float
    grid: GridSpec
    convention: str = "ghat"
    constant: complex | None = None          # default 2*pi^2*hbar
    quad: qlog.QuadratureConfig = field(default_factory=lambda: qlog.DEFAULT_CFG)

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @property
    def C(self) -> complex:
        return 2.0 * math.pi**2 * self.hbar if self.constant is None else self.constant

    @property
    def kk(self) -> int:
        return self.seed.index(self.k)

    @property
    def dhat_k(self) -> float:
        return 1.0 / self.seed.d[self.kk]

    @property
    def hbar_k(self) -> float:
        return self.hbar * self.dhat_k


def _mod_weights(ks: KernelSpec) -> np.ndarray:
    """Per-label weights w_j of the modulation phase c * sum w_j a_j / (pi hbar)."""
    row = ks.seed.epsilon[ks.kk]
    if ks.convention == "ghat":
        return np.array([max(e, 0) for e in row], dtype=float)
    return np.array([-min(e, 0) for e in row], dtype=float)


def _phase_arrays(ks: KernelSpec, c, S, mod_lin, use_cache: bool = True) -> np.ndarray:
    """Unwrapped phase of Ghat/C on broadcastable arrays (c, S, mod_lin)."""
    arg_plus = -ks.dhat_k * c - S
    arg_minus = ks.dhat_k * c - S
    if use_cache:
        lo = float(min(np.min(arg_plus), np.min(arg_minus)))
        hi = float(max(np.max(arg_plus), np.max(arg_minus)))
        cache = qlog.get_phase_cache(ks.hbar_k, lo, hi, ks.quad)
        theta_p = cache.phase(arg_plus)
        theta_m = cache.phase(arg_minus)
    else:
        theta_p = qlog.log_Phi_values(np.asarray(arg_plus, dtype=complex).reshape(-1),
                                      ks.hbar_k, ks.quad).imag.reshape(np.shape(arg_plus))
        theta_m = qlog.log_Phi_values(np.asarray(arg_minus, dtype=complex).reshape(-1),
                                      ks.hbar_k, ks.quad).imag.reshape(np.shape(arg_minus))
    return theta_p - theta_m + c * mod_lin / (math.pi * ks.hbar)


def _scalar_S_and_mod(ks: KernelSpec, a_others: Mapping[Label, float]) -> tuple[float, float]:
    row = ks.seed.epsilon[ks.kk]
    w = _mod_weights(ks)
    S = 0.0
    mod = 0.0
    for j, lab in enumerate(ks.seed.labels):
        if j == ks.kk:
            continue
        aj = float(a_others[lab])
        S += row[j] * aj
        mod += w[j] * aj
    return S, mod


def kernel_G_hat(ks: KernelSpec, c, a_others: Mapping[Label, float],
                 use_cache: bool = True) -> complex | np.ndarray:
    """Fourier-side kernel value(s): a pure phase times the constant C."""
    S, mod = _scalar_S_and_mod(ks, a_others)
    c = np.asarray(c, dtype=float)
    phase = _phase_arrays(ks, c, S, mod, use_cache=use_cache)
    out = ks.C * np.exp(1j * phase)
    return complex(out[()]) if out.shape == () else out


def kernel_G(ks: KernelSpec, s_k, a_others: Mapping[Label, float],
             delta: float = 0.05, dc: float | None = None) -> complex | np.ndarray:
    """Position-side kernel through a Gaussian regulator exp(-delta*c^2).

    The unregulated integral is only conditionally convergent (the integrand
    is a pure phase), so this is a diagnostic: operator application never
    touches pointwise G.  Raises if the regulated tail is not negligible.
    """
    if delta <= 0:
        raise ValueError("regulator delta must be positive")
    span = math.sqrt(37.0 / delta)
    if dc is None:
        dc = 0.02 * min(1.0, math.pi * ks.hbar)
    n = int(2 * span / dc) + 1
    c = np.linspace(-span, span, n)
    tail = math.exp(-delta * span * span)
    if tail > 1e-12:
        raise ValueError("regulated tail not negligible; decrease dc/delta coherently")
    S, mod = _scalar_S_and_mod(ks, a_others)
    phase = _phase_arrays(ks, c, S, mod)
    gc = ks.C * np.exp(1j * phase) * np.exp(-delta * c * c)
    s_arr = np.asarray(s_k, dtype=float)
    scalar_in = s_arr.shape == ()
    flat = s_arr.reshape(-1)
    pref = 1.0 / (2.0 * math.pi**2 * ks.hbar)
    out = np.empty(flat.shape, dtype=complex)
    chunk = max(1, int(4e6 / n))
    for lo in range(0, flat.size, chunk):
        ss = flat[lo:lo + chunk]
        E = np.exp(-1j * np.outer(ss, c) / (math.pi * ks.hbar))
        out[lo:lo + chunk] = pref * np.trapezoid(E * gc[None, :], c, axis=1)
    return complex(out[0]) if scalar_in else out.reshape(s_arr.shape)


def _kernel_phase_on_grid(ks: KernelSpec) -> np.ndarray:
    """Unit-modulus multiplier P(c, a_others) on the mixed grid (axis k in the
    c-representation), including the phase of C but not its modulus."""
    spec = ks.grid
    kk = ks.kk
    ndim = len(spec.axes)
    omega = spec.freq_array(kk)
    c = math.pi * ks.hbar * omega
    row = ks.seed.epsilon[kk]
    w = _mod_weights(ks)
    S = np.zeros((1,) * ndim)
    mod_lin = np.zeros((1,) * ndim)
    for j in range(ndim):
        if j == kk:
            continue
        if row[j]:
            S = S + row[j] * spec.coord_array(j)
        if w[j]:
            mod_lin = mod_lin + w[j] * spec.coord_array(j)
    phase = _phase_arrays(ks, c, S, mod_lin)
    unit = np.exp(1j * phase)
    cphase = ks.C / abs(ks.C)
    return unit * cphase


def apply_K(ks: KernelSpec, f: GridFunction, regulator_delta: float = 0.0) -> GridFunction:
    """Apply the intertwiner along axis k, entirely in the spectral domain:

        K f = (1/N) FFT_k[ exp(-2 i a0 w) * P(pi hbar w, a_others) * FFT_k[f] ]

    with P the unit-modulus kernel phase (|C| divided out, its phase kept) and
    a0 the left edge of the k-axis.  For the centered grids required here the
    edge phase is identically one; it is kept so the code matches the
    continuum derivation.  The operator is exactly unitary on the grid.
    """
    if f.spec != ks.grid:
        raise ValueError("grid function does not live on the kernel's grid")
    kk = ks.kk
    ax = ks.grid.axes[kk]
    if abs(ax.center) > 1e-12:
        raise ValueError("mutation axis must be centered at 0 (reflection is about the origin)")
    n = ax.points
    a0 = ax.center - ax.half_width
    omega = ks.grid.freq_array(kk)
    P = _kernel_phase_on_grid(ks)
    if regulator_delta > 0.0:
        c = math.pi * ks.hbar * omega
        P = P * np.exp(-regulator_delta * c * c)
    edge = np.exp(-2j * a0 * omega)
    inner = np.fft.fft(f.values, axis=kk)
    outer = np.fft.fft(edge * P * inner, axis=kk)
    return GridFunction(f.spec, outer / n)


def intertwining_residual(ks: KernelSpec, f: GridFunction, i: Label, sign: str,
                          convention: str = "uniform", wrong_eps: bool = False) -> float:
    """Relative defect || xhat'_i (K f) - K(kappa_i f) || / ||f||.

    ``wrong_eps=True`` builds the primed operator from the unmutated exchange
    matrix instead: the negative control that must degrade the residual.
    """
    target_seed = ks.seed if wrong_eps else mutate_seed(ks.seed, ks.k)
    Kf = apply_K(ks, f)
    lhs = apply_xhat(target_seed, ks.hbar, Kf, i, sign)
    rhs = apply_K(ks, kappa_apply(ks.seed, ks.hbar, f, ks.k, i, sign,
                                  convention=convention, cfg=ks.quad))
    return norm(lhs - rhs) / norm(f)


def pde_residual(ks: KernelSpec, c: float, a_others: Mapping[Label, float], i: Label,
                 step: float = 1e-3, use_cache: bool = False) -> tuple[float, float]:
    """Residuals of the kernel's two first-order equations at one point.

    Writing u_± = ±c/d_k - S and lg = log Ghat (central differences, default
    step 1e-3, on the closed-form kernel phase):

      a-equation:  2 pi i hbar d(lg)/da_i
                   = d_k * eps_ki * ( phl(u_+ ... ) ) ... see below
      c-equation:  2 pi i hbar d(lg)/dc
                   = -phl(c/d_k - S) - phl(-c/d_k - S) + sum_j (sgn(eps_jk)-1) eps_kj a_j

    with the a-equation right side
      (1/dhat_k) * eps_ki * ( phl(c/d_k - S) - phl(-c/d_k - S) + dhat_k*c*(sgn(eps_ik)-1) ).
    """
    ii = ks.seed.index(i)
    kk = ks.kk
    if ii == kk:
        raise ValueError("the kernel equations are indexed by directions i != k")
    row = ks.seed.epsilon[kk]
    eps_ik = ks.seed.epsilon[ii][kk]
    eps_ki = row[ii]
    dhat = ks.dhat_k

    def phase_at(cv: float, shift_i: float) -> float:
        S, mod = _scalar_S_and_mod(ks, a_others)
        S = S + row[ii] * shift_i
        w = _mod_weights(ks)
        mod = mod + w[ii] * shift_i
        return float(_phase_arrays(ks, np.asarray(cv, dtype=float), S, mod,
                                   use_cache=use_cache)[()])

    # 2*pi*i*hbar * d log Ghat = -2*pi*hbar * d(phase)  (log Ghat = log|C| + i*phase)
    dpda = (phase_at(c, step) - phase_at(c, -step)) / (2 * step)
    dpdc = (phase_at(c + step, 0.0) - phase_at(c - step, 0.0)) / (2 * step)
    lhs_a = -2.0 * math.pi * ks.hbar * dpda
    lhs_c = -2.0 * math.pi * ks.hbar * dpdc

    S, _ = _scalar_S_and_mod(ks, a_others)
    u_plus = dhat * c - S
    u_minus = -dhat * c - S
    ph = qlog.phi_values(np.array([u_plus, u_minus]), ks.hbar_k, ks.quad).real
    rhs_a = (1.0 / dhat) * eps_ki * (ph[0] - ph[1] + dhat * c * (sgn(eps_ik) - 1))
    lin = sum((sgn(-row[j]) - 1) * row[j] * float(a_others[lab])
              for j, lab in enumerate(ks.seed.labels) if j != kk)
    rhs_c = -ph[0] - ph[1] + lin
    return abs(lhs_a - rhs_a), abs(lhs_c - rhs_c)


def pde_sweep(ks: KernelSpec, points: Sequence[tuple[float, Mapping[Label, float]]] | None = None,
              step: float = 1e-3) -> dict:
    """Worst-case residuals of both kernel equations over a point sweep, for
    every applicable direction i != k with eps_ik != 0."""
    if points is None:
        others = [lab for j, lab in enumerate(ks.seed.labels) if j != ks.kk]
        base = [0.7, -0.3, 1.1, -0.9, 0.4]
        points = [(c, {lab: v * (0.6 + 0.2 * idx) for idx, lab in enumerate(others)})
                  for c, v in zip((0.7, -0.5, 1.3, 0.9, -1.1), base)]
    worst_a = worst_c = 0.0
    for i in ks.seed.labels:
        if i == ks.k or ks.seed.eps(i, ks.k) == 0:
            continue
        for c, a_others in points:
            ra, rc = pde_residual(ks, c, a_others, i, step=step)
            worst_a = max(worst_a, ra)
            worst_c = max(worst_c, rc)
    return {"a_equation": worst_a, "c_equation": worst_c}


def adjudicate_conventions(seeds: Sequence[tuple[Seed, Label]], hbar: float,
                           points: int, half_width: float,
                           rng: np.random.Generator,
                           pde_threshold: float = 1e-4,
                           intertwine_threshold: float = 1e-2) -> dict:
    """Run the PDE and intertwining batteries under both exponent conventions
    and name the one that passes everywhere (expected: exactly one does).
    """
    from .grid import random_gaussian

    report: dict = {"hbar": hbar, "conventions": {}}
    for conv in CONVENTIONS:
        pde_worst = 0.0
        int_worst = 0.0
        per_seed = []
        for s, k in seeds:
            spec = GridSpec.uniform(s.rank, points, half_width)
            ks = KernelSpec(s, k, hbar, spec, convention=conv)
            pw = pde_sweep(ks)
            f = random_gaussian(spec, rng)
            iw = 0.0
            for i in s.labels:
                for sign in ("+", "-"):
                    iw = max(iw, intertwining_residual(ks, f, i, sign))
            per_seed.append({"seed": str(s), "k": k, "pde": pw, "intertwining": iw})
            pde_worst = max(pde_worst, pw["a_equation"], pw["c_equation"])
            int_worst = max(int_worst, iw)
        report["conventions"][conv] = {
            "pde_worst": pde_worst,
            "intertwining_worst": int_worst,
            "pde_pass": pde_worst <= pde_threshold,
            "intertwining_pass": int_worst <= intertwine_threshold,
            "details": per_seed,
        }
    passing = [c for c, r in report["conventions"].items()
               if r["pde_pass"] and r["intertwining_pass"]]
    report["adjudicated"] = passing[0] if len(passing) == 1 else None
    report["unique"] = len(passing) == 1
    return report
