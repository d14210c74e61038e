"""Heisenberg-picture observables: photon statistics, correlations,
quadrature squeezing, signal-to-noise ratios and the instantaneous
diagonalization of the Hamiltonian."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .amplitudes import CoherentPair, FockPair, coherent_mean_numbers
from .model import (DEFAULT_REGIME_EPS, ModelParams, RegimeError, RegimeTag,
                    classify_regime)
from .moments import MomentTable
from .weinorman import (DerivedScalars, WeiNormanCoefficients, coefficients,
                        derived_scalars, scalars, solve_analytic)


@dataclass(frozen=True)
class BogoliubovCoefficients:
    """a(t) = u a + v b+ with |u|^2 - |v|^2 = 1."""

    u: complex
    v: complex
    t: float


def heisenberg_a(params: ModelParams, t: float) -> BogoliubovCoefficients:
    """Heisenberg-picture mixing coefficients of the a mode (harmonic pump).

    The b-mode operator follows by swapping the roles of the modes; it has
    the same |u|, |v| with the omega_b free phase instead.
    """
    c = solve_analytic(params, t)
    u = np.exp(-np.conj(c.a_zero) - 1j * params.omega_a * t)
    return BogoliubovCoefficients(u=complex(u),
                                  v=complex(-u * np.conj(c.a_minus)), t=t)


def mean_photon_fock(d: DerivedScalars, f: FockPair) -> tuple[float, float]:
    """(mean_a, mean_b) = (r, s) + n0 (r+s+1); the difference is conserved."""
    pumped = d.n0 * (f.r + f.s + 1.0)
    return f.r + pumped, f.s + pumped


def mandel_q_fock(d: DerivedScalars, f: FockPair) -> float:
    """Mandel Q of the a mode for an initial Fock pair.

    Q(0) is -1 for r != 0 and 0 for r = 0 (the latter taken as the
    explicit n0 -> 0 limit of the closed form).
    """
    r, s, n0 = f.r, f.s, d.n0
    if n0 == 0.0:
        return -1.0 if r > 0 else 0.0
    num = n0 * 2.0 * r * s + n0 * n0 * (2.0 * r * s + r + s + 1.0) - r
    den = r + n0 * (r + s + 1.0)
    return num / den


def mandel_q_fock_max(params: ModelParams, f: FockPair) -> float:
    """Maximum of Q over time for k^2 > 1 (monotone in n0, peak at n0 = 1/(k^2-1))."""
    k2 = params.k2
    if k2 <= 1.0:
        raise RegimeError("Q is unbounded above for k^2 <= 1")
    n0_max = 1.0 / (k2 - 1.0)
    r, s = f.r, f.s
    num = n0_max * 2 * r * s + n0_max ** 2 * (2 * r * s + r + s + 1) - r
    return num / (r + n0_max * (r + s + 1))


def mandel_q_coherent(moments: MomentTable) -> float:
    """Mandel Q from the moment table; requires a nonzero mean."""
    mean = moments.mean_a
    if mean == 0.0:
        raise ValueError("Mandel Q undefined at zero mean photon number")
    return (moments.expect(2, 2, 0, 0).real - mean * mean) / mean


def cross_correlation_fock(d: DerivedScalars, f: FockPair) -> tuple[float, float]:
    """(f, F) for an initial Fock pair from the closed form.

    F = f / sqrt(mean_a mean_b) is NaN whenever a mean vanishes (e.g. at
    t = 0 with r or s zero).
    """
    r, s, x, y = f.r, f.s, d.x, d.y
    first = math.sqrt(r * (r - 1.0) + 4.0 * r * (s + 1.0) * y
                      + (s + 1.0) * (s + 2.0) * y * y)
    second = math.sqrt(s * (s - 1.0) + 4.0 * s * (r + 1.0) * y
                       + (r + 1.0) * (r + 2.0) * y * y)
    bracket = (r * s + (r + 1.0) * (s + 1.0) * y * y
               + (r * s + r * (r + 1.0) + s * (s + 1.0)
                  + (r + 1.0) * (s + 1.0)) * y)
    f_value = x * x * (first * second - bracket)
    mean_a, mean_b = mean_photon_fock(d, f)
    if mean_a * mean_b <= 0.0:
        return f_value, math.nan
    return f_value, f_value / math.sqrt(mean_a * mean_b)


def cross_correlation_general(moments: MomentTable) -> tuple[float, float]:
    """(f, F) from the moment table; f < 0 certifies non-classical correlations."""
    f_value = (math.sqrt(max(moments.expect(2, 2, 0, 0).real, 0.0))
               * math.sqrt(max(moments.expect(0, 0, 2, 2).real, 0.0))
               - moments.expect(1, 1, 1, 1).real)
    denom = moments.mean_a * moments.mean_b
    if denom <= 0.0:
        return f_value, math.nan
    return f_value, f_value / math.sqrt(denom)


# -- quadrature squeezing ---------------------------------------------------


@dataclass(frozen=True)
class SqueezingKernel:
    """|T_theta(t)|^2 together with its oscillation kernels G(t), H(t)."""

    theta: float
    t_sq: float
    g_kernel: float
    h_kernel: float


def _gh_kernels(k, gt, epsilon: float = DEFAULT_REGIME_EPS):
    """Vectorized (G, H); the two detuning branches agree at k^2 = 1."""
    k, gt = np.broadcast_arrays(np.asarray(k, dtype=float),
                                np.asarray(gt, dtype=float))
    k2 = k * k
    sub = k2 < 1.0 - epsilon
    sup = k2 > 1.0 + epsilon
    crit = ~(sub | sup)

    G = np.empty(k.shape)
    H = np.empty(k.shape)
    if np.any(sub):
        ks, gts = k[sub], gt[sub]
        q = np.sqrt(1.0 - ks * ks)
        tan_g = ks / q
        th = np.tanh(gts * q)
        den = 1.0 + th * th * tan_g * tan_g
        G[sub] = q * th * (1.0 + tan_g * tan_g) / den
        H[sub] = tan_g * (1.0 - (1.0 - th * th) / den) * q
    if np.any(sup):
        ks, gts = k[sup], gt[sup]
        q = np.sqrt(ks * ks - 1.0)
        u = gts * q
        td = q / ks  # tanh(delta)
        tn = np.tan(u)
        # rewrite in cos/sin to stay finite at the tan poles
        cu, su = np.cos(u), np.sin(u)
        den = su * su + td * td * cu * cu
        G[sup] = q * su * cu * (1.0 - td * td) / den
        H[sup] = q * (ks / q - td / den)
    if np.any(crit):
        ks, gts = k[crit], gt[crit]
        s = np.sign(ks)
        G[crit] = gts / (1.0 + gts * gts)
        H[crit] = s * gts * gts / (1.0 + gts * gts)
    return G, H


def squeezing_kernel(params: ModelParams, theta: float,
                     t: float) -> SqueezingKernel:
    """Quadrature kernel |T_theta|^2 = x [1 + y - 2(cos(Wt-2th) G + sin(Wt-2th) H)]."""
    k, gt = params.k, params.g * t
    G, H = _gh_kernels(k, gt)
    x, y, _, _, _, _ = scalars(k, gt)
    phase = params.Omega * t - 2.0 * theta
    t_sq = x * (1.0 + y - 2.0 * (np.cos(phase) * G + np.sin(phase) * H))
    return SqueezingKernel(theta=theta, t_sq=float(t_sq),
                           g_kernel=float(G), h_kernel=float(H))


def quadrature_variance(kernel: SqueezingKernel,
                        state: FockPair | CoherentPair) -> float:
    """Var X_theta: (r+s+1)|T|^2 for Fock pairs, |T|^2 for any coherent pair."""
    if isinstance(state, FockPair):
        return kernel.t_sq * (state.r + state.s + 1.0)
    return kernel.t_sq


def squeezing_extrema(params: ModelParams, theta: float, t_range,
                      n_grid: int = 4001) -> list[tuple[float, float]]:
    """Local minima of |T_theta|^2 on (t0, t1), bracketed on a grid and refined."""
    t0, t1 = t_range
    ts = np.linspace(t0, t1, n_grid)
    G, H = _gh_kernels(params.k, params.g * ts)
    x, y, _, _, _, _ = scalars(params.k, params.g * ts)
    phase = params.Omega * ts - 2.0 * theta
    vals = x * (1.0 + y - 2.0 * (np.cos(phase) * G + np.sin(phase) * H))

    def objective(t):
        return squeezing_kernel(params, theta, t).t_sq

    minima = []
    for i in range(1, n_grid - 1):
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1]:
            res = minimize_scalar(objective, bounds=(ts[i - 1], ts[i + 1]),
                                  method="bounded",
                                  options={"xatol": 1e-12})
            minima.append((float(res.x), float(res.fun)))
    return minima


def asymptotic_minima_period(params: ModelParams) -> float:
    """Large-time spacing of the quadrature-variance minima below threshold."""
    if classify_regime(params).tag is not RegimeTag.SUB or params.k == 0.0:
        raise RegimeError("asymptotic period pi/k applies below threshold with k != 0")
    return math.pi / (abs(params.k) * params.g)


# -- signal-to-noise ---------------------------------------------------------


@dataclass(frozen=True)
class SnrExtremum:
    time: float
    value: float
    kind: str  # 'local_max' | 'global_min' | 'global_max'


@dataclass(frozen=True)
class SnrReport:
    """Quadrature signal-to-noise ratio and its Yuen bound."""

    eta: float
    yuen_bound: float
    mean_a: float


def snr_rho_fock(d: DerivedScalars, f: FockPair) -> float:
    """rho_a = mean / std of n_a(t); +inf at n0 = 0 with r > 0 (no Fock variance)."""
    r, s, n0 = f.r, f.s, d.n0
    if n0 == 0.0:
        return math.inf if r > 0 else 0.0
    return ((r + n0 * (r + s + 1.0))
            / math.sqrt(n0 + n0 * n0)
            / math.sqrt(2.0 * r * s + r + s + 1.0))


def snr_rho_limit(f: FockPair) -> float:
    """Large-time limit of rho_a below threshold: (r+s+1)/sqrt(2rs+r+s+1)."""
    return (f.r + f.s + 1.0) / math.sqrt(2.0 * f.r * f.s + f.r + f.s + 1.0)


def snr_rho_extremum_value(params: ModelParams, f: FockPair) -> float:
    """rho at the half-period times gt sqrt(k^2-1) = n pi/2 (odd n)."""
    k2 = params.k2
    return ((f.r * k2 + f.s + 1.0)
            / math.sqrt(k2 * (2.0 * f.r * f.s + f.r + f.s + 1.0)))


def snr_rho_min_value(f: FockPair) -> float:
    """Global-minimum value, independent of the detuning."""
    r, s = f.r, f.s
    return 2.0 * math.sqrt((1.0 + 1.0 / s)
                           / (2.0 + 1.0 / r + 1.0 / s + 1.0 / (r * s)))


def snr_rho_extrema(params: ModelParams, f: FockPair,
                    periods: int = 1) -> list[SnrExtremum]:
    """Analytic extrema of rho_a over the first ``periods`` revival periods.

    Requires k^2 > 1.  When 0 < r/(s-r+1) < 1/(k^2-1) the half-period
    extremum is a local maximum flanked by two global minima per period;
    otherwise it is the single global extremum (max for r = 0, min for
    r != 0).  A non-positive denominator s-r+1 counts as violating the
    inequality.
    """
    k2 = params.k2
    if k2 <= 1.0:
        raise RegimeError("rho extrema classification requires k^2 > 1")
    root = math.sqrt(k2 - 1.0)
    scale = 1.0 / (params.g * root)
    r, s = f.r, f.s

    has_minima = (s - r + 1.0) > 0.0 and r > 0 \
        and r / (s - r + 1.0) < 1.0 / (k2 - 1.0)
    extremum = snr_rho_extremum_value(params, f)
    out = []
    for period in range(periods):
        base = period * math.pi
        if has_minima:
            asin = math.asin(math.sqrt((k2 - 1.0) * r / (s - r + 1.0)))
            value = snr_rho_min_value(f)
            out.append(SnrExtremum(time=(base + asin) * scale, value=value,
                                   kind="global_min"))
            out.append(SnrExtremum(time=(base + math.pi / 2.0) * scale,
                                   value=extremum, kind="local_max"))
            out.append(SnrExtremum(time=(base + math.pi - asin) * scale,
                                   value=value, kind="global_min"))
        else:
            kind = "global_max" if r == 0 else "global_min"
            out.append(SnrExtremum(time=(base + math.pi / 2.0) * scale,
                                   value=extremum, kind=kind))
    return out


def snr_eta_coherent(c: WeiNormanCoefficients, d: DerivedScalars,
                     pair: CoherentPair) -> SnrReport:
    """Quadrature SNR eta_a for a coherent pair, with the Yuen bound.

    eta vanishes identically for Fock inputs (zero quadrature mean).
    """
    alpha, beta = pair.alpha, pair.beta
    big_k = (np.exp(-2.0 * np.conj(c.a_zero))
             * (alpha - np.conj(beta) * np.conj(c.a_minus)) ** 2).real
    eta = (big_k + d.x * (abs(alpha) ** 2
                          - 2.0 * (alpha * beta * c.a_minus).real
                          + abs(beta) ** 2 * d.y)) / (d.n0 + 0.5)
    mean_a, _ = coherent_mean_numbers(c, d, pair)
    return SnrReport(eta=float(eta),
                     yuen_bound=4.0 * mean_a * (mean_a + 1.0),
                     mean_a=mean_a)


# -- instantaneous diagonalization -------------------------------------------


@dataclass(frozen=True)
class DiagonalizationResult:
    stable: bool
    omega_A: float | None
    omega_B: float | None
    omega_0: float | None
    squeeze_r: float | None
    squeeze_phi_offset: float  # phi = pi/2 - omega*t; the constant part


def instantaneous_diagonalization(params: ModelParams) -> DiagonalizationResult:
    """Two-mode squeeze diagonalization; unstable when g^2 >= omega_+^2."""
    w_plus = 0.5 * (params.omega_a + params.omega_b)
    w_minus = 0.5 * (params.omega_a - params.omega_b)
    ratio = params.g ** 2 / w_plus ** 2
    if ratio >= 1.0:
        return DiagonalizationResult(stable=False, omega_A=None, omega_B=None,
                                     omega_0=None, squeeze_r=None,
                                     squeeze_phi_offset=math.pi / 2.0)
    root = math.sqrt(1.0 - ratio)
    cosh2r = 1.0 / root
    return DiagonalizationResult(
        stable=True,
        omega_A=w_minus + w_plus * root,
        omega_B=-w_minus + w_plus * root,
        omega_0=w_plus * root,
        squeeze_r=0.5 * math.acosh(cosh2r),
        squeeze_phi_offset=math.pi / 2.0,
    )
