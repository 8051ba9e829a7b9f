"""Closed-form results for the two model systems.

Two-level system: damped Bloch oscillation z(t), the two-time correlator,
the fourth-order Leggett-Garg quantity, the Zeno decay rate.  Harmonic
oscillator: undamped mean position, free position correlator, the
measurement-backaction correlation f_lambda, and the frequency-domain
noise bound.

All overdamped evaluations use real split exponentials with the slow
rate written as omega^2 / (lam + sqrt(lam^2 - omega^2)) so nothing
cancels catastrophically, and the near-critical region goes through
series expansions in u = (omega^2 - lam^2) t^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class TlsParams:
    """Rabi frequency omega and measurement strength lam for the
    two-level system (H = hbar*omega*sx/2, measured observable sz)."""

    omega: float
    lam: float

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.lam < 0:
            raise ValueError("lam must be >= 0")


@dataclass(frozen=True)
class HoParams:
    """Harmonic-oscillator parameters plus initial first and second
    moments of (x, p).

    xp_w is the symmetrized (Wigner-ordered) cross moment
    <{dx, dp}>/2.  The second moments must satisfy the uncertainty
    bound x_var * p_var - xp_w^2 >= hbar^2/4 (up to rounding).
    """

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    lam: float = 0.0
    x_mean: float = 0.0
    p_mean: float = 0.0
    x_var: float = 0.5
    p_var: float = 0.5
    xp_w: float = 0.0

    def __post_init__(self):
        if self.mass <= 0 or self.omega <= 0 or self.hbar <= 0:
            raise ValueError("mass, omega, hbar must be positive")
        if self.lam < 0:
            raise ValueError("lam must be >= 0")
        if self.x_var < 0 or self.p_var < 0:
            raise ValueError("variances must be >= 0")
        if self.x_var * self.p_var - self.xp_w**2 < 0.25 * self.hbar**2 - 1e-12:
            raise ValueError("initial moments violate the uncertainty bound")


# -- small-argument-safe trig helpers --------------------------------------
#
# cos_sqrt(u) = cos(sqrt(u))        for u >= 0, cosh(sqrt(-u)) for u < 0
# sinc_sqrt(u) = sin(sqrt(u))/sqrt(u)  resp.  sinh(sqrt(-u))/sqrt(-u)
#
# Both are entire functions of u; the series branch keeps them smooth
# through u = 0 (the critically damped point).

_SERIES_CUTOFF = 1e-3


def _cos_sqrt(u: float) -> float:
    if abs(u) < _SERIES_CUTOFF:
        return 1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0
    if u > 0:
        return math.cos(math.sqrt(u))
    return math.cosh(math.sqrt(-u))


def _sinc_sqrt(u: float) -> float:
    if abs(u) < _SERIES_CUTOFF:
        return 1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0
    if u > 0:
        x = math.sqrt(u)
        return math.sin(x) / x
    x = math.sqrt(-u)
    return math.sinh(x) / x


def _one_minus_cos_sqrt_over(u: float) -> float:
    """(1 - cos_sqrt(u)) / u, series-protected near u = 0."""
    if abs(u) < _SERIES_CUTOFF:
        return 0.5 - u / 24.0 + u * u / 720.0 - u * u * u / 40320.0
    return (1.0 - _cos_sqrt(u)) / u


def _tls_z_scalar(omega: float, lam: float, t: float) -> float:
    if t < 0:
        raise ValueError("t must be >= 0")
    disc = omega * omega - lam * lam  # Omega^2, sign selects the branch
    u = disc * t * t
    if disc >= 0 or -u <= 1.0:
        # underdamped, critical, or barely overdamped: the unified form
        # exp(-lam t) (cos Omega t + lam t sinc(Omega t)) has no
        # cancellation and no overflow while |Omega' t| <= 1
        return math.exp(-lam * t) * (_cos_sqrt(u) + lam * t * _sinc_sqrt(u))
    # overdamped with a large hyperbolic argument: split exponentials,
    # slow rate via the cancellation-free form omega^2 / (lam + Omega')
    op = math.sqrt(-disc)
    rate_slow = omega * omega / (lam + op)
    rate_fast = lam + op
    a_plus = 0.5 * (1.0 + lam / op)
    a_minus = 0.5 * (1.0 - lam / op)
    return a_plus * math.exp(-rate_slow * t) + a_minus * math.exp(-rate_fast * t)


def tls_z(p: TlsParams, t) -> float | np.ndarray:
    """Mean sz of the monitored two-level system started from the
    spin-up state: exp(-lam t)(cos Om t + lam sin(Om t)/Om) with
    Om = sqrt(omega^2 - lam^2), continued smoothly through the critical
    point lam = omega into the overdamped regime."""
    arr = np.asarray(t, dtype=float)
    if arr.ndim == 0:
        return _tls_z_scalar(p.omega, p.lam, float(arr))
    out = np.empty(arr.shape, dtype=float)
    flat = arr.reshape(-1)
    dst = out.reshape(-1)
    for i in range(flat.size):
        dst[i] = _tls_z_scalar(p.omega, p.lam, float(flat[i]))
    return out


def tls_corr(p: TlsParams, t: float, t_prime: float) -> float:
    """Two-time quasiprobability correlator of sz for the spin-up
    initial state; depends only on |t - t'|."""
    if t < 0 or t_prime < 0:
        raise ValueError("times must be >= 0")
    return _tls_z_scalar(p.omega, p.lam, abs(t - t_prime))


def lg_x2_closed(p: TlsParams) -> float:
    """Fourth-order Leggett-Garg quantity <X^2>_q for the maximally
    mixed state, X = sz(0)sz(pi/w) + sz(-pi/2w)sz(pi/2w) + 2.

    Equals 6 + exp(-pi q) [1/r^2 + (10 - 1/r^2) cos(pi r)
    + 10 q sin(pi r)/r] with q = lam/omega, r = sqrt(1 - q^2).  Negative
    (down to -2) for weak measurement, rising to 16 in the strong
    (Zeno) limit; evaluated via real hyperbolic continuations past
    q = 1.
    """
    q = p.lam / p.omega
    u = math.pi * math.pi * (1.0 - q * q)  # (pi r)^2, signed
    if u >= 0 or -u <= 1.0:
        bracket = (
            math.pi * math.pi * _one_minus_cos_sqrt_over(u)
            + 10.0 * _cos_sqrt(u)
            + 10.0 * q * math.pi * _sinc_sqrt(u)
        )
        return 6.0 + math.exp(-math.pi * q) * bracket
    # strongly overdamped: q > 1 with pi*s > 1, s = sqrt(q^2 - 1);
    # combine exponents so exp(-pi q) cosh(pi s) never overflows
    s = math.sqrt(q * q - 1.0)
    e_slow = math.exp(-math.pi / (q + s))  # exp(-pi (q - s))
    e_fast = math.exp(-math.pi * (q + s))
    cosh_term = 0.5 * (e_slow + e_fast)
    sinh_term = 0.5 * (e_slow - e_fast) / s
    return (
        6.0
        + 10.0 * cosh_term
        + (cosh_term - math.exp(-math.pi * q)) / (s * s)
        + 10.0 * q * sinh_term
    )


def ho_mean_x(p: HoParams, t: float) -> float:
    """Mean position: undamped oscillation, independent of lam."""
    if t < 0:
        raise ValueError("t must be >= 0")
    mw = p.mass * p.omega
    return p.x_mean * math.cos(p.omega * t) + p.p_mean * math.sin(p.omega * t) / mw


def ho_free_corr(p: HoParams, t: float, t_prime: float) -> float:
    """Free (lam -> 0) symmetrized position correlator
    <dx(t) dx(t')>_0 from the initial second moments, with the
    Wigner-ordered cross moment entering through sin w(t+t')."""
    mw = p.mass * p.omega
    return (
        p.x_var * math.cos(p.omega * t) * math.cos(p.omega * t_prime)
        + p.xp_w * math.sin(p.omega * (t + t_prime)) / mw
        + p.p_var * math.sin(p.omega * t) * math.sin(p.omega * t_prime) / (mw * mw)
    )


def ho_backaction(p: HoParams, t: float, t_prime: float) -> float:
    """Measurement-induced position correlation f_lambda(t, t').

    (lam hbar^2 / 2 (m w)^2) [min(t,t') cos w(t-t')
      + (sin w|t-t'| - sin w(t+t')) / 2w].

    Symmetric, vanishes when either argument is 0, grows linearly in
    min(t, t') at equal times; the equal-time short-time limit is
    lam hbar^2 t^3 / 3 m^2.
    """
    if t < 0 or t_prime < 0:
        raise ValueError("times must be >= 0")
    mw = p.mass * p.omega
    pref = p.lam * p.hbar**2 / (2.0 * mw * mw)
    dt = abs(t - t_prime)
    return pref * (
        min(t, t_prime) * math.cos(p.omega * (t - t_prime))
        + (math.sin(p.omega * dt) - math.sin(p.omega * (t + t_prime)))
        / (2.0 * p.omega)
    )


class HoFourierNoise(NamedTuple):
    signal: float
    quasi_noise: float
    detector_noise: float
    bound: float


def ho_noise_lhs(p: HoParams, lambda_t0: float) -> float:
    """Detector-originated part of the frequency-domain uncertainty:
    backaction term lam t0 hbar^2 / 6 (m w)^2 plus detector term
    1/(2 t0 lam), as a function of the product lam*t0 alone."""
    if lambda_t0 <= 0:
        raise ValueError("lambda_t0 must be positive")
    mw = p.mass * p.omega
    return lambda_t0 * p.hbar**2 / (6.0 * mw * mw) + 0.5 / lambda_t0


def ho_noise_minimizer(p: HoParams) -> float:
    """The lam*t0 value minimizing ho_noise_lhs: sqrt(3) m w / hbar."""
    return math.sqrt(3.0) * p.mass * p.omega / p.hbar


def ho_fourier_noise(p: HoParams, t0: float) -> HoFourierNoise:
    """Frequency-domain signal and noise at the oscillator peak.

    signal: the mean Fourier amplitude <x~(w)> = <x(0)>.
    quasi_noise: intrinsic plus backaction variance
        <dx(0)^2> + lam t0 hbar^2 / 6 (m w)^2.
    detector_noise: 1/(2 t0 lam).
    bound: hbar / (sqrt(3) m w); the lam/t0-dependent part of
        quasi_noise plus detector_noise can never go below it.

    Requires t0 > 2 pi / omega (at least one full period in the window;
    the formulas are the long-window asymptotics).
    """
    if t0 <= 2.0 * math.pi / p.omega:
        raise ValueError("t0 must exceed one oscillation period")
    if p.lam <= 0:
        raise ValueError("lam must be positive for the noise split")
    mw = p.mass * p.omega
    backaction = p.lam * t0 * p.hbar**2 / (6.0 * mw * mw)
    return HoFourierNoise(
        signal=p.x_mean,
        quasi_noise=p.x_var + backaction,
        detector_noise=0.5 / (t0 * p.lam),
        bound=p.hbar / (math.sqrt(3.0) * mw),
    )


def zeno_rate(p: TlsParams) -> float:
    """Asymptotic decay rate omega^2 / 2 lam of the overdamped
    two-level system: the stronger the measurement, the slower the
    decay (measurement freezes the dynamics)."""
    if p.lam <= p.omega:
        raise ValueError("zeno_rate requires lam > omega (overdamped regime)")
    return p.omega * p.omega / (2.0 * p.lam)
