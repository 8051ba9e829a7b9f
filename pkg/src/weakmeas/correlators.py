"""Quasiprobability multi-time moments via superoperator chains.

An n-time moment is evaluated by sorting the times, interleaving
finite-time propagators with the Jordan (symmetrized-product)
superoperator of the measured observable, and tracing against the
initial state:

    <a(t1)...a(tn)>_q = Tr[ J U(tn - t_{n-1}) ... J U(t1 - 0) rho ]

The trace is mathematically real; the imaginary residue is checked, not
silently dropped, because it is the cheapest available bug detector.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .lindblad import (
    MeasurementSetup,
    jordan_superoperator,
    liouvillian,
    apply_generator,
    vec,
)
from .operators import (
    SIGMA_X,
    SIGMA_Z,
    DensityMatrix,
    HermitianOperator,
    as_matrix,
    matrix_exponential,
)

IMAG_RESIDUE_TOL = 1e-10
STATIONARITY_TOL = 1e-10


@dataclass(frozen=True)
class MomentQuery:
    """Time multiset of one quasiprobability moment; order and repeats
    are both allowed (times are sorted internally, repeated times get an
    identity propagator between the two Jordan insertions)."""

    times: tuple[float, ...]

    def __post_init__(self):
        ts = tuple(float(t) for t in self.times)
        if len(ts) < 1:
            raise ValueError("a moment query needs at least one time")
        object.__setattr__(self, "times", ts)


@dataclass(frozen=True)
class CorrelationResult:
    """A correlator value with its computational route; stat_error is 0
    for the deterministic routes."""

    value: float
    route: str
    stat_error: float = 0.0

    def __post_init__(self):
        if self.route not in ("chain", "closed_form", "monte_carlo"):
            raise ValueError(f"unknown route {self.route!r}")
        if self.route in ("chain", "closed_form") and self.stat_error != 0.0:
            raise ValueError("deterministic routes carry no statistical error")
        if not math.isfinite(self.value):
            raise ValueError("correlator value must be finite")


class PropagatorCache:
    """exp(L * gap) keyed by gap; concurrent reads are safe and writes
    are lock-protected.  Chains over sorted time grids hit the same few
    gaps over and over (the Leggett-Garg expansion in particular reuses
    multiples of pi/2w), so this is worth the little bookkeeping."""

    def __init__(self, setup: MeasurementSetup):
        self.setup = setup
        self.generator = liouvillian(setup).entries
        self._lock = threading.Lock()
        self._store: dict[float, np.ndarray] = {}

    def propagator_entries(self, gap: float) -> np.ndarray:
        key = float(gap)
        if key < 0:
            raise ValueError("propagator gap must be >= 0")
        with self._lock:
            hit = self._store.get(key)
        if hit is not None:
            return hit
        mat = matrix_exponential(self.generator * key)
        with self._lock:
            self._store.setdefault(key, mat)
        return mat


def _normalized_times(setup, rho, times: Sequence[float]) -> tuple[float, ...]:
    ts = sorted(float(t) for t in times)
    if ts and ts[0] < 0:
        drift = float(np.linalg.norm(apply_generator(setup, rho)))
        if drift >= STATIONARITY_TOL:
            raise ValueError(
                "negative query times need a stationary state "
                f"(|L rho| = {drift:.3e} >= {STATIONARITY_TOL})"
            )
        shift = -ts[0]
        ts = [t + shift for t in ts]
    return tuple(ts)


def _chain_trace(cache: PropagatorCache, jordan: np.ndarray,
                 rho_mat: np.ndarray, times_sorted: Sequence[float]) -> float:
    d = cache.setup.dim
    v = vec(rho_mat)
    prev = 0.0
    for t in times_sorted:
        gap = t - prev
        if gap > 0.0:
            v = cache.propagator_entries(gap) @ v
        v = jordan @ v
        prev = t
    val = complex(v[:: d + 1].sum())  # trace of the unvectorized matrix
    if abs(val.imag) > IMAG_RESIDUE_TOL:
        raise ValueError(f"imaginary residue {val.imag:.3e} in chain trace")
    return float(val.real)


def quasi_moment(
    setup: MeasurementSetup,
    rho: DensityMatrix,
    query,
    cache: PropagatorCache | None = None,
) -> CorrelationResult:
    """Evaluate one quasiprobability moment through the superoperator
    chain.  `query` is a MomentQuery or a plain sequence of times.

    Negative times are allowed only for a stationary rho (checked); the
    whole multiset is then shifted so the earliest time is 0, which
    leaves the moment unchanged by stationarity.
    """
    times = query.times if isinstance(query, MomentQuery) else tuple(query)
    if len(times) == 0:
        return CorrelationResult(1.0, "chain")  # empty product convention
    ts = _normalized_times(setup, as_matrix(rho), times)
    if cache is None:
        cache = PropagatorCache(setup)
    jordan = jordan_superoperator(setup.A).entries
    value = _chain_trace(cache, jordan, as_matrix(rho), ts)
    return CorrelationResult(value, "chain")


def quasi_polynomial_moment(
    setup: MeasurementSetup,
    rho: DensityMatrix,
    poly: Iterable[tuple[float, Sequence[float]]],
    cache: PropagatorCache | None = None,
) -> CorrelationResult:
    """Moment of a polynomial in the a(t) factors, given as an iterable
    of (coefficient, times) monomials; an empty times tuple is the
    constant monomial 1.  Expands by linearity, sharing one propagator
    cache across all monomials."""
    if cache is None:
        cache = PropagatorCache(setup)
    total = 0.0
    for coeff, times in poly:
        total += coeff * quasi_moment(setup, rho, tuple(times), cache).value
    return CorrelationResult(total, "chain")


def leggett_garg_x2(omega: float, lam: float) -> CorrelationResult:
    """<X^2>_q for X = sz(0)sz(pi/w) + sz(-pi/2w)sz(pi/2w) + 2 on the
    maximally mixed two-level state with H = hbar w sx / 2.

    The maximally mixed state is stationary for every setup, so all
    times are shifted by +pi/2w to put the earliest at 0 before the
    chains are evaluated.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if lam < 0:
        raise ValueError("lam must be >= 0")
    setup = MeasurementSetup(
        H=HermitianOperator(0.5 * omega * SIGMA_X),
        A=HermitianOperator(SIGMA_Z),
        lam=lam,
    )
    rho = DensityMatrix.maximally_mixed(2)
    s = 0.5 * math.pi / omega  # the shift, and the base time unit
    # X = p1 + p2 + 2 with p1 = a(s)a(3s), p2 = a(0)a(2s) after the shift
    poly = [
        (1.0, (s, s, 3 * s, 3 * s)),      # p1^2
        (1.0, (0.0, 0.0, 2 * s, 2 * s)),  # p2^2
        (2.0, (0.0, s, 2 * s, 3 * s)),    # 2 p1 p2
        (4.0, (s, 3 * s)),                # 4 p1
        (4.0, (0.0, 2 * s)),              # 4 p2
        (4.0, ()),                        # the constant 4
    ]
    res = quasi_polynomial_moment(setup, rho, poly)
    return CorrelationResult(res.value, "chain")


def weak_positivity_gram(
    setup: MeasurementSetup,
    rho: DensityMatrix,
    times: Sequence[float],
) -> tuple[np.ndarray, float]:
    """Gram matrix of {1, da(t1), ..., da(tn)} under the quasiprobability
    and its minimum eigenvalue.

    da(t) = a(t) - <a(t)>_q, so the constant row/column is (1, 0, ..., 0)
    and the rest is the centered second-moment matrix.  Weak positivity
    says this is PSD for every setup and state, which is why
    quasiprobability negativity is only visible from fourth order up.
    """
    ts = [float(t) for t in times]
    if len(ts) == 0:
        raise ValueError("need at least one time")
    cache = PropagatorCache(setup)
    n = len(ts)
    singles = np.array(
        [quasi_moment(setup, rho, (t,), cache).value for t in ts]
    )
    centered = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            m2 = quasi_moment(setup, rho, (ts[i], ts[j]), cache).value
            centered[i, j] = centered[j, i] = m2 - singles[i] * singles[j]
    gram = np.zeros((n + 1, n + 1))
    gram[0, 0] = 1.0
    gram[1:, 1:] = centered
    min_eig = float(np.linalg.eigvalsh(gram)[0])
    return gram, min_eig


def detector_variance_time_avg(lam: float, t0: float) -> float:
    """Variance of the window-averaged record due to detector noise
    alone: 1 / (4 lam t0)."""
    if lam <= 0 or t0 <= 0:
        raise ValueError("lam and t0 must be positive")
    return 1.0 / (4.0 * lam * t0)


def detector_variance_fourier(lam: float, t0: float) -> float:
    """Variance of the cosine-weighted Fourier average of pure detector
    noise: 1 / (2 t0 lam), independent of the sampling step."""
    if lam <= 0 or t0 <= 0:
        raise ValueError("lam and t0 must be positive")
    return 1.0 / (2.0 * lam * t0)


def snr_commuting(a_eigenvalue: float, lam: float, t0: float) -> float:
    """Signal-to-noise of a time-averaged record when the observable
    commutes with H and the state is an eigenstate: 2 a sqrt(lam t0).
    Any measurement becomes a strong one if integrated long enough."""
    if lam <= 0 or t0 <= 0:
        raise ValueError("lam and t0 must be positive")
    return 2.0 * a_eigenvalue * math.sqrt(lam * t0)


def _partitions(items: tuple):
    """All set partitions of a tuple of distinct labels."""
    if len(items) == 1:
        yield [items]
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]
        yield [(first,)] + part
# note: labels are positions, so repeated time values stay distinguishable


def joint_cumulant(moment_fn: Callable[[tuple], float], times: Sequence[float]) -> float:
    """Generic moment-to-cumulant conversion.

    moment_fn maps a tuple of times to the corresponding joint moment;
    the cumulant follows from the Moebius inversion over set partitions.
    Only low orders are ever needed here (the library uses moments up
    to fourth order), but the formula is generic.
    """
    ts = tuple(float(t) for t in times)
    labels = tuple(range(len(ts)))
    total = 0.0
    for part in _partitions(labels):
        k = len(part)
        weight = math.factorial(k - 1) * (-1.0) ** (k - 1)
        prod = 1.0
        for block in part:
            prod *= moment_fn(tuple(ts[i] for i in block))
        total += weight * prod
    return total


def quasi_cumulant(
    setup: MeasurementSetup,
    rho: DensityMatrix,
    times: Sequence[float],
) -> float:
    """Joint quasiprobability cumulant of a(t1)...a(tn)."""
    cache = PropagatorCache(setup)

    def moment_fn(ts: tuple) -> float:
        return quasi_moment(setup, rho, ts, cache).value

    return joint_cumulant(moment_fn, times)
