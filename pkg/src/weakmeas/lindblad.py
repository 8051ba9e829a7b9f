"""Measurement-induced Lindblad generator, propagator, Jordan superoperator.

Vectorization convention (used everywhere in this package): column-major,
vec(X)[i + dim*j] = X[i, j], so that

    vec(A X B) = (B^T kron A) vec(X)
    vec(A X)   = (1 kron A)   vec(X)
    vec(X A)   = (A^T kron 1) vec(X)

This is the single most common silent-bug source in superoperator codes,
so the identities above are asserted directly in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DensityMatrix,
    HermitianOperator,
    as_matrix,
    matrix_exponential,
)


@dataclass(frozen=True)
class MeasurementSetup:
    """One continuous-measurement scenario: Hamiltonian H, measured
    observable A, measurement strength lam (>= 0), action scale hbar."""

    H: HermitianOperator
    A: HermitianOperator
    lam: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.H.dim != self.A.dim:
            raise ValueError(
                f"H and A dimensions differ: {self.H.dim} vs {self.A.dim}"
            )
        if self.lam < 0:
            raise ValueError("lam must be >= 0")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @property
    def dim(self) -> int:
        return self.H.dim


@dataclass(frozen=True)
class Superoperator:
    """Linear map on dim x dim matrices stored as a dim^2 x dim^2 matrix
    acting on column-vectorized matrices."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        d2 = self.dim * self.dim
        if m.shape != (d2, d2):
            raise ValueError(f"expected shape {(d2, d2)}, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    def apply(self, mat) -> np.ndarray:
        m = as_matrix(mat)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"expected shape {(self.dim, self.dim)}")
        return unvec(self.entries @ vec(m), self.dim)

    def compose(self, other: "Superoperator") -> "Superoperator":
        """self after other (matrix product of representations)."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Superoperator(self.dim, self.entries @ other.entries)


def vec(m: np.ndarray) -> np.ndarray:
    """Column-major vectorization."""
    return np.asarray(m, dtype=complex).flatten(order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape((dim, dim), order="F")


def left_multiplier(a: np.ndarray) -> np.ndarray:
    """Superoperator matrix of X -> A X."""
    d = a.shape[0]
    return np.kron(np.eye(d, dtype=complex), a)


def right_multiplier(a: np.ndarray) -> np.ndarray:
    """Superoperator matrix of X -> X A."""
    d = a.shape[0]
    return np.kron(a.T, np.eye(d, dtype=complex))


def sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator matrix of X -> A X B."""
    return np.kron(b.T, a)


def liouvillian(setup: MeasurementSetup) -> Superoperator:
    """Generator of the nonselective evolution.

    d rho / dt = [H, rho] / (i hbar) - (lam/2) [A, [A, rho]]

    The double commutator expands to A^2 rho + rho A^2 - 2 A rho A, so in
    A's eigenbasis an off-diagonal element (a, a') of the dissipative part
    decays at rate lam (a - a')^2 / 2.  Annihilates the identity.
    """
    h = as_matrix(setup.H)
    a = as_matrix(setup.A)
    d = setup.dim
    a2 = a @ a
    ham = (left_multiplier(h) - right_multiplier(h)) / (1j * setup.hbar)
    diss = left_multiplier(a2) + right_multiplier(a2) - 2.0 * sandwich(a, a)
    return Superoperator(d, ham - 0.5 * setup.lam * diss)


def propagator(setup: MeasurementSetup, dt: float) -> Superoperator:
    """Finite-time evolution superoperator exp(dt * L).

    The setup is time-independent here, so the time-ordered exponential
    reduces to a plain matrix exponential.
    """
    if dt < 0:
        raise ValueError("dt must be >= 0")
    gen = liouvillian(setup)
    return Superoperator(setup.dim, matrix_exponential(dt * gen.entries))


def jordan_superoperator(a) -> Superoperator:
    """The symmetrized multiplication B -> (A B + B A) / 2.

    Inserted at each measurement time in correlator chains.  Hermiticity
    preserving but not trace preserving.
    """
    am = as_matrix(a)
    if not np.allclose(am, am.conj().T, atol=1e-12):
        raise ValueError("Jordan superoperator requires a Hermitian matrix")
    d = am.shape[0]
    return Superoperator(d, 0.5 * (left_multiplier(am) + right_multiplier(am)))


def apply_generator(setup: MeasurementSetup, mat) -> np.ndarray:
    """L applied to a matrix without building the dim^2 x dim^2 form."""
    h = as_matrix(setup.H)
    a = as_matrix(setup.A)
    m = as_matrix(mat)
    ham = (h @ m - m @ h) / (1j * setup.hbar)
    inner = a @ m - m @ a
    diss = a @ inner - inner @ a
    return ham - 0.5 * setup.lam * diss


def reproject(matrix: np.ndarray) -> DensityMatrix:
    """Clip tiny negative eigenvalues (in [-1e-10, 0)) to zero and
    renormalize the trace; anything more negative is a real failure and
    raises."""
    m = 0.5 * (matrix + matrix.conj().T)
    vals, vecs = np.linalg.eigh(m)
    if vals[0] < -1e-10:
        raise ValueError(f"propagated state has eigenvalue {vals[0]:.3e} < -1e-10")
    clipped = np.clip(vals, 0.0, None)
    out = (vecs * clipped) @ vecs.conj().T
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out / np.real(np.trace(out)))


def evolve(
    rho: DensityMatrix,
    setup: MeasurementSetup,
    t: float,
    n_substeps: int = 1,
) -> DensityMatrix:
    """Propagate rho for time t under the nonselective generator.

    With n_substeps > 1 the evolution is chained through equal substeps;
    because the generator is time-independent this must agree with the
    single-exponential evaluation to 1e-10 (asserted in tests, useful as
    a numerical health check).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if n_substeps < 1:
        raise ValueError("n_substeps must be >= 1")
    step = propagator(setup, t / n_substeps)
    v = vec(as_matrix(rho))
    for _ in range(n_substeps):
        v = step.entries @ v
    return reproject(unvec(v, setup.dim))


def choi_matrix(s: Superoperator) -> np.ndarray:
    """Choi representation C[(i,a),(j,b)] = S(|a><b|)[i,j]; the map is
    completely positive iff C is PSD."""
    d = s.dim
    s4 = s.entries.reshape(d, d, d, d)
    return s4.transpose(1, 3, 0, 2).reshape(d * d, d * d)
