"""Dense complex matrix algebra for small Hilbert spaces.

Everything here is a plain function of immutable inputs; the wrapper
types only validate their invariants on construction.  Units follow the
convention hbar = 1 unless a ModelParams overrides it; formulas keep the
hbar factor explicit so prefactors can be checked symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_matrix(obj) -> np.ndarray:
    """Return the underlying complex ndarray of an operator-like object."""
    if isinstance(obj, (HermitianOperator, DensityMatrix)):
        return obj.entries
    return np.asarray(obj, dtype=complex)


@dataclass(frozen=True)
class HermitianOperator:
    """A dense Hermitian matrix; construction asserts Hermiticity.

    Parameters
    ----------
    entries : array_like
        Square complex matrix, Hermitian to within 1e-12 elementwise.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("dimension must be at least 1")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITICITY_TOL):
            raise ValueError("matrix is not Hermitian to 1e-12")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive-semidefinite matrix.

    Construction checks all three invariants (PSD down to an eigenvalue
    floor of -1e-10 that tolerates rounding from propagation).
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITICITY_TOL):
            raise ValueError("density matrix is not Hermitian to 1e-12")
        tr = np.trace(m)
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"trace is {tr}, expected 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < EIGENVALUE_FLOOR:
            raise ValueError(f"minimum eigenvalue {lo} below floor {EIGENVALUE_FLOOR}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        v = np.asarray(ket, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def bloch_vector(self) -> tuple[float, float, float]:
        """(x, y, z) Pauli components; dim-2 states only."""
        if self.dim != 2:
            raise ValueError("Bloch vector requires dim 2")
        _, x, y, z = pauli_decompose(self.entries)
        return 2.0 * x, 2.0 * y, 2.0 * z

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the two model systems.

    omega is the Rabi / oscillator angular frequency, mass matters only
    for the oscillator, hbar defaults to 1, fock_dim is the oscillator
    truncation dimension (>= 2 when used).
    """

    omega: float
    mass: float = 1.0
    hbar: float = 1.0
    fock_dim: int = 0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.fock_dim and self.fock_dim < 2:
            raise ValueError("fock_dim must be >= 2 when set")


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA.  Anti-Hermitian when both inputs are Hermitian."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA.  Hermitian when both inputs are Hermitian."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm + bm @ am


def matrix_exponential(m) -> np.ndarray:
    """exp(M) for a square complex matrix.

    Delegates to scipy's scaling-and-squaring Pade implementation, which
    meets the 1e-12 relative accuracy needed for the superoperator
    propagators used here (dims up to ~1600).
    """
    mm = as_matrix(m)
    if mm.ndim != 2 or mm.shape[0] != mm.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mm.shape}")
    if not np.all(np.isfinite(mm)):
        raise ValueError("matrix has non-finite entries")
    return scipy.linalg.expm(mm)


def pauli_decompose(op) -> tuple[float, float, float, float]:
    """Coefficients (c0, cx, cy, cz) with O = c0*1 + cx*sx + cy*sy + cz*sz.

    Input must be a 2x2 Hermitian matrix; coefficients are real to 1e-12
    and the decomposition is exact for exact Hermitian input.
    """
    m = as_matrix(op)
    if m.shape != (2, 2):
        raise ValueError("pauli_decompose requires dim 2")
    coeffs = []
    for basis in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z):
        c = 0.5 * np.trace(basis @ m)
        if abs(c.imag) > 1e-12:
            raise ValueError(f"non-real coefficient {c}; input not Hermitian?")
        coeffs.append(float(c.real))
    return tuple(coeffs)


def pauli_recompose(c0: float, cx: float, cy: float, cz: float) -> np.ndarray:
    return c0 * IDENTITY_2 + cx * SIGMA_X + cy * SIGMA_Y + cz * SIGMA_Z


def fock_operators(params: ModelParams):
    """Truncated position, momentum and Hamiltonian operators.

    Standard ladder construction on fock_dim levels:
    x = sqrt(hbar/2 m w) (ad + a), p = i sqrt(hbar m w / 2) (ad - a),
    H = p^2/2m + m w^2 x^2 / 2 built from the truncated x and p, so the
    diagonal of H is hbar*w*(n + 1/2) except in the top level where
    truncation bites.

    Returns
    -------
    (x, p, h) : HermitianOperator triple of dimension fock_dim.
    """
    n = params.fock_dim
    if n < 2:
        raise ValueError("fock_dim must be >= 2")
    lower = np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1)  # annihilation
    raise_ = lower.conj().T
    x_scale = np.sqrt(params.hbar / (2.0 * params.mass * params.omega))
    p_scale = np.sqrt(params.hbar * params.mass * params.omega / 2.0)
    x = x_scale * (raise_ + lower)
    p = 1j * p_scale * (raise_ - lower)
    h = p @ p / (2.0 * params.mass) + 0.5 * params.mass * params.omega**2 * (x @ x)
    return HermitianOperator(x), HermitianOperator(p), HermitianOperator(h)


def truncation_leakage(state) -> float:
    """Weight of a Fock-truncated state in its top two levels.

    For a ket: l2 norm of the last two amplitudes.  For a density
    matrix: total population of the last two levels.  Tests treat
    leakage above 1e-6 as an unreliable truncation.
    """
    m = np.asarray(state, dtype=complex)
    if m.ndim == 1:
        return float(np.linalg.norm(m[-2:]))
    if m.ndim == 2:
        return float(np.real(m[-2, -2] + m[-1, -1]))
    raise ValueError("expected a ket or a density matrix")
