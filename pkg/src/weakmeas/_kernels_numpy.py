"""Pure-numpy implementations of the ensemble hot loops.

These are the fallback backend (and the reference the numba backend is
tested against).  Both backends consume identical pre-drawn random
arrays, so they agree to floating-point noise; all sampling decisions
reduce to arithmetic on those arrays.
"""

from __future__ import annotations

import numpy as np


def run_records(u_step, a_eigs, rho0, lam_bar, uniforms, normals):
    """Selective Gaussian-measurement records, batched over records.

    Everything lives in the eigenbasis of the measured observable, where
    the Kraus factor is diagonal.  Per step: unitary conjugation, then
    outcome sampling from the population-weighted Gaussian mixture (mean
    a_k, variance 1/(4 lam_bar)), then the diagonal Bayes damping
    rho_kl *= exp(-lam_bar ((a-a_k)^2 + (a-a_l)^2)) and trace
    renormalization.

    Parameters
    ----------
    u_step : (d, d) complex, per-step unitary in the eigenbasis.
    a_eigs : (d,) float eigenvalues of the observable.
    rho0 : (d, d) complex initial state in the eigenbasis.
    lam_bar : float, per-step measurement strength lam * dt.
    uniforms, normals : (n_records, n_steps) pre-drawn random arrays;
        uniform[r, j] picks the mixture component, normal[r, j] the
        Gaussian detector offset.

    Returns
    -------
    outcomes : (n_records, n_steps) float
    finals : (n_records, d, d) complex, eigenbasis states after the run.
    """
    n_records, n_steps = uniforms.shape
    d = a_eigs.shape[0]
    sigma = 0.5 / np.sqrt(lam_bar)
    u_dag = u_step.conj().T
    rho = np.broadcast_to(rho0, (n_records, d, d)).copy()
    outcomes = np.empty((n_records, n_steps))
    for j in range(n_steps):
        rho = (u_step[None, :, :] @ rho) @ u_dag[None, :, :]
        w = np.einsum("rkk->rk", rho).real
        cum = np.cumsum(w, axis=1)
        target = uniforms[:, j] * cum[:, -1]
        k = np.sum(cum <= target[:, None], axis=1)
        np.clip(k, 0, d - 1, out=k)
        a = a_eigs[k] + sigma * normals[:, j]
        outcomes[:, j] = a
        damp = np.exp(-lam_bar * (a[:, None] - a_eigs[None, :]) ** 2)
        rho *= damp[:, :, None] * damp[:, None, :]
        tr = np.einsum("rkk->r", rho).real
        rho /= tr[:, None, None]
    return outcomes, rho


def run_langevin_tls(h0, hx, hy, hz, a0, ax, ay, az, hbar, phi, dt, snap_steps):
    """Noisy Heisenberg propagators for a two-level system, batched over
    trajectories.

    The per-step generator H - hbar*phi*A is decomposed on the Pauli
    basis, so each step unitary is a single axis-angle rotation times a
    scalar phase; steps are accumulated left-to-right in time order and
    the running product is stored at the requested step indices.

    Parameters
    ----------
    h0, hx, hy, hz : Pauli coefficients of H (identity part first).
    a0, ax, ay, az : Pauli coefficients of the measured observable.
    hbar : action scale.
    phi : (n_traj, n_steps) noise samples.
    dt : step duration.
    snap_steps : sorted int64 array of step counts at which to store the
        accumulated unitary (0 stores the identity).

    Returns
    -------
    (len(snap_steps), n_traj, 2, 2) complex array of unitaries.
    """
    n_traj, n_steps = phi.shape
    n_snap = snap_steps.shape[0]
    out = np.empty((n_snap, n_traj, 2, 2), dtype=np.complex128)
    c00 = np.ones(n_traj, dtype=np.complex128)
    c01 = np.zeros(n_traj, dtype=np.complex128)
    c10 = np.zeros(n_traj, dtype=np.complex128)
    c11 = np.ones(n_traj, dtype=np.complex128)

    idx = 0
    while idx < n_snap and snap_steps[idx] == 0:
        out[idx, :, 0, 0] = c00
        out[idx, :, 0, 1] = c01
        out[idx, :, 1, 0] = c10
        out[idx, :, 1, 1] = c11
        idx += 1

    for j in range(n_steps):
        p = phi[:, j]
        vx = (hx - hbar * p * ax) / hbar
        vy = (hy - hbar * p * ay) / hbar
        vz = (hz - hbar * p * az) / hbar
        v0 = (h0 - hbar * p * a0) / hbar
        nrm = np.sqrt(vx * vx + vy * vy + vz * vz)
        theta = nrm * dt
        cos_t = np.cos(theta)
        sin_t = np.sin(theta)
        inv = np.zeros_like(nrm)
        np.divide(1.0, nrm, out=inv, where=nrm > 0.0)
        sx = sin_t * vx * inv
        sy = sin_t * vy * inv
        sz = sin_t * vz * inv
        phase = np.exp(-1j * v0 * dt)
        u00 = phase * (cos_t - 1j * sz)
        u01 = phase * (-1j * sx - sy)
        u10 = phase * (-1j * sx + sy)
        u11 = phase * (cos_t + 1j * sz)
        n00 = u00 * c00 + u01 * c10
        n01 = u00 * c01 + u01 * c11
        n10 = u10 * c00 + u11 * c10
        n11 = u10 * c01 + u11 * c11
        c00, c01, c10, c11 = n00, n01, n10, n11
        while idx < n_snap and snap_steps[idx] == j + 1:
            out[idx, :, 0, 0] = c00
            out[idx, :, 0, 1] = c01
            out[idx, :, 1, 0] = c10
            out[idx, :, 1, 1] = c11
            idx += 1
    if idx != n_snap:
        raise ValueError("snap_steps beyond the trajectory span")
    return out


def run_langevin_general(h, a, hbar, phi, dt, snap_steps):
    """General-dimension variant of run_langevin_tls.

    Diagonalizes the per-step generator batch-wise with eigh.  This path
    has no numba twin: the batched LAPACK calls already dominate and the
    random small-dimension setups it serves are not a hot path.
    """
    n_traj, n_steps = phi.shape
    d = h.shape[0]
    n_snap = snap_steps.shape[0]
    out = np.empty((n_snap, n_traj, d, d), dtype=np.complex128)
    cur = np.broadcast_to(np.eye(d, dtype=np.complex128), (n_traj, d, d)).copy()

    idx = 0
    while idx < n_snap and snap_steps[idx] == 0:
        out[idx] = cur
        idx += 1

    for j in range(n_steps):
        gen = h[None, :, :] - hbar * phi[:, j, None, None] * a[None, :, :]
        vals, vecs = np.linalg.eigh(gen)
        ph = np.exp(-1j * vals * dt / hbar)
        u = (vecs * ph[:, None, :]) @ vecs.conj().transpose(0, 2, 1)
        cur = u @ cur
        while idx < n_snap and snap_steps[idx] == j + 1:
            out[idx] = cur
            idx += 1
    if idx != n_snap:
        raise ValueError("snap_steps beyond the trajectory span")
    return out
