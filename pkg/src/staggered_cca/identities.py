"""Machine-checkable residuals for the closed-form mode algebra.

Every exact identity behind the normal-mode construction is evaluated
numerically and reported as a max-norm residual (max-norm so a single bad
entry cannot hide inside an average): the shifted-sine recursion that
encodes the eigenvalue equation on the odd sublattice, the discrete
sine-sum orthogonality relations on the wavevector grid, Gram
orthonormality of the whole mode table, the vanishing of the
midgap/band hopping cross terms together with the reduction of the band
block to -branch*eps(k), the elementwise reconstruction of the hopping
and full single-excitation matrices from the mode table, and the collapse
of the staggered modes onto the uniform-chain eigenpairs at eta = 0.

Tolerances come in tiers that follow the conditioning of each identity:
pure trigonometric sums hold to 1e-12; identities that divide by eps(k)
(bounded below by 2*kappa*|eta|, so precision degrades at small |eta|)
get 1e-11; whole-matrix reconstructions and limits get 1e-10.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .modes import ModeTable, full_spectrum, mode_wavevectors, tau, theta_k, uniform_modes
from .oracle import bond_couplings, build_full_matrix, build_hopping_matrix, reconstruct_from_modes
from .params import ArrayParams

TOL_TRIG = 1e-12
TOL_EPS = 1e-11
TOL_MATRIX = 1e-10

DEFAULT_N_VALUES = (1, 3, 5, 15, 51, 101)
DEFAULT_ETA_VALUES = (0.0, 0.05, -0.05, 0.25, -0.25, 0.5, -0.5, 0.9, -0.9)


def _grid_index(k: float, n_cavities: int) -> int:
    m = round(k * (n_cavities + 1) / (2.0 * math.pi))
    if not 1 <= m <= (n_cavities - 1) // 2 or not math.isclose(
        k, 2.0 * math.pi * m / (n_cavities + 1), rel_tol=0.0, abs_tol=1e-9
    ):
        raise ValueError(f"k = {k} is not on the wavevector grid for N = {n_cavities}")
    return m


def residual_trig_shift(kappa: float, eta: float, k: float, n_cavities: int) -> float:
    """Violation of sin(kx + theta_k) = kappa*(1-eta)/eps * (sin(k(x-1)) - tau*sin(kx)).

    This is the recursion the odd-sublattice amplitudes satisfy; max over
    x = 1..(N+1)/2.
    """
    _grid_index(k, n_cavities)
    theta = theta_k(kappa, eta, k)
    eps = 2.0 * kappa * math.hypot(math.cos(0.5 * k), eta * math.sin(0.5 * k))
    x = np.arange(1, (n_cavities + 1) // 2 + 1)
    lhs = np.sin(k * x + theta)
    rhs = kappa * (1.0 - eta) / eps * (np.sin(k * (x - 1)) - tau(eta) * np.sin(k * x))
    return float(np.abs(lhs - rhs).max())


def residual_sine_sums(n_cavities: int, k: float, k_prime: float) -> tuple[float, float]:
    """Violations of the two sine-sum identities on the wavevector grid.

    First: sum over x of sin(kx)sin(k'x) equals (N+1)/4 * delta_kk' for
    either upper limit (N-1)/2 or (N+1)/2 (the extra term vanishes on the
    grid); the worse of the two limits is reported. Second: the shifted
    cross sum sin(k(x-1))sin(k'x) + (k <-> k') over x = 1..(N+1)/2 equals
    (N+1)/2 * cos(k) * delta_kk'.
    """
    m = _grid_index(k, n_cavities)
    m_prime = _grid_index(k_prime, n_cavities)
    same = 1.0 if m == m_prime else 0.0
    res_diag = 0.0
    for upper in ((n_cavities - 1) // 2, (n_cavities + 1) // 2):
        x = np.arange(1, upper + 1)
        total = float(np.sum(np.sin(k * x) * np.sin(k_prime * x)))
        res_diag = max(res_diag, abs(total - 0.25 * (n_cavities + 1) * same))
    x = np.arange(1, (n_cavities + 1) // 2 + 1)
    cross = float(
        np.sum(np.sin(k * (x - 1)) * np.sin(k_prime * x) + np.sin(k_prime * (x - 1)) * np.sin(k * x))
    )
    res_cross = abs(cross - 0.5 * (n_cavities + 1) * math.cos(k) * same)
    return res_diag, res_cross


def residual_orthonormality(table: ModeTable) -> float:
    """Max-norm distance of the mode Gram matrix from the identity."""
    amplitude_matrix = table.amplitude_matrix()
    gram = amplitude_matrix @ amplitude_matrix.T
    return float(np.abs(gram - np.eye(len(table.modes))).max())


def residual_diagonalization(params: ArrayParams, table: ModeTable) -> tuple[float, float]:
    """Violations of the two identities that diagonalize the hopping part.

    The cross terms between the midgap profile and every band mode must
    vanish: g_residual is the largest |sum_x rho_x * (phi_l[x+1]*phi[x] +
    phi_l[x]*phi[x+1])|. The band block must reduce to -branch*eps(k):
    f_residual is the largest entry of A R B^T + B R A^T + diag(branch*eps)
    with A, B the band amplitudes shifted by one site and R = diag(rho).
    """
    band = table.band_modes
    if not band:
        return 0.0, 0.0
    rho = bond_couplings(params)
    phi_l = table.bound.amplitudes
    band_amps = np.stack([mode.amplitudes for mode in band])
    left = band_amps[:, :-1]
    right = band_amps[:, 1:]
    g_sums = (right * phi_l[:-1] + left * phi_l[1:]) @ rho
    g_residual = float(np.abs(g_sums).max())
    f_matrix = right @ (rho[:, None] * left.T) + left @ (rho[:, None] * right.T)
    target = -np.diag([mode.branch * mode.epsilon for mode in band])
    f_residual = float(np.abs(f_matrix - target).max())
    return g_residual, f_residual


def residual_reconstruction(params: ArrayParams, table: ModeTable) -> tuple[float, float]:
    """Elementwise errors of rebuilding the Hamiltonians from the modes.

    Returns (hopping-block error, full-matrix error): the photon block of
    the mode-assembled matrix against the directly built hopping matrix,
    and the whole 2N x 2N assembly against the directly built full matrix.
    """
    n = params.n_cavities
    assembled = reconstruct_from_modes(table).entries
    hop_err = float(np.abs(assembled[:n, :n] - build_hopping_matrix(params).entries).max())
    full_err = float(np.abs(assembled - build_full_matrix(params).entries).max())
    return hop_err, full_err


def uniform_limit_check(n_cavities: int, kappa: float = 1.0, omega_f: float = 0.0) -> float:
    """Deviation of the eta = 0 mode table from the uniform-chain eigenpairs.

    Band mode (m, +1) matches uniform mode m, band mode (m, -1) matches
    uniform mode N+1-m, and the midgap mode matches uniform mode (N+1)/2;
    amplitudes are compared elementwise after per-mode sign alignment,
    frequencies directly, and the max over everything is returned.
    """
    params = ArrayParams(n_cavities=n_cavities, eta=0.0, kappa=kappa, omega_f=omega_f)
    table = full_spectrum(params)
    freqs, amps = uniform_modes(n_cavities, kappa=kappa, omega_f=omega_f)

    def pair_deviation(mode, index: int) -> float:
        reference = amps[index - 1]
        sign = 1.0 if float(mode.amplitudes @ reference) >= 0.0 else -1.0
        amp_dev = float(np.abs(mode.amplitudes - sign * reference).max())
        return max(amp_dev, abs(mode.frequency - freqs[index - 1]))

    worst = pair_deviation(table.bound, (n_cavities + 1) // 2)
    for mode in table.band_modes:
        index = mode.m if mode.branch == 1 else n_cavities + 1 - mode.m
        worst = max(worst, pair_deviation(mode, index))
    return worst


@dataclass(frozen=True)
class ResidualEntry:
    identity: str
    params: dict
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class ResidualReport:
    """Complete residual listing; one entry per identity per grid point."""

    entries: tuple[ResidualEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> tuple[ResidualEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.passed)

    def to_json_dict(self) -> dict:
        return {
            "entries": [
                {
                    "identity": entry.identity,
                    "params": entry.params,
                    "residual": entry.residual,
                    "tolerance": entry.tolerance,
                    "pass": entry.passed,
                }
                for entry in self.entries
            ],
            "all_pass": self.all_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _entry(identity: str, point: dict, residual: float, tolerance: float) -> ResidualEntry:
    return ResidualEntry(
        identity=identity,
        params=dict(point),
        residual=float(residual),
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
    )


def run_identity_grid(
    n_values: Sequence[int] = DEFAULT_N_VALUES,
    eta_values: Sequence[float] = DEFAULT_ETA_VALUES,
    kappa: float = 1.0,
    omega_f: float = 0.0,
    corrupt: bool = False,
) -> ResidualReport:
    """Evaluate every identity over the (N, eta) grid and report residuals.

    ``corrupt`` perturbs one mode amplitude before checking; it exists as
    a negative control so the failure path of the report (and the verify
    command's exit code) is itself tested.
    """
    entries: list[ResidualEntry] = []
    for n in n_values:
        for eta in eta_values:
            params = ArrayParams(n_cavities=n, eta=eta, kappa=kappa, omega_f=omega_f)
            table = full_spectrum(params)
            if corrupt:
                broken = table.modes[-1].amplitudes.copy()
                broken[0] += 1e-6
                broken.setflags(write=False)
                modes = table.modes[:-1] + (
                    ModeTable(params, table.modes).modes[-1].__class__(
                        **{**table.modes[-1].__dict__, "amplitudes": broken}
                    ),
                )
                table = ModeTable(params, modes)
            point = {"n_cavities": n, "eta": eta, "kappa": kappa, "omega_f": omega_f}
            ks = mode_wavevectors(n)
            shift = max((residual_trig_shift(kappa, eta, k, n) for k in ks), default=0.0)
            entries.append(_entry("trig_shift", point, shift, TOL_EPS))
            diag = cross = 0.0
            for k in ks:
                for k_prime in ks:
                    r_diag, r_cross = residual_sine_sums(n, k, k_prime)
                    diag = max(diag, r_diag)
                    cross = max(cross, r_cross)
            entries.append(_entry("sine_sum_orthogonality", point, diag, TOL_TRIG))
            entries.append(_entry("sine_sum_shifted", point, cross, TOL_TRIG))
            entries.append(_entry("orthonormality", point, residual_orthonormality(table), TOL_TRIG))
            g_res, f_res = residual_diagonalization(params, table)
            entries.append(_entry("diagonalization_g", point, g_res, TOL_EPS))
            entries.append(_entry("diagonalization_f", point, f_res, TOL_EPS))
            hop_err, full_err = residual_reconstruction(params, table)
            entries.append(_entry("hopping_reconstruction", point, hop_err, TOL_MATRIX))
            entries.append(_entry("full_reconstruction", point, full_err, TOL_MATRIX))
            if eta == 0.0:
                entries.append(
                    _entry(
                        "uniform_limit",
                        point,
                        uniform_limit_check(n, kappa=kappa, omega_f=omega_f),
                        TOL_MATRIX,
                    )
                )
    return ResidualReport(entries=tuple(entries))
