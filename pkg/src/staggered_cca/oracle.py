"""Dense-matrix ground truth for the single-excitation sector.

Everything here is brute force on purpose: build the real symmetric
Hamiltonian matrix in the site basis, diagonalize it once, and propagate
by spectral decomposition. No closed form enters, so these routines serve
as the independent check for the analytic mode construction, and they
accept the fully dimerized limit |eta| = 1 that the closed forms reject.

Basis ordering is fixed package-wide: index i in [0, N) is one photon in
cavity i+1, index N + i is the excited atom at site i+1 (photons first,
atoms second). The largest matrices at desk scale are a few hundred rows,
so dense storage and a full symmetric eigendecomposition are the right
tools; the decomposition is computed once per Hamiltonian and reused for
every sample time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modes import ModeTable
from .params import ArrayParams

PHOTONIC = "photonic"
FULL = "full"

NORM_TOL = 1e-8  # hard-fail bound: drift past this means a defective eigensolve


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Real symmetric matrix plus a tag saying which block structure it is:
    ``PHOTONIC`` (N x N hopping matrix) or ``FULL`` (2N x 2N)."""

    entries: np.ndarray
    kind: str

    @property
    def n_cavities(self) -> int:
        n = self.entries.shape[0]
        return n if self.kind == PHOTONIC else n // 2


@dataclass(frozen=True)
class SingleExcitationState:
    """Complex amplitude vector of length 2N in the fixed site basis."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size % 2 != 0 or amps.size == 0:
            raise ValueError("amplitudes must be a 1-d complex vector of even length 2N")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_cavities(self) -> int:
        return self.amplitudes.size // 2

    @property
    def photon_amplitudes(self) -> np.ndarray:
        return self.amplitudes[: self.n_cavities]

    @property
    def atom_amplitudes(self) -> np.ndarray:
        return self.amplitudes[self.n_cavities :]

    @property
    def photon_probabilities(self) -> np.ndarray:
        return np.abs(self.photon_amplitudes) ** 2

    @property
    def atom_probabilities(self) -> np.ndarray:
        return np.abs(self.atom_amplitudes) ** 2

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @staticmethod
    def atom_excitation(site: int, n_cavities: int) -> "SingleExcitationState":
        """Atom at ``site`` (1-based) excited, field in vacuum."""
        _check_site(site, n_cavities)
        amps = np.zeros(2 * n_cavities, dtype=complex)
        amps[n_cavities + site - 1] = 1.0
        return SingleExcitationState(amps)

    @staticmethod
    def photon_excitation(site: int, n_cavities: int) -> "SingleExcitationState":
        """One photon in cavity ``site`` (1-based), all atoms in the ground state."""
        _check_site(site, n_cavities)
        amps = np.zeros(2 * n_cavities, dtype=complex)
        amps[site - 1] = 1.0
        return SingleExcitationState(amps)


def _check_site(site: int, n_cavities: int) -> None:
    if not 1 <= site <= n_cavities:
        raise ValueError(f"site must be in 1..{n_cavities}, got {site}")


def bond_couplings(params: ArrayParams) -> np.ndarray:
    """Signed hopping matrix elements rho_x = -kappa*(1 - (-1)^x eta) for
    bonds x = 1..N-1, alternating between -kappa*(1+eta) and -kappa*(1-eta)."""
    x = np.arange(1, params.n_cavities)
    return -params.kappa * (1.0 - (-1.0) ** x * params.eta)


def build_hopping_matrix(params: ArrayParams) -> HamiltonianMatrix:
    """N x N free-field matrix: omega_f on the diagonal, the staggered bond
    couplings on the first off-diagonals, zero elsewhere."""
    n = params.n_cavities
    rho = bond_couplings(params)
    h = np.diag(np.full(n, params.omega_f))
    if n > 1:
        h += np.diag(rho, 1) + np.diag(rho, -1)
    return HamiltonianMatrix(entries=h, kind=PHOTONIC)


def build_full_matrix(params: ArrayParams) -> HamiltonianMatrix:
    """2N x 2N single-excitation matrix [[H_field, J*I], [J*I, omega_a*I]]."""
    n = params.n_cavities
    h = np.zeros((2 * n, 2 * n))
    h[:n, :n] = build_hopping_matrix(params).entries
    h[n:, n:] = params.omega_a * np.eye(n)
    h[:n, n:] = h[n:, :n] = params.coupling_j * np.eye(n)
    return HamiltonianMatrix(entries=h, kind=FULL)


def evolve_exact(
    h: HamiltonianMatrix,
    initial: SingleExcitationState,
    times,
) -> list[SingleExcitationState]:
    """Propagate exp(-i*H*t) |initial> for every requested time.

    One symmetric eigendecomposition is shared by all times. The returned
    states keep unit norm to round-off; drift beyond ``NORM_TOL`` raises
    instead of being silently renormalized.
    """
    if h.kind != FULL:
        raise ValueError("evolve_exact needs the full 2N x 2N Hamiltonian")
    if h.entries.shape[0] != initial.amplitudes.size:
        raise ValueError(
            f"dimension mismatch: H is {h.entries.shape[0]}, state is {initial.amplitudes.size}"
        )
    if abs(initial.norm - 1.0) > NORM_TOL:
        raise ValueError(f"initial state must be normalized, |psi| = {initial.norm!r}")
    times = np.asarray(times, dtype=float)
    if times.size and (not np.all(np.isfinite(times)) or np.any(times < 0.0)):
        raise ValueError("times must be finite and non-negative")
    eigvals, eigvecs = np.linalg.eigh(h.entries)
    coeffs = eigvecs.T @ initial.amplitudes
    states = []
    for t in times:
        amps = eigvecs @ (np.exp(-1j * eigvals * t) * coeffs)
        state = SingleExcitationState(amps)
        if abs(state.norm - 1.0) > NORM_TOL:
            raise ArithmeticError(
                f"norm drifted to {state.norm!r} at t = {t}; eigensolve is defective"
            )
        states.append(state)
    return states


def reconstruct_from_modes(table: ModeTable) -> HamiltonianMatrix:
    """Assemble the 2N x 2N matrix from the normal-mode data alone.

    Each mode contributes frequency * |phi><phi| on the photon block,
    omega_a * |phi><phi| on the atom block and J * |phi><phi| on the cross
    blocks. Agreement with :func:`build_full_matrix` to round-off is the
    matrix form of the statement that the mode table diagonalizes the
    field and resolves the identity.
    """
    params = table.params
    n = params.n_cavities
    h = np.zeros((2 * n, 2 * n))
    for mode in table.modes:
        projector = np.outer(mode.amplitudes, mode.amplitudes)
        h[:n, :n] += mode.frequency * projector
        h[n:, n:] += params.omega_a * projector
        h[:n, n:] += params.coupling_j * projector
        h[n:, :n] += params.coupling_j * projector
    return HamiltonianMatrix(entries=h, kind=FULL)
