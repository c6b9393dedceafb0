"""Closed-form normal modes of the staggered-hopping cavity chain.

For an odd number of cavities with open ends, the free-field hopping
matrix splits into two frequency bands that are symmetric about the bare
cavity frequency omega_f, plus a single midgap mode pinned exactly at
omega_f. Band modes are labeled by a wavevector k = 2*pi*m/(N+1) with
m = 1..(N-1)/2 and a branch sign mu = +-1; their frequencies are
omega_f - mu*eps(k) with eps(k) = 2*kappa*sqrt(cos(k/2)^2 +
eta^2*sin(k/2)^2), so mu = +1 is the lower band. The midgap mode lives on
odd sites only, with successive odd-site amplitudes in the fixed ratio
tau(eta) = (eta+1)/(eta-1); for eta != 0 it is exponentially localized at
one end of the chain and it is the only mode whose frequency does not
depend on eta or kappa.

Sign convention: every mode vector is normalized and globally flipped, if
needed, so that its first non-negligible amplitude is positive. Global
mode phases are unobservable; the flip can invert the literal sign of the
textbook closed forms (the midgap prefactor in particular) and is
documented here once instead of per formula.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .params import ArrayParams

BOUND = "bound"
BAND = "band"

_UNIT_MODULUS_TOL = 1e-9  # guards the phase-factor identity, see theta_k


def tau(eta: float) -> float:
    """Odd-site amplitude ratio (eta+1)/(eta-1) of the midgap mode.

    Negative on the whole open interval |eta| < 1; |tau| < 1 iff eta < 0,
    so the mode decays away from site 1 for negative eta and grows for
    positive eta. Diverges at eta = 1, hence the domain restriction.
    """
    if abs(eta) >= 1.0:
        raise ValueError(f"tau requires |eta| < 1, got eta = {eta}")
    return (eta + 1.0) / (eta - 1.0)


def epsilon_k(kappa: float, eta: float, k: float) -> float:
    """Positive band dispersion 2*kappa*sqrt(cos(k/2)^2 + eta^2 sin(k/2)^2).

    Bounded below by 2*kappa*|eta|, which is half the band-gap bound.
    """
    if kappa <= 0.0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    c = math.cos(0.5 * k)
    s = math.sin(0.5 * k)
    return 2.0 * kappa * math.hypot(c, eta * s)


def theta_k(kappa: float, eta: float, k: float) -> float:
    """Odd-sublattice phase shift of a band mode, principal value in (-pi, pi].

    Defined through exp(i*theta) = kappa*(1-eta)/eps(k) * (exp(-i*k) - tau).
    That complex number has unit modulus by construction (this is exactly
    the identity that fixes eps(k)); the modulus is asserted here rather
    than assumed.
    """
    eps = epsilon_k(kappa, eta, k)
    z = kappa * (1.0 - eta) / eps * (cmath.exp(-1j * k) - tau(eta))
    if abs(abs(z) - 1.0) > _UNIT_MODULUS_TOL:
        raise ArithmeticError(
            f"phase factor lost unit modulus (|z| = {abs(z)!r}) at "
            f"kappa={kappa}, eta={eta}, k={k}; eps(k) is inconsistent"
        )
    theta = math.atan2(z.imag, z.real)
    if theta <= -math.pi:
        theta += 2.0 * math.pi
    return theta


def mode_wavevectors(n_cavities: int) -> list[float]:
    """Band wavevector grid 2*pi*m/(N+1), m = 1..(N-1)/2, increasing in (0, pi).

    N = 1 has no band modes and returns an empty list.
    """
    if n_cavities < 1 or n_cavities % 2 == 0:
        raise ValueError(f"n_cavities must be odd and >= 1, got {n_cavities}")
    return [2.0 * math.pi * m / (n_cavities + 1) for m in range(1, (n_cavities - 1) // 2 + 1)]


def localization_length(eta: float) -> float:
    """Decay length of the midgap mode, |1 / ln((1+eta)/(1-eta))|.

    Infinite at eta = 0 (the mode extends over the whole chain) and
    shrinks monotonically toward zero as |eta| -> 1.
    """
    if abs(eta) >= 1.0:
        raise ValueError(f"localization_length requires |eta| < 1, got eta = {eta}")
    if eta == 0.0:
        return math.inf
    return abs(1.0 / math.log((1.0 + eta) / (1.0 - eta)))


@dataclass(frozen=True)
class NormalMode:
    """One photonic normal mode of the free-field hopping matrix.

    ``kind`` is ``BOUND`` for the midgap mode (m, branch, wavevector,
    epsilon and theta are None) or ``BAND``. ``amplitudes`` is the real
    unit vector over sites 1..N; ``norm_prefactor`` is the scale factor of
    the closed form: the site-1 amplitude for the midgap mode (the factor
    multiplying tau^(x-1) on odd sites) and sqrt(2/(N+1)) for band modes.
    The same spatial amplitudes serve the atomic collective modes; no
    separate type is needed.
    """

    kind: str
    m: Optional[int]
    branch: Optional[int]
    wavevector: Optional[float]
    epsilon: Optional[float]
    theta: Optional[float]
    frequency: float
    amplitudes: np.ndarray
    norm_prefactor: float

    @property
    def is_bound(self) -> bool:
        return self.kind == BOUND


@dataclass(frozen=True)
class ModeTable:
    """Complete orthonormal mode set: the midgap mode first, then band
    modes ordered by (m, branch) with branch +1 before -1."""

    params: ArrayParams
    modes: tuple[NormalMode, ...]

    @property
    def bound(self) -> NormalMode:
        return self.modes[0]

    @property
    def band_modes(self) -> tuple[NormalMode, ...]:
        return self.modes[1:]

    def frequencies(self) -> np.ndarray:
        return np.array([mode.frequency for mode in self.modes])

    def amplitude_matrix(self) -> np.ndarray:
        """Row x = amplitudes of mode x; orthogonal for a valid table."""
        return np.stack([mode.amplitudes for mode in self.modes])


class GapInfo(NamedTuple):
    """Band-gap width and its size-independent lower bound 4*kappa*|eta|."""

    width: float
    thermo_bound: float


def _freeze(amps: np.ndarray) -> np.ndarray:
    amps.setflags(write=False)
    return amps


def _fix_global_sign(amps: np.ndarray) -> np.ndarray:
    # first clearly nonzero entry positive; the anchor threshold is relative
    # so the convention is stable under the overall normalization
    first = int(np.argmax(np.abs(amps) > 1e-12 * np.abs(amps).max()))
    return -amps if amps[first] < 0.0 else amps


def bound_mode(params: ArrayParams) -> NormalMode:
    """Midgap mode: amplitudes proportional to tau^(x-1) on odd sites
    1, 3, ..., N and exactly zero on even sites; frequency omega_f.

    The powers are taken from the dominant end of the chain and then
    normalized numerically, so large |tau| (eta > 0, large N) cannot
    overflow; the construction is continuous at eta = 0, where it reduces
    to the uniform-chain k = pi mode with amplitude sqrt(2/(N+1))
    alternating over odd sites. The closed-form prefactor is recovered as
    the site-1 amplitude (``norm_prefactor``), positive by the global sign
    convention.
    """
    params.require_analytic()
    n = params.n_cavities
    m = (n + 1) // 2
    ratio = abs(tau(params.eta))
    if ratio <= 1.0:
        mags = ratio ** np.arange(m)
    else:
        mags = (1.0 / ratio) ** np.arange(m - 1, -1, -1)
    amps = np.zeros(n)
    amps[0::2] = mags * (-1.0) ** np.arange(m)  # tau < 0 on the open interval
    amps /= np.linalg.norm(amps)
    amps = _fix_global_sign(amps)
    return NormalMode(
        kind=BOUND,
        m=None,
        branch=None,
        wavevector=None,
        epsilon=None,
        theta=None,
        frequency=params.omega_f,
        amplitudes=_freeze(amps),
        norm_prefactor=float(amps[0]),
    )


def band_mode(params: ArrayParams, m: int, branch: int) -> NormalMode:
    """Band mode (m, branch): frequency omega_f - branch*eps(k).

    Even-site amplitudes follow sin(k*x) and odd-site amplitudes
    branch*sin(k*x + theta_k), with x the within-sublattice index; the
    prefactor sqrt(2/(N+1)) makes the vector exactly unit-norm.
    """
    params.require_analytic()
    n = params.n_cavities
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch!r}")
    if not 1 <= m <= (n - 1) // 2:
        raise ValueError(f"m must be in 1..{(n - 1) // 2} for N = {n}, got {m}")
    k = 2.0 * math.pi * m / (n + 1)
    eps = epsilon_k(params.kappa, params.eta, k)
    theta = theta_k(params.kappa, params.eta, k)
    prefactor = math.sqrt(2.0 / (n + 1))
    amps = np.zeros(n)
    odd_index = np.arange(1, (n + 1) // 2 + 1)
    even_index = np.arange(1, (n - 1) // 2 + 1)
    amps[0::2] = branch * prefactor * np.sin(k * odd_index + theta)
    amps[1::2] = prefactor * np.sin(k * even_index)
    amps = _fix_global_sign(amps)
    return NormalMode(
        kind=BAND,
        m=m,
        branch=branch,
        wavevector=k,
        epsilon=eps,
        theta=theta,
        frequency=params.omega_f - branch * eps,
        amplitudes=_freeze(amps),
        norm_prefactor=prefactor,
    )


def full_spectrum(params: ArrayParams) -> ModeTable:
    """All N normal modes: the midgap mode plus (N-1)/2 wavevectors times
    two branches. Exactly one frequency equals omega_f."""
    params.require_analytic()
    modes = [bound_mode(params)]
    for m in range(1, (params.n_cavities - 1) // 2 + 1):
        for branch in (1, -1):
            modes.append(band_mode(params, m, branch))
    return ModeTable(params=params, modes=tuple(modes))


def gap(params: ArrayParams) -> GapInfo:
    """Band-gap width together with its bound 4*kappa*|eta|.

    The width is min(upper band) - max(lower band); the midgap frequency
    sits at the gap center by construction and is not counted. The bound
    is saturated only in the infinite-size limit, so width >= bound with
    the excess shrinking monotonically as N grows.
    """
    if params.n_cavities < 3:
        raise ValueError("gap needs N >= 3: a single cavity has no bands")
    table = full_spectrum(params)
    lower = max(mode.frequency for mode in table.band_modes if mode.branch == 1)
    upper = min(mode.frequency for mode in table.band_modes if mode.branch == -1)
    return GapInfo(width=upper - lower, thermo_bound=4.0 * params.kappa * abs(params.eta))


def uniform_modes(n_cavities: int, kappa: float = 1.0, omega_f: float = 0.0):
    """Reference eigenpairs of the uniform chain (eta = 0), full grid m = 1..N.

    Returns ``(frequencies, amplitudes)`` with ``amplitudes[m-1, x-1] =
    sqrt(2/(N+1))*sin(k_m*x/2)`` and ``frequencies[m-1] = omega_f -
    2*kappa*cos(k_m/2)``, k_m = 2*pi*m/(N+1). The pairing is the actual
    eigenpairing of the hopping matrix (which has -kappa on the off
    diagonals): the mode sin(k x/2) belongs to -2*kappa*cos(k/2), so the
    familiar +2*kappa*cos(k/2) enumeration corresponds to relabeling
    m -> N+1-m. As a set the spectrum is the same either way.
    """
    if n_cavities < 1 or n_cavities % 2 == 0:
        raise ValueError(f"n_cavities must be odd and >= 1, got {n_cavities}")
    n = n_cavities
    ms = np.arange(1, n + 1)
    ks = 2.0 * math.pi * ms / (n + 1)
    freqs = omega_f - 2.0 * kappa * np.cos(0.5 * ks)
    sites = np.arange(1, n + 1)
    amplitudes = math.sqrt(2.0 / (n + 1)) * np.sin(0.5 * np.outer(ks, sites))
    return freqs, amplitudes
