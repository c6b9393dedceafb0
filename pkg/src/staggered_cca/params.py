"""Physical configuration of a staggered-hopping coupled-cavity array.

One frozen dataclass holds every symbol the rest of the package needs:
array length N (odd), staggering parameter eta, base hopping rate kappa,
bare cavity frequency omega_f, atom-cavity detuning delta and atom-field
coupling J. The atomic frequency is derived, omega_a = omega_f - delta.
Frequencies are angular with hbar = 1; the natural unit system sets J = 1
so that times are measured in 1/J. Cavity sites are numbered 1..N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ArrayParams:
    """Parameters of a finite cavity chain with alternating bond strengths.

    Bonds 1-2, 3-4, ... carry the hopping rate kappa*(1 + eta) and bonds
    2-3, 4-5, ... the rate kappa*(1 - eta), so eta = 0 is the uniform chain
    and |eta| = 1 splits the array into decoupled cavity pairs. Closed-form
    mode construction requires |eta| < 1 (see :meth:`require_analytic`);
    the dense-matrix oracle accepts |eta| <= 1.
    """

    n_cavities: int
    eta: float
    kappa: float = 1.0
    omega_f: float = 0.0
    delta: float = 0.0
    coupling_j: float = 1.0

    def __post_init__(self) -> None:
        try:
            n = int(self.n_cavities)
        except (TypeError, ValueError):
            raise ValueError(f"n_cavities must be an integer, got {self.n_cavities!r}")
        if n != self.n_cavities or n < 1 or n % 2 == 0:
            raise ValueError(
                f"n_cavities must be an odd integer >= 1, got {self.n_cavities!r} "
                "(even-length arrays are out of scope: their midgap level is "
                "twofold degenerate and needs a separate treatment)"
            )
        object.__setattr__(self, "n_cavities", n)
        for name in ("eta", "kappa", "omega_f", "delta", "coupling_j"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.kappa <= 0.0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if abs(self.eta) > 1.0:
            raise ValueError(f"|eta| must be <= 1, got {self.eta}")
        if self.coupling_j < 0.0:
            raise ValueError(f"coupling_j must be >= 0, got {self.coupling_j}")

    @property
    def omega_a(self) -> float:
        """Atomic transition frequency, omega_f - delta."""
        return self.omega_f - self.delta

    @property
    def kappa_odd(self) -> float:
        """Hopping rate on odd bonds (1-2, 3-4, ...): kappa*(1 + eta)."""
        return (1.0 + self.eta) * self.kappa

    @property
    def kappa_even(self) -> float:
        """Hopping rate on even bonds (2-3, 4-5, ...): kappa*(1 - eta)."""
        return (1.0 - self.eta) * self.kappa

    def require_analytic(self) -> "ArrayParams":
        """Raise unless |eta| < 1, which every closed-form mode path needs."""
        if abs(self.eta) >= 1.0:
            raise ValueError(
                f"closed-form modes require |eta| < 1, got eta = {self.eta}; "
                "use the dense-matrix oracle for the fully dimerized limit"
            )
        return self
