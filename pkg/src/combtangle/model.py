"""Physical scenario of the driven magnon-skyrmion comb.

Four modes take part: the driven magnonic whispering-gallery mode (k), the
skyrmion internal mode (r) that sets the comb spacing, and the first-order
sum- and difference-frequency teeth (p, q) at omega_k +/- omega_r.  A
``PhysicalParams`` value fixes one scenario completely; everything downstream
(mean fields, drift/diffusion matrices, covariances, correlation measures)
derives from it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .constants import GHZ, HBAR, K_B, MHZ
from .errors import DomainError


def thermal_occupation(omega: float, temperature: float) -> float:
    """Mean thermal quantum number 1/(exp(hbar*omega/kB*T) - 1).

    Returns exactly 0.0 at T = 0 (zero-temperature limit taken analytically,
    no division by zero).  ``omega`` is angular (rad/s), ``temperature`` in K.
    """
    if omega <= 0.0:
        raise DomainError(f"thermal occupation needs omega > 0, got {omega}")
    if temperature < 0.0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / (K_B * temperature)
    # expm1 keeps precision for x << 1 (high-temperature side)
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class PhysicalParams:
    """All scenario inputs, in angular frequencies (rad/s) and Kelvin.

    The comb-teeth frequencies are derived, never stored: omega_p = omega_k +
    omega_r and omega_q = omega_k - omega_r hold identically.  Detunings from
    the drive are likewise derived via :func:`derived_detunings`.
    """

    omega_k: float
    omega_r: float
    omega_0: float
    kappa_k: float
    kappa_r: float
    kappa_p: float
    kappa_q: float
    g_p: float
    g_q: float
    drive_amplitude: float = 0.0
    drive_phase: float = 0.0
    temperature: float = 0.0

    def __post_init__(self):
        for name in ("omega_k", "omega_r", "omega_0", "g_p", "g_q",
                     "drive_amplitude", "temperature"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be nonnegative")
        for name in ("kappa_k", "kappa_r", "kappa_p", "kappa_q"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive")
        if self.omega_q <= 0.0:
            raise DomainError("omega_k - omega_r must stay positive")

    # -- derived frequencies ------------------------------------------------

    @property
    def omega_p(self) -> float:
        return self.omega_k + self.omega_r

    @property
    def omega_q(self) -> float:
        return self.omega_k - self.omega_r

    @property
    def drive(self) -> complex:
        """Complex drive E = epsilon * exp(i*phi_l)."""
        return self.drive_amplitude * cmath.exp(1j * self.drive_phase)

    def kappa(self, mode: str) -> float:
        return getattr(self, f"kappa_{mode}")

    def mode_frequency(self, mode: str) -> float:
        """Laboratory-frame angular frequency of mode k, r, p or q."""
        return {"k": self.omega_k, "r": self.omega_r,
                "p": self.omega_p, "q": self.omega_q}[mode]

    def with_(self, **changes) -> "PhysicalParams":
        """Copy with selected fields replaced."""
        return replace(self, **changes)

    # -- external units -----------------------------------------------------

    @classmethod
    def from_frequencies(cls, nu_k_GHz, nu_r_GHz, nu_0_GHz,
                         kappa_k_MHz, kappa_r_MHz, kappa_p_MHz, kappa_q_MHz,
                         g_p_MHz, g_q_MHz, epsilon_MHz=0.0, phase_rad=0.0,
                         temperature_K=0.0) -> "PhysicalParams":
        """Build from quoted frequencies nu = omega/2pi (GHz / MHz) and Kelvin."""
        return cls(
            omega_k=nu_k_GHz * GHZ, omega_r=nu_r_GHz * GHZ, omega_0=nu_0_GHz * GHZ,
            kappa_k=kappa_k_MHz * MHZ, kappa_r=kappa_r_MHz * MHZ,
            kappa_p=kappa_p_MHz * MHZ, kappa_q=kappa_q_MHz * MHZ,
            g_p=g_p_MHz * MHZ, g_q=g_q_MHz * MHZ,
            drive_amplitude=epsilon_MHz * MHZ, drive_phase=phase_rad,
            temperature=temperature_K,
        )

    def to_frequencies(self) -> dict:
        """Inverse of :meth:`from_frequencies`; same keys, same units."""
        return {
            "nu_k_GHz": self.omega_k / GHZ, "nu_r_GHz": self.omega_r / GHZ,
            "nu_0_GHz": self.omega_0 / GHZ,
            "kappa_k_MHz": self.kappa_k / MHZ, "kappa_r_MHz": self.kappa_r / MHZ,
            "kappa_p_MHz": self.kappa_p / MHZ, "kappa_q_MHz": self.kappa_q / MHZ,
            "g_p_MHz": self.g_p / MHZ, "g_q_MHz": self.g_q / MHZ,
            "epsilon_MHz": self.drive_amplitude / MHZ,
            "phase_rad": self.drive_phase,
            "temperature_K": self.temperature,
        }


def derived_detunings(params: PhysicalParams) -> tuple[float, float, float]:
    """Detunings (Delta_k, Delta_p, Delta_q) of the driven modes from omega_0.

    Satisfies Delta_p = Delta_k + omega_r and Delta_q = Delta_k - omega_r
    identically (the comb-frequency constraint).  The skyrmion mode does not
    rotate with the drive frame and has no detuning.
    """
    dk = params.omega_k - params.omega_0
    return dk, dk + params.omega_r, dk - params.omega_r


@dataclass(frozen=True)
class BathOccupations:
    """Mean thermal numbers of the four independent baths."""

    n_k: float
    n_r: float
    n_p: float
    n_q: float

    @classmethod
    def from_params(cls, params: PhysicalParams) -> "BathOccupations":
        T = params.temperature
        return cls(*(thermal_occupation(params.mode_frequency(m), T)
                     for m in "krpq"))

    def occupation(self, mode: str) -> float:
        return getattr(self, f"n_{mode}")


@dataclass(frozen=True)
class EffectiveCouplings:
    """Drive-enhanced three-magnon couplings G_j = g_j * |<a_k>|.

    ``G_p`` amplifies the confluence (beam-splitter) channel r <-> p and
    ``G_q`` the splitting (two-mode-squeezing) channel r <-> q.  Both are
    nonnegative magnitudes; the phase of the condensate sits in ``mean_k``.
    For coupling-ratio studies the magnitudes may be set directly, bypassing
    any particular drive.
    """

    G_p: float
    G_q: float
    mean_k: complex = 0.0 + 0.0j

    def __post_init__(self):
        if self.G_p < 0.0 or self.G_q < 0.0:
            raise DomainError("effective couplings are magnitudes, must be >= 0")

    @property
    def ratio(self) -> float:
        """G_q / G_p (inf when only the splitting channel is on)."""
        if self.G_p == 0.0:
            return math.inf if self.G_q > 0.0 else 0.0
        return self.G_q / self.G_p


def effective_couplings(params: PhysicalParams, mean_k: complex) -> EffectiveCouplings:
    """Effective couplings for a given condensate amplitude <a_k>."""
    a = abs(mean_k)
    return EffectiveCouplings(G_p=params.g_p * a, G_q=params.g_q * a,
                              mean_k=complex(mean_k))
