"""Mean-field steady states, drive threshold and nonlinear mean-field dynamics.

Below the threshold drive amplitude only the whispering-gallery mode is
macroscopically occupied; above it the skyrmion and both first-order teeth
acquire finite amplitudes whose individual phases are not fixed by the drive
(two phase constraints survive, one phase stays free).  The threshold is
finite only when the splitting channel beats the confluence channel,
g_q^2 kappa_p > g_p^2 kappa_q; otherwise it diverges and the trivial branch
holds at any drive power.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, UnsupportedRegimeError
from .model import PhysicalParams, derived_detunings

# classification band around the threshold: within this relative distance the
# state is tagged above-threshold with a near-threshold warning flag
NEAR_THRESHOLD_REL = 1e-6

# resonance check for the analytic branches
_RESONANCE_REL = 1e-9


class Regime(enum.Enum):
    BELOW_THRESHOLD = "below_threshold"
    ABOVE_THRESHOLD = "above_threshold"
    DIVERGENT_THRESHOLD = "divergent_threshold"


@dataclass(frozen=True)
class SemiclassicalState:
    """Mean amplitudes <a_j> with regime classification.

    Above threshold the moduli are fixed but the individual phases of the
    r, p, q amplitudes depend on initial conditions; ``free_phase`` is the
    explicit free skyrmion phase phi_r the returned snapshot assumes, and
    ``phases_determined`` is False to force consumers to acknowledge the
    indeterminacy.  The snapshot satisfies the two invariant constraints
    phi_p + phi_q = 2 phi_k + pi and phi_p - phi_q = 2 phi_r (mod 2pi).
    """

    mean_k: complex
    mean_r: complex
    mean_p: complex
    mean_q: complex
    regime: Regime
    threshold: float
    near_threshold: bool = False
    phases_determined: bool = True
    free_phase: float = 0.0

    @property
    def means(self) -> np.ndarray:
        return np.array([self.mean_k, self.mean_r, self.mean_p, self.mean_q])

    def mean(self, mode: str) -> complex:
        return getattr(self, f"mean_{mode}")


def _require_resonant(params: PhysicalParams, what: str) -> None:
    dk = params.omega_k - params.omega_0
    if abs(dk) > _RESONANCE_REL * max(params.omega_k, params.kappa_k):
        raise UnsupportedRegimeError(
            f"{what} is defined for resonant drive only (Delta_k = 0); "
            f"got Delta_k = {dk:g} rad/s")


def threshold_amplitude(params: PhysicalParams) -> float:
    """Critical drive amplitude; +inf when the threshold diverges.

    Finite branch: eps_th = kappa_k * sqrt(kappa_r kappa_p kappa_q /
    (g_q^2 kappa_p - g_p^2 kappa_q)), valid at resonance.
    """
    _require_resonant(params, "threshold_amplitude")
    denom = params.g_q ** 2 * params.kappa_p - params.g_p ** 2 * params.kappa_q
    if denom <= 0.0:
        return math.inf
    return params.kappa_k * math.sqrt(
        params.kappa_r * params.kappa_p * params.kappa_q / denom)


def steady_state(params: PhysicalParams, free_phase: float = 0.0) -> SemiclassicalState:
    """Analytic stationary solution at resonance.

    Below (or with divergent) threshold: <a_k> = E/kappa_k, the rest zero.
    Above threshold: closed-form moduli, phases assembled from phi_k = phi_l
    and the free skyrmion phase.
    """
    _require_resonant(params, "steady_state")
    eps_th = threshold_amplitude(params)
    eps = params.drive_amplitude

    near = math.isfinite(eps_th) and abs(eps - eps_th) < NEAR_THRESHOLD_REL * eps_th
    below = eps < eps_th and not near

    if not math.isfinite(eps_th) or below:
        regime = (Regime.DIVERGENT_THRESHOLD if not math.isfinite(eps_th)
                  else Regime.BELOW_THRESHOLD)
        return SemiclassicalState(
            mean_k=params.drive / params.kappa_k,
            mean_r=0j, mean_p=0j, mean_q=0j,
            regime=regime, threshold=eps_th, near_threshold=near)

    kr, kp, kq, kk = params.kappa_r, params.kappa_p, params.kappa_q, params.kappa_k
    gp, gq = params.g_p, params.g_q
    denom = gq ** 2 * kp - gp ** 2 * kq
    a_k = math.sqrt(kr * kp * kq / denom)
    a_r = math.sqrt((eps - eps_th) * kk * kp * kq / (eps_th * (gq ** 2 * kp + gp ** 2 * kq)))
    root = math.sqrt((eps - eps_th) * kk * kr / (eps_th * (gq ** 4 * kp ** 2 - gp ** 4 * kq ** 2)))
    a_p = gp * kq * root
    a_q = gq * kp * root

    phi_k = params.drive_phase
    phi_r = free_phase
    phi_p = phi_k + phi_r - math.pi / 2.0
    phi_q = phi_k - phi_r - math.pi / 2.0
    return SemiclassicalState(
        mean_k=a_k * cmath.exp(1j * phi_k),
        mean_r=a_r * cmath.exp(1j * phi_r),
        mean_p=a_p * cmath.exp(1j * phi_p),
        mean_q=a_q * cmath.exp(1j * phi_q),
        regime=Regime.ABOVE_THRESHOLD, threshold=eps_th,
        near_threshold=near, phases_determined=False, free_phase=free_phase)


@dataclass(frozen=True)
class MeanFieldTrajectory:
    """Sampled mean-field trajectory; amplitudes ordered (k, r, p, q)."""

    times: np.ndarray
    amplitudes: np.ndarray   # complex, shape (n_samples, 4)
    final: np.ndarray        # complex, shape (4,)

    def moduli(self) -> np.ndarray:
        return np.abs(self.amplitudes)


def default_timestep(params: PhysicalParams) -> float:
    """Conservative fixed step resolving the fastest rotating-frame scale."""
    dk, dp, dq = derived_detunings(params)
    fastest = max(params.omega_r, abs(dk), abs(dp), abs(dq),
                  params.kappa_k, params.kappa_r, params.kappa_p, params.kappa_q)
    return 0.01 / fastest


def integrate_meanfield(params: PhysicalParams, initial: SemiclassicalState | np.ndarray,
                        t_end: float, dt: float | None = None,
                        n_samples: int = 200) -> MeanFieldTrajectory:
    """Fixed-step RK4 integration of the four coupled mean-value equations.

    Works in the drive rotating frame with general detunings; the initial
    state may be a SemiclassicalState or a bare complex 4-vector (k, r, p, q).
    Raises DivergenceError (carrying the failure time) if the state leaves
    the finite range.
    """
    if t_end <= 0.0:
        raise DomainError("t_end must be positive")
    if dt is None:
        dt = default_timestep(params)
    if dt <= 0.0:
        raise DomainError("dt must be positive")

    means = initial.means if isinstance(initial, SemiclassicalState) else np.asarray(initial)
    ak, ar, ap, aq = (complex(z) for z in means)

    dk, dp, dq = derived_detunings(params)
    ck = 1j * dk + params.kappa_k
    cr = 1j * params.omega_r + params.kappa_r
    cp_ = 1j * dp + params.kappa_p
    cq = 1j * dq + params.kappa_q
    gp, gq = params.g_p, params.g_q
    E = params.drive

    def rhs(ak, ar, ap, aq):
        return (-ck * ak - 1j * gp * ar.conjugate() * ap - 1j * gq * ar * aq + E,
                -cr * ar - 1j * gp * ak.conjugate() * ap - 1j * gq * ak * aq.conjugate(),
                -cp_ * ap - 1j * gp * ak * ar,
                -cq * aq - 1j * gq * ak * ar.conjugate())

    n_steps = max(1, int(math.ceil(t_end / dt)))
    dt = t_end / n_steps
    stride = max(1, n_steps // max(1, n_samples))

    times = [0.0]
    samples = [(ak, ar, ap, aq)]
    h2, h6 = dt / 2.0, dt / 6.0
    for step in range(1, n_steps + 1):
        k1 = rhs(ak, ar, ap, aq)
        k2 = rhs(ak + h2 * k1[0], ar + h2 * k1[1], ap + h2 * k1[2], aq + h2 * k1[3])
        k3 = rhs(ak + h2 * k2[0], ar + h2 * k2[1], ap + h2 * k2[2], aq + h2 * k2[3])
        k4 = rhs(ak + dt * k3[0], ar + dt * k3[1], ap + dt * k3[2], aq + dt * k3[3])
        ak += h6 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0])
        ar += h6 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1])
        ap += h6 * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2])
        aq += h6 * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3])
        if step % stride == 0 or step == n_steps:
            if not all(math.isfinite(z.real) and math.isfinite(z.imag)
                       for z in (ak, ar, ap, aq)):
                raise DivergenceError("mean-field trajectory diverged",
                                      time=step * dt)
            times.append(step * dt)
            samples.append((ak, ar, ap, aq))

    amplitudes = np.array(samples, dtype=complex)
    return MeanFieldTrajectory(times=np.array(times), amplitudes=amplitudes,
                               final=amplitudes[-1].copy())


def phase_constraint_residuals(amps: np.ndarray) -> tuple[float, float]:
    """Residuals (mod 2pi, folded to [0, pi]) of the two above-threshold
    phase constraints for a (k, r, p, q) amplitude vector."""
    ph = np.angle(amps)
    c1 = (ph[2] + ph[3] - 2.0 * ph[0] - math.pi) % (2.0 * math.pi)
    c2 = (ph[2] - ph[3] - 2.0 * ph[1]) % (2.0 * math.pi)
    return (min(c1, 2.0 * math.pi - c1), min(c2, 2.0 * math.pi - c2))
