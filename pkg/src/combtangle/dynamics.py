"""Linearized fluctuation dynamics: drift/diffusion matrices, stability,
and the stationary covariance from the Lyapunov equation.

Quadrature convention: X = (a + a^dag)/sqrt(2), Y = i(a^dag - a)/sqrt(2),
vacuum variance 1/2.  Quadratures are ordered (X, Y) per mode, modes in
``mode_order``; the reduced three-mode system is exactly (r, p, q) and the
full four-mode system (k, r, p, q).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import PHYSICALITY_TOL, STABILITY_TOL_FACTOR
from .errors import (ConditioningWarning, DivergenceError, DomainError,
                     NoSteadyStateError, NumericalError, UnsupportedRegimeError)
from .model import BathOccupations, EffectiveCouplings, PhysicalParams, derived_detunings
from .semiclassical import Regime, SemiclassicalState, steady_state

REDUCED_ORDER = ("r", "p", "q")
FULL_ORDER = ("k", "r", "p", "q")

_COND_WARN = 1e12


def symplectic_form(n_modes: int) -> np.ndarray:
    """Direct sum of n copies of [[0, 1], [-1, 0]] in (X, Y) ordering."""
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for i in range(n_modes):
        out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = J
    return out


def _rotation_block(kappa: float, delta: float) -> np.ndarray:
    """Single-mode damped rotation at detuning delta."""
    return np.array([[-kappa, delta], [-delta, -kappa]])


def _beamsplitter_blocks(G: complex) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature blocks of the exchange coupling
    da1 ~ -i conj(G) a2, da2 ~ -i G a1; returns (block_12, block_21)."""
    re, im = G.real, G.imag
    b12 = np.array([[-im, re], [-re, -im]])
    b21 = np.array([[im, re], [-re, im]])
    return b12, b21


def _squeezing_blocks(G: complex) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature blocks of the pair coupling da1 ~ -i G a2^dag,
    da2 ~ -i G a1^dag; symmetric between the two modes."""
    re, im = G.real, G.imag
    b = np.array([[im, -re], [-re, -im]])
    return b, b.copy()


@dataclass(frozen=True)
class DriftDiffusion:
    """Drift matrix M and diagonal diffusion matrix D for the quadrature
    Langevin equation du = M u dt + noise, with D the symmetrized noise
    strength kappa_j (2 n_j + 1) per quadrature pair."""

    M: np.ndarray
    D: np.ndarray
    mode_order: tuple[str, ...]

    @property
    def n_modes(self) -> int:
        return len(self.mode_order)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.M)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric matrix of symmetrized quadrature second moments."""

    V: np.ndarray
    mode_order: tuple[str, ...]

    @property
    def n_modes(self) -> int:
        return len(self.mode_order)

    def index(self, mode: str) -> int:
        try:
            return self.mode_order.index(mode)
        except ValueError:
            raise KeyError(f"mode {mode!r} not in {self.mode_order}") from None

    def block(self, mode: str) -> np.ndarray:
        i = 2 * self.index(mode)
        return self.V[i:i + 2, i:i + 2]

    def cross_block(self, mode1: str, mode2: str) -> np.ndarray:
        i, j = 2 * self.index(mode1), 2 * self.index(mode2)
        return self.V[i:i + 2, j:j + 2]

    def physicality_spectrum(self) -> np.ndarray:
        """Eigenvalues of the Hermitian matrix V + i*Omega, ascending.

        All nonnegative (up to round-off) iff the state is physical per the
        uncertainty relation; implies positive definiteness of V."""
        omega = symplectic_form(self.n_modes)
        return np.linalg.eigvalsh(self.V + 1j * omega)

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return float(self.physicality_spectrum()[0]) >= -tol


def _diffusion(params: PhysicalParams, modes: tuple[str, ...],
               baths: BathOccupations | None = None) -> np.ndarray:
    baths = baths if baths is not None else BathOccupations.from_params(params)
    entries = []
    for m in modes:
        d = params.kappa(m) * (2.0 * baths.occupation(m) + 1.0)
        entries += [d, d]
    return np.diag(entries)


def _require_not_above_threshold(params: PhysicalParams) -> None:
    state = steady_state(params)
    if state.regime is Regime.ABOVE_THRESHOLD:
        raise UnsupportedRegimeError(
            "fluctuation analysis is restricted to drives below threshold")


def build_reduced_drift(eff: EffectiveCouplings, params: PhysicalParams,
                        baths: BathOccupations | None = None) -> DriftDiffusion:
    """Three-mode (r, p, q) drift and diffusion for resonant drive.

    The whispering-gallery mode decouples below threshold and is dropped;
    the confluence channel enters as an exchange coupling r <-> p with
    strength G_p and the splitting channel as a pair coupling r <-> q with
    strength G_q.
    """
    _require_not_above_threshold(params)

    wr = params.omega_r
    kr, kp, kq = params.kappa_r, params.kappa_p, params.kappa_q
    Gp, Gq = eff.G_p, eff.G_q

    M = np.zeros((6, 6))
    M[0:2, 0:2] = _rotation_block(kr, wr)
    M[2:4, 2:4] = _rotation_block(kp, wr)
    M[4:6, 4:6] = _rotation_block(kq, -wr)
    brp, bpr = _beamsplitter_blocks(complex(Gp))
    M[0:2, 2:4] = brp
    M[2:4, 0:2] = bpr
    trq, tqr = _squeezing_blocks(complex(Gq))
    M[0:2, 4:6] = trq
    M[4:6, 0:2] = tqr

    return DriftDiffusion(M=M, D=_diffusion(params, REDUCED_ORDER, baths),
                          mode_order=REDUCED_ORDER)


def build_full_drift(params: PhysicalParams, state: SemiclassicalState,
                     baths: BathOccupations | None = None) -> DriftDiffusion:
    """Four-mode (k, r, p, q) drift and diffusion for a below-threshold state.

    With vanishing r, p, q mean fields the k rows and columns carry no
    coupling: the condensate mode evolves as an isolated damped rotation at
    its own detuning, which is what makes the reduced three-mode description
    exact.  General drive detunings are allowed; the effective couplings
    G_j = g_j <a_k> keep the condensate phase.
    """
    if state.regime is Regime.ABOVE_THRESHOLD:
        raise UnsupportedRegimeError(
            "full drift linearization requires a below-threshold state")

    dk, dp, dq = derived_detunings(params)
    Gp = params.g_p * state.mean_k
    Gq = params.g_q * state.mean_k

    M = np.zeros((8, 8))
    M[0:2, 0:2] = _rotation_block(params.kappa_k, dk)
    M[2:4, 2:4] = _rotation_block(params.kappa_r, params.omega_r)
    M[4:6, 4:6] = _rotation_block(params.kappa_p, dp)
    M[6:8, 6:8] = _rotation_block(params.kappa_q, dq)
    brp, bpr = _beamsplitter_blocks(Gp)
    M[2:4, 4:6] = brp
    M[4:6, 2:4] = bpr
    trq, tqr = _squeezing_blocks(Gq)
    M[2:4, 6:8] = trq
    M[6:8, 2:4] = tqr

    return DriftDiffusion(M=M, D=_diffusion(params, FULL_ORDER, baths),
                          mode_order=FULL_ORDER)


@dataclass(frozen=True)
class StabilityVerdict:
    """Hurwitz verdict with the spectral abscissa max Re lambda(M).

    ``marginal`` flags abscissae within the tolerance band around zero,
    where the verdict is numerically unreliable (the equal-coupling limit
    sits exactly on this boundary)."""

    stable: bool
    abscissa: float
    marginal: bool
    tol: float

    def __bool__(self) -> bool:
        return self.stable


def is_stable(dd: DriftDiffusion) -> StabilityVerdict:
    """All eigenvalues of M strictly in the left half plane (with margin)."""
    abscissa = float(dd.eigenvalues().real.max())
    kappa_scale = float(np.max(-np.diag(dd.M)))
    tol = STABILITY_TOL_FACTOR * max(kappa_scale, 0.0)
    return StabilityVerdict(stable=abscissa < -tol, abscissa=abscissa,
                            marginal=abs(abscissa) <= tol, tol=tol)


def solve_lyapunov(dd: DriftDiffusion) -> CovarianceMatrix:
    """Stationary covariance from M V + V M^T = -D.

    Solved directly through the vectorized Kronecker form; at these sizes
    the dense solve is exact and fast.  The residual is verified against
    1e-10 * ||D||_F and the physicality spectrum is checked; a conditioning
    warning is attached when the solve is poorly conditioned.
    """
    verdict = is_stable(dd)
    if not verdict:
        raise NoSteadyStateError(
            f"drift matrix is not stable (abscissa {verdict.abscissa:g})")

    n = dd.M.shape[0]
    eye = np.eye(n)
    A = np.kron(eye, dd.M) + np.kron(dd.M, eye)
    cond = np.linalg.cond(A)
    if cond > _COND_WARN:
        warnings.warn(f"Lyapunov solve condition estimate {cond:.2e}",
                      ConditioningWarning, stacklevel=2)
    V = np.linalg.solve(A, -dd.D.reshape(-1)).reshape(n, n)
    V = 0.5 * (V + V.T)

    residual = np.linalg.norm(dd.M @ V + V @ dd.M.T + dd.D)
    bound = 1e-10 * np.linalg.norm(dd.D)
    if residual > bound:
        raise NumericalError(
            f"Lyapunov residual {residual:g} exceeds bound {bound:g}")

    cm = CovarianceMatrix(V=V, mode_order=dd.mode_order)
    if not cm.is_physical():
        raise NumericalError("stationary covariance violates the uncertainty "
                             "relation beyond round-off tolerance")
    return cm


def evolve_covariance(dd: DriftDiffusion, V0: CovarianceMatrix | np.ndarray,
                      t_end: float, dt: float) -> CovarianceMatrix:
    """RK4 integration of Vdot = M V + V M^T + D from V0 to t_end.

    For stable dd and t_end much longer than the slowest decay this
    converges to the Lyapunov solution; unstable input is rejected rather
    than integrated into a divergence.
    """
    if dt <= 0.0 or t_end <= 0.0:
        raise DomainError("dt and t_end must be positive")
    verdict = is_stable(dd)
    if not verdict:
        raise NoSteadyStateError(
            f"covariance evolution diverges for unstable drift "
            f"(abscissa {verdict.abscissa:g})")

    V = np.array(V0.V if isinstance(V0, CovarianceMatrix) else V0, dtype=float)
    if V.shape != dd.M.shape:
        raise DomainError(f"V0 shape {V.shape} does not match drift {dd.M.shape}")

    M, MT, D = dd.M, dd.M.T, dd.D
    n_steps = max(1, int(math.ceil(t_end / dt)))
    h = t_end / n_steps

    def f(V):
        return M @ V + V @ MT + D

    for step in range(n_steps):
        k1 = f(V)
        k2 = f(V + 0.5 * h * k1)
        k3 = f(V + 0.5 * h * k2)
        k4 = f(V + h * k3)
        V = V + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.all(np.isfinite(V)):
            raise DivergenceError("covariance integration diverged",
                                  time=(step + 1) * h)

    V = 0.5 * (V + V.T)
    return CovarianceMatrix(V=V, mode_order=dd.mode_order)
