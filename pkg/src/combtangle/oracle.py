"""Monte Carlo cross-check of the stationary covariance.

Integrates the linear quadrature Langevin equation du = M u dt + dW with
Euler-Maruyama, dW componentwise Gaussian with covariance D dt (D is
diagonal), and estimates the stationary second moments by time-averaging
each trajectory past a burn-in and averaging across the ensemble.  The
classical simulation reproduces the symmetrized quantum covariance for
linear dynamics; agreement with the Lyapunov solution is asserted by tests,
never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import CovarianceMatrix, DriftDiffusion, is_stable
from .errors import DivergenceError, DomainError, NoSteadyStateError

# trajectories are simulated in fixed-size chunks, each drawing from its own
# (seed, chunk-index) stream: reproducible bit-for-bit, independent of any
# parallel schedule over chunks, and vectorizable within a chunk
CHUNK_SIZE = 4096


@dataclass(frozen=True)
class EnsembleSpec:
    """Ensemble size, step, horizon, seed and burn-in fraction.

    Validity against a given drift matrix (step short enough, horizon long
    enough) is enforced by :func:`simulate_ensemble`.
    """

    n_trajectories: int
    dt: float
    t_end: float
    seed: int
    burn_in: float = 0.5

    def __post_init__(self):
        if self.n_trajectories < 1000:
            raise DomainError("need at least 1e3 trajectories")
        if self.dt <= 0.0 or self.t_end <= 0.0:
            raise DomainError("dt and t_end must be positive")
        if not 0.0 <= self.burn_in < 1.0:
            raise DomainError("burn-in fraction must lie in [0, 1)")


def spec_for(dd: DriftDiffusion, n_trajectories: int, seed: int,
             dt_factor: float = 0.04, horizon: float = 12.0,
             burn_in: float = 0.5) -> EnsembleSpec:
    """Build a valid spec from the drift spectrum: the step resolves the
    fastest eigenvalue modulus (stricter than the decay-rate bound) and the
    horizon covers ``horizon`` times the slowest decay."""
    ev = dd.eigenvalues()
    abscissa = ev.real.max()
    if abscissa >= 0.0:
        raise NoSteadyStateError("cannot build an ensemble spec for an "
                                 "unstable drift matrix")
    dt = dt_factor / float(np.abs(ev).max())
    t_end = horizon / abs(float(abscissa))
    return EnsembleSpec(n_trajectories=n_trajectories, dt=dt, t_end=t_end,
                        seed=seed, burn_in=burn_in)


@dataclass(frozen=True)
class EnsembleEstimate:
    """Estimated covariance with elementwise standard errors."""

    covariance: CovarianceMatrix
    std_err: np.ndarray
    n_trajectories: int
    n_time_samples: int

    def frobenius_distance(self, other: CovarianceMatrix | np.ndarray) -> float:
        ref = other.V if isinstance(other, CovarianceMatrix) else np.asarray(other)
        return float(np.linalg.norm(self.covariance.V - ref))


def _validate(dd: DriftDiffusion, spec: EnsembleSpec) -> int:
    ev = dd.eigenvalues()
    abscissa = float(ev.real.max())
    if abscissa >= 0.0:
        raise NoSteadyStateError("refusing to simulate an unstable drift matrix")
    if spec.dt * abs(abscissa) >= 0.05:
        raise DomainError("dt too coarse: dt * |max Re lambda| must stay below 0.05")
    if spec.t_end < 10.0 / abs(abscissa):
        raise DomainError("t_end too short: need at least 10 slowest decay times")
    return max(1, int(math.ceil(spec.t_end / spec.dt)))


def simulate_ensemble(dd: DriftDiffusion, spec: EnsembleSpec) -> EnsembleEstimate:
    """Estimate the stationary covariance of (M, D) by direct simulation.

    Each trajectory starts at the origin, is integrated to t_end, and
    contributes the time average of u u^T over the samples past the burn-in;
    the ensemble mean of those averages is the estimate and the
    across-trajectory spread gives elementwise standard errors.
    """
    n_steps = _validate(dd, spec)
    first_kept = int(spec.burn_in * n_steps)
    n_kept = n_steps - first_kept

    n = dd.M.shape[0]
    step_map = np.eye(n) + dd.M.T * spec.dt   # right-multiplication form
    noise_scale = np.sqrt(np.diag(dd.D) * spec.dt)

    n_traj = spec.n_trajectories
    mean_acc = np.zeros((n, n))
    sq_acc = np.zeros((n, n))

    for start in range(0, n_traj, CHUNK_SIZE):
        size = min(CHUNK_SIZE, n_traj - start)
        rng = np.random.default_rng([spec.seed, start // CHUNK_SIZE])
        u = np.zeros((size, n))
        traj_acc = np.zeros((size, n, n))
        for step in range(n_steps):
            u = u @ step_map + rng.standard_normal((size, n)) * noise_scale
            if step >= first_kept:
                traj_acc += u[:, :, None] * u[:, None, :]
        if not np.all(np.isfinite(u)):
            bad = int(np.flatnonzero(~np.isfinite(u).all(axis=1))[0])
            raise DivergenceError("trajectory diverged", time=spec.t_end,
                                  trajectory=start + bad)
        traj_acc /= n_kept
        mean_acc += traj_acc.sum(axis=0)
        sq_acc += (traj_acc ** 2).sum(axis=0)

    v_hat = mean_acc / n_traj
    var = sq_acc / n_traj - v_hat ** 2
    std_err = np.sqrt(np.maximum(var, 0.0) / n_traj)
    v_hat = 0.5 * (v_hat + v_hat.T)

    return EnsembleEstimate(
        covariance=CovarianceMatrix(V=v_hat, mode_order=dd.mode_order),
        std_err=std_err, n_trajectories=n_traj, n_time_samples=n_kept)
