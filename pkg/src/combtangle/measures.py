"""Bipartite Gaussian correlation measures on covariance matrices.

Logarithmic negativity is computed two independent ways (closed-form
determinant route and symplectic spectrum of the partial transpose) that are
required to agree; the symplectic route serves as the permanent regression
oracle for the closed form.  Steering is the one-sided entropy-difference
measure for Gaussian measurements, evaluated in both directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CLAMP_TOL, MHZ
from .bogoliubov import bogoliubov_frame
from .dynamics import CovarianceMatrix
from .errors import DomainError
from .model import EffectiveCouplings


def _det2(a: np.ndarray) -> float:
    """Closed-form 2x2 determinant (no LU round-off)."""
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def _det4(a: np.ndarray) -> float:
    """Cofactor expansion of a 4x4 determinant; keeps the symplectic
    invariants noise-free near the separability boundary."""
    out = 0.0
    for j, sign in zip(range(4), (1.0, -1.0, 1.0, -1.0)):
        rows = [1, 2, 3]
        cols = [c for c in range(4) if c != j]
        m = a[np.ix_(rows, cols)]
        out += sign * a[0, j] * (
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
    return out


def _clamped(x: float, scale: float) -> float:
    """Treat tiny negatives as exact zeros; larger ones are upstream bugs."""
    if x < 0.0:
        if x < -CLAMP_TOL * max(1.0, scale):
            raise DomainError(f"negative invariant {x:g} beyond round-off; "
                              "input covariance is not physical")
        return 0.0
    return x


@dataclass(frozen=True)
class ReducedCM:
    """Two-mode reduction of a parent covariance matrix."""

    V1: np.ndarray
    V2: np.ndarray
    V12: np.ndarray
    labels: tuple[str, str]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.V1, self.V12], [self.V12.T, self.V2]])


def reduce_cm(cm: CovarianceMatrix, pair: tuple[str, str]) -> ReducedCM:
    """Keep the rows/columns of the two selected modes, drop the rest."""
    m1, m2 = pair
    if m1 == m2:
        raise KeyError("the two selected modes must differ")
    return ReducedCM(V1=np.array(cm.block(m1)), V2=np.array(cm.block(m2)),
                     V12=np.array(cm.cross_block(m1, m2)), labels=(m1, m2))


def log_negativity(rcm: ReducedCM) -> tuple[float, float]:
    """(E_N, nu): entanglement from the minimal symplectic eigenvalue nu of
    the partially transposed two-mode covariance.

    nu = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2) with
    Sigma = det V1 + det V2 - 2 det V12; E_N = max(0, -ln 2 nu).
    """
    sigma = _det2(rcm.V1) + _det2(rcm.V2) - 2.0 * _det2(rcm.V12)
    det_v = _det4(rcm.matrix)
    disc = _clamped(sigma * sigma - 4.0 * det_v, sigma * sigma)
    inner = _clamped(0.5 * (sigma - math.sqrt(disc)), abs(sigma))
    nu = math.sqrt(inner)
    if nu <= 0.0:
        raise DomainError("vanishing symplectic eigenvalue; covariance is singular")
    return max(0.0, -math.log(2.0 * nu)), nu


def log_negativity_symplectic(rcm: ReducedCM) -> tuple[float, float]:
    """Independent route: minimal modulus eigenvalue of i Omega V_pt, where
    V_pt flips the second mode's momentum.  Must agree with
    :func:`log_negativity` to 1e-10."""
    P = np.diag([1.0, 1.0, 1.0, -1.0])
    v_pt = P @ rcm.matrix @ P
    omega = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    ev = np.linalg.eigvals(1j * omega @ v_pt)
    nu = float(np.sort(np.abs(ev))[0])
    if nu <= 0.0:
        raise DomainError("vanishing symplectic eigenvalue; covariance is singular")
    return max(0.0, -math.log(2.0 * nu)), nu


def gaussian_steering(rcm: ReducedCM) -> tuple[float, float]:
    """(S_12, S_21): Gaussian steerability in both directions.

    S_12 = max(0, S(2 V1) - S(2 V)) with S(sigma) = ln(det sigma)/2; a
    positive value means mode 1's Gaussian measurements steer mode 2.
    """
    d1 = _det2(2.0 * rcm.V1)
    d2 = _det2(2.0 * rcm.V2)
    dv = _det4(2.0 * rcm.matrix)
    if d1 <= 0.0 or d2 <= 0.0 or dv <= 0.0:
        raise DomainError("non-positive determinant in steering formula; "
                          "input covariance is not physical")
    s_full = 0.5 * math.log(dv)
    s12 = max(0.0, 0.5 * math.log(d1) - s_full)
    s21 = max(0.0, 0.5 * math.log(d2) - s_full)
    return s12, s21


def effective_number(cm: CovarianceMatrix, mode: str) -> float:
    """Occupation inferred from quadrature variances,
    (<X^2> + <Y^2> - 1)/2; clamped at 0 for vacuum round-off."""
    b = cm.block(mode)
    n = 0.5 * (b[0, 0] + b[1, 1] - 1.0)
    return _clamped(n, abs(b[0, 0]) + abs(b[1, 1]))


@dataclass(frozen=True)
class CorrelationReport:
    """All pairwise measures for one parameter point.

    ``entanglement`` maps pair keys like "pq" to E_N, ``symplectic_nu`` to
    the corresponding minimal symplectic eigenvalue; ``steering`` maps
    directed keys like "S_pq"; ``numbers`` maps "N_p" etc.  The Bogoliubov
    block is present only where that frame is defined (G_q < G_p).
    """

    entanglement: dict
    symplectic_nu: dict
    steering: dict
    numbers: dict
    stable: bool
    physical: bool
    bogoliubov: dict | None = None

    def to_flat_dict(self) -> dict:
        """Flat JSON-ready mapping with deterministic key order."""
        out = {}
        for key, val in self.entanglement.items():
            out[f"E_{key}"] = val
        for key, val in self.symplectic_nu.items():
            out[f"nu_{key}"] = val
        out.update(self.steering)
        out.update(self.numbers)
        if self.bogoliubov is not None:
            out.update(self.bogoliubov)
        out["stable"] = self.stable
        out["physical"] = self.physical
        return out


def correlation_report(cm: CovarianceMatrix,
                       eff: EffectiveCouplings | None = None,
                       stable: bool = True) -> CorrelationReport:
    """Evaluate every pairwise measure on a covariance matrix.

    When the effective couplings are supplied and admit the two-mode
    squeezing frame (G_q < G_p), the squeeze parameter and Bogoliubov
    occupancies of the (p, q) pair are appended.
    """
    modes = cm.mode_order
    ent, nus, steer, nums = {}, {}, {}, {}
    for i, m1 in enumerate(modes):
        for m2 in modes[i + 1:]:
            rcm = reduce_cm(cm, (m1, m2))
            en, nu = log_negativity(rcm)
            ent[f"{m1}{m2}"] = en
            nus[f"{m1}{m2}"] = nu
            s12, s21 = gaussian_steering(rcm)
            steer[f"S_{m1}{m2}"] = s12
            steer[f"S_{m2}{m1}"] = s21
    for m in modes:
        nums[f"N_{m}"] = effective_number(cm, m)

    bog = None
    if eff is not None and "p" in modes and "q" in modes and 0.0 <= eff.G_q < eff.G_p:
        frame = bogoliubov_frame(cm, eff)
        bog = {"xi": frame.xi, "G_tilde_MHz": frame.G_tilde / MHZ,
               "n_beta1": frame.occupancy_beta1, "n_beta2": frame.occupancy_beta2}

    return CorrelationReport(entanglement=ent, symplectic_nu=nus, steering=steer,
                             numbers=nums, stable=stable,
                             physical=cm.is_physical(), bogoliubov=bog)
