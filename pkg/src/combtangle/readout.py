"""Adiabatic magnon-to-microwave readout map.

A weak probe field resonant with a magnon mode adiabatically follows it when
the probe dissipation dominates the coupling (kappa_c >> g).  Input-output
theory then gives delta_c_out = -i sqrt(2) g / sqrt(kappa_c) * delta_a +
delta_c_in: the output quadratures are the magnon quadratures rotated a
quarter turn, scaled by the transfer gain eta = sqrt(2) g / sqrt(kappa_c),
plus the probe's own noise.  Homodyning the outputs therefore measures the
full magnon covariance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AdiabaticityError, DomainError

# quarter-turn induced by the -i transfer factor: X_out picks up Y_a
_QUARTER_TURN = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class ReadoutChannel:
    """One probe channel: coupling g, probe linewidth kappa_c, probe bath.

    Validity requires kappa_c/g at least ``min_ratio`` (default 10); ratios
    in [min_ratio/2, min_ratio) pass with a warning, anything lower is
    rejected.  Probes default to vacuum input: at millikelvin temperatures
    the thermal occupation of a gigahertz probe is negligible.
    """

    g: float
    kappa_c: float
    input_occupation: float = 0.0
    min_ratio: float = 10.0

    def __post_init__(self):
        if self.g < 0.0 or self.kappa_c <= 0.0:
            raise DomainError("need g >= 0 and kappa_c > 0")
        if self.input_occupation < 0.0:
            raise DomainError("probe occupation must be >= 0")

    @property
    def eta(self) -> float:
        """Transfer gain sqrt(2) g / sqrt(kappa_c)."""
        return math.sqrt(2.0) * self.g / math.sqrt(self.kappa_c)

    @property
    def probe_noise(self) -> np.ndarray:
        return (2.0 * self.input_occupation + 1.0) / 2.0 * np.eye(2)

    def check_adiabatic(self) -> None:
        if self.g == 0.0:
            return
        ratio = self.kappa_c / self.g
        if ratio < 0.5 * self.min_ratio:
            raise AdiabaticityError(
                f"kappa_c/g = {ratio:.2f} violates the adiabatic readout "
                f"condition (need >= {self.min_ratio:g})")
        if ratio < self.min_ratio:
            warnings.warn(f"kappa_c/g = {ratio:.2f} is marginal for adiabatic "
                          f"readout (recommended >= {self.min_ratio:g})",
                          stacklevel=3)


def output_covariance(v_mode: np.ndarray, ch: ReadoutChannel) -> np.ndarray:
    """Covariance of the output probe quadratures for one magnon mode:
    eta^2 R V R^T + probe noise, R the quarter-turn rotation."""
    ch.check_adiabatic()
    v = np.asarray(v_mode, dtype=float)
    if v.shape != (2, 2):
        raise DomainError("single-mode block must be 2x2")
    return ch.eta ** 2 * _QUARTER_TURN @ v @ _QUARTER_TURN.T + ch.probe_noise


def _joint_transfer(ch_p: ReadoutChannel, ch_q: ReadoutChannel) -> np.ndarray:
    S = np.zeros((4, 4))
    S[:2, :2] = ch_p.eta * _QUARTER_TURN
    S[2:, 2:] = ch_q.eta * _QUARTER_TURN
    return S


def joint_output_covariance(v_pq: np.ndarray, ch_p: ReadoutChannel,
                            ch_q: ReadoutChannel) -> np.ndarray:
    """Two-probe output covariance: blockwise quarter-turn map with
    independent probe noises on the diagonal; cross blocks scale by
    eta_p * eta_q, so the magnon cross-correlations survive in the outputs."""
    ch_p.check_adiabatic()
    ch_q.check_adiabatic()
    v = np.asarray(v_pq, dtype=float)
    if v.shape != (4, 4):
        raise DomainError("joint block must be 4x4")
    S = _joint_transfer(ch_p, ch_q)
    noise = np.zeros((4, 4))
    noise[:2, :2] = ch_p.probe_noise
    noise[2:, 2:] = ch_q.probe_noise
    return S @ v @ S.T + noise


def reconstruct_covariance(v_out: np.ndarray, ch_p: ReadoutChannel,
                           ch_q: ReadoutChannel) -> np.ndarray:
    """Invert the joint readout map, recovering the magnon covariance from
    the measured output covariance (known gains and probe noises)."""
    if ch_p.eta == 0.0 or ch_q.eta == 0.0:
        raise DomainError("readout map is not invertible at zero gain")
    v = np.asarray(v_out, dtype=float)
    noise = np.zeros((4, 4))
    noise[:2, :2] = ch_p.probe_noise
    noise[2:, 2:] = ch_q.probe_noise
    S_inv = np.linalg.inv(_joint_transfer(ch_p, ch_q))
    return S_inv @ (v - noise) @ S_inv.T
