"""Two-mode squeezing frame of the first-order comb teeth.

For G_q < G_p the (p, q) pair admits delocalized Bogoliubov modes
beta_1 = a_q cosh(xi) + a_p^dag sinh(xi), beta_2 = a_p cosh(xi) +
a_q^dag sinh(xi) with squeeze parameter xi = arctanh(G_q/G_p).  beta_1
decouples from the skyrmion while beta_2 exchanges quanta with it at the
reduced rate sqrt(G_p^2 - G_q^2); the skyrmion's dissipation then drains
beta_2, which is the reservoir-cooling mechanism behind the p-q
entanglement.  The frame is diagnostic only; no correlation measure
depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import CovarianceMatrix
from .errors import DomainError
from .model import EffectiveCouplings


@dataclass(frozen=True)
class BogoliubovFrame:
    """Squeeze parameter, residual skyrmion coupling and occupancies."""

    xi: float
    G_tilde: float
    occupancy_beta1: float
    occupancy_beta2: float


def squeeze_parameter(eff: EffectiveCouplings) -> float:
    """xi = arctanh(G_q / G_p); defined only for 0 <= G_q < G_p."""
    if not 0.0 <= eff.G_q < eff.G_p:
        raise DomainError(
            f"squeezing frame needs 0 <= G_q < G_p, got G_q={eff.G_q:g}, "
            f"G_p={eff.G_p:g}")
    return math.atanh(eff.G_q / eff.G_p)


def mode_number(cm: CovarianceMatrix, mode: str) -> float:
    """<a^dag a> from the quadrature variances (may carry round-off sign)."""
    b = cm.block(mode)
    return 0.5 * (b[0, 0] + b[1, 1] - 1.0)


def pair_moment(cm: CovarianceMatrix, mode1: str, mode2: str) -> float:
    """<a_1 a_2 + a_1^dag a_2^dag> from quadrature cross-correlations:
    equals <X_1 X_2> - <Y_1 Y_2> under the 1/sqrt(2) convention."""
    c = cm.cross_block(mode1, mode2)
    return c[0, 0] - c[1, 1]


def bogoliubov_occupations(cm: CovarianceMatrix,
                           eff: EffectiveCouplings) -> tuple[float, float]:
    """Occupancies (<beta_1^dag beta_1>, <beta_2^dag beta_2>).

    Normal-ordering the transformed operators gives, with c = cosh(xi) and
    s = sinh(xi),

        <beta_1^dag beta_1> = c^2 n_q + s^2 (n_p + 1) + c s m,
        <beta_2^dag beta_2> = c^2 n_p + s^2 (n_q + 1) + c s m,

    where n_j = <a_j^dag a_j> and m = <a_q a_p + a_q^dag a_p^dag>.  The s^2
    commutator term matters: it makes the vacuum occupancies sinh^2(xi) and
    the matched two-mode squeezed state an exact joint ground state.  All
    moments are taken from the actual steady-state covariance, not from the
    bath occupations.
    """
    xi = squeeze_parameter(eff)
    c, s = math.cosh(xi), math.sinh(xi)
    n_p = mode_number(cm, "p")
    n_q = mode_number(cm, "q")
    m = pair_moment(cm, "q", "p")
    n1 = c * c * n_q + s * s * (n_p + 1.0) + c * s * m
    n2 = c * c * n_p + s * s * (n_q + 1.0) + c * s * m
    return n1, n2


def quadrature_transform(xi: float) -> np.ndarray:
    """Symplectic matrix mapping (X_p, Y_p, X_q, Y_q) to the Bogoliubov
    quadratures (X_b1, Y_b1, X_b2, Y_b2)."""
    c, s = math.cosh(xi), math.sinh(xi)
    return np.array([
        [s, 0.0, c, 0.0],
        [0.0, -s, 0.0, c],
        [c, 0.0, s, 0.0],
        [0.0, c, 0.0, -s],
    ])


def bogoliubov_covariance(cm: CovarianceMatrix, xi: float) -> np.ndarray:
    """Covariance of the (p, q) pair expressed in the Bogoliubov basis."""
    ip, iq = 2 * cm.index("p"), 2 * cm.index("q")
    idx = [ip, ip + 1, iq, iq + 1]
    v_pq = cm.V[np.ix_(idx, idx)]
    S = quadrature_transform(xi)
    return S @ v_pq @ S.T


def bogoliubov_frame(cm: CovarianceMatrix, eff: EffectiveCouplings) -> BogoliubovFrame:
    xi = squeeze_parameter(eff)
    n1, n2 = bogoliubov_occupations(cm, eff)
    return BogoliubovFrame(xi=xi, G_tilde=math.sqrt(eff.G_p ** 2 - eff.G_q ** 2),
                           occupancy_beta1=n1, occupancy_beta2=n2)
