"""Phase-space view of the (p, q) pair: Gaussian Wigner density and the
1/e contour ellipses of its quadrature-pair marginals.

``wigner_value`` evaluates the four-dimensional density in the conventional
form exp(-mu V^-1 mu^T / 2) / (pi^2 sqrt(det V)); note this normalization
carries total mass 4 (a factor 2 per mode).  The two-dimensional marginal
grids are genuine probability densities and integrate to 1.  Squeezing shows
up as a contour ellipse whose minor-axis variance drops below the vacuum
value 1/2, i.e. a contour entering the unit vacuum circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

QUADRATURE_LABELS = ("X_p", "Y_p", "X_q", "Y_q")

# contour level: quadratic form mu Sigma^-1 mu^T = 2 is the 1/e fall-off
# from the density maximum
_CONTOUR_LEVEL = 2.0

DEFAULT_GRID_POINTS = 201
DEFAULT_EXTENT_SIGMAS = 6.0

VACUUM_RADIUS = 1.0


def wigner_value(v_pq: np.ndarray, point: np.ndarray) -> float:
    """Gaussian quasiprobability density at a phase-space point.

    ``v_pq`` is the 4x4 covariance of (X_p, Y_p, X_q, Y_q); ``point`` the
    corresponding 4-vector of quadrature values.
    """
    v = np.asarray(v_pq, dtype=float)
    mu = np.asarray(point, dtype=float)
    det = np.linalg.det(v)
    if det <= 0.0 or not np.isfinite(det):
        raise DomainError("covariance block must be positive definite")
    expo = -0.5 * mu @ np.linalg.solve(v, mu)
    return math.exp(expo) / (math.pi ** 2 * math.sqrt(det))


@dataclass(frozen=True)
class EllipseContour:
    """Contour ellipse: center, semi-axes (major, minor) and the major-axis
    angle in radians measured from the first grid axis."""

    center: tuple[float, float]
    semi_major: float
    semi_minor: float
    angle: float

    def points(self, n: int = 256) -> np.ndarray:
        """Sampled contour points, shape (n, 2)."""
        t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        c, s = math.cos(self.angle), math.sin(self.angle)
        x = self.semi_major * np.cos(t)
        y = self.semi_minor * np.sin(t)
        return np.column_stack([self.center[0] + c * x - s * y,
                                self.center[1] + s * x + c * y])


@dataclass(frozen=True)
class WignerGrid:
    """Marginal density of one quadrature pair on a rectangular grid."""

    labels: tuple[str, str]
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray           # shape (len(axis1), len(axis2))
    contour_1e: EllipseContour
    vacuum_radius: float
    sigma: np.ndarray            # the 2x2 marginal covariance

    def integral(self) -> float:
        d1 = self.axis1[1] - self.axis1[0]
        d2 = self.axis2[1] - self.axis2[0]
        return float(self.values.sum() * d1 * d2)

    @property
    def squeezed(self) -> bool:
        """Minor-axis variance below the vacuum variance 1/2."""
        return self.semi_minor_variance < 0.5

    @property
    def semi_minor_variance(self) -> float:
        return float(np.linalg.eigvalsh(self.sigma)[0])


def ellipse_from_covariance(sigma: np.ndarray) -> EllipseContour:
    """1/e contour of a centered bivariate normal, computed analytically
    from the eigendecomposition (resolution independent)."""
    evals, evecs = np.linalg.eigh(sigma)
    if evals[0] <= 0.0:
        raise DomainError("marginal covariance must be positive definite")
    # eigh sorts ascending; major axis last
    major = math.sqrt(_CONTOUR_LEVEL * evals[1])
    minor = math.sqrt(_CONTOUR_LEVEL * evals[0])
    angle = math.atan2(evecs[1, 1], evecs[0, 1])
    return EllipseContour(center=(0.0, 0.0), semi_major=major,
                          semi_minor=minor, angle=angle)


def marginal_pair(v_pq: np.ndarray, pair: tuple[str, str],
                  n_points: int = DEFAULT_GRID_POINTS,
                  extent_sigmas: float = DEFAULT_EXTENT_SIGMAS) -> WignerGrid:
    """Bivariate normal marginal of two quadratures on a symmetric grid.

    Gaussian marginalization is exact: the marginal of the four-dimensional
    density over two quadratures is the normal density with the 2x2
    sub-covariance of the kept pair.  Default extents are +/-6 standard
    deviations at 201 points per axis so that regression grids are
    bit-stable.
    """
    for label in pair:
        if label not in QUADRATURE_LABELS:
            raise KeyError(f"unknown quadrature {label!r}; "
                           f"expected one of {QUADRATURE_LABELS}")
    if pair[0] == pair[1]:
        raise KeyError("marginal needs two distinct quadratures")

    v = np.asarray(v_pq, dtype=float)
    i, j = QUADRATURE_LABELS.index(pair[0]), QUADRATURE_LABELS.index(pair[1])
    sigma = v[np.ix_([i, j], [i, j])]
    det = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] * sigma[1, 0]
    if det <= 0.0 or sigma[0, 0] <= 0.0:
        raise DomainError("degenerate marginal covariance")

    s1 = math.sqrt(sigma[0, 0])
    s2 = math.sqrt(sigma[1, 1])
    axis1 = np.linspace(-extent_sigmas * s1, extent_sigmas * s1, n_points)
    axis2 = np.linspace(-extent_sigmas * s2, extent_sigmas * s2, n_points)

    inv = np.linalg.inv(sigma)
    g1, g2 = np.meshgrid(axis1, axis2, indexing="ij")
    quad = inv[0, 0] * g1 * g1 + 2.0 * inv[0, 1] * g1 * g2 + inv[1, 1] * g2 * g2
    values = np.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det))

    return WignerGrid(labels=tuple(pair), axis1=axis1, axis2=axis2,
                      values=values, contour_1e=ellipse_from_covariance(sigma),
                      vacuum_radius=VACUUM_RADIUS, sigma=sigma)
