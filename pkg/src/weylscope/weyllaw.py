"""Leading terms of the eigenvalue-counting lower bound.

The ball form is |W| Vol (2 sqrt(pi))^{-d} t^d / Gamma(d/2+1); the general
form is |W| Vol (2 pi)^{-d} Vol(Ad(K) Omega) t^d.  For the unit ball the
two coincide identically.  Vol(Gamma\\G/K) is always a user input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .descriptors import GroupDescriptor
from .rootsystem import RootSystem, build_root_system, weyl_enumerate

__all__ = [
    "OmegaSpec",
    "IndicatorUnbounded",
    "dim_symmetric_space",
    "weyl_order",
    "leading_term_ball",
    "vol_adk_omega",
    "counting_lower_bound",
    "ball_volume",
]


class IndicatorUnbounded(ValueError):
    """Indicator support reaches outside the declared bounding radius."""


@dataclass(frozen=True)
class OmegaSpec:
    """A bounded open Omega in a*: either a Killing ball or a sampled
    indicator with a declared bounding radius."""

    kind: str  # "ball" | "indicator"
    radius: float = 1.0
    indicator: Optional[Callable[[np.ndarray], bool]] = None
    bounding_radius: float = 0.0

    @staticmethod
    def ball(radius: float) -> "OmegaSpec":
        if radius <= 0:
            raise ValueError("ball radius must be positive")
        return OmegaSpec("ball", radius=radius)

    @staticmethod
    def from_indicator(fn, bounding_radius: float) -> "OmegaSpec":
        if bounding_radius <= 0 or not math.isfinite(bounding_radius):
            raise ValueError("finite positive bounding radius required")
        return OmegaSpec("indicator", indicator=fn, bounding_radius=bounding_radius)


def dim_symmetric_space(desc: GroupDescriptor, rs: Optional[RootSystem] = None) -> int:
    """dim G/K = rank + sum of root multiplicities."""
    if rs is None:
        rs = build_root_system(desc)
    return rs.rank + int(rs.multiplicities.sum())


def weyl_order(rs: RootSystem) -> int:
    return len(weyl_enumerate(rs))


def ball_volume(d: int, r: float = 1.0) -> float:
    """Euclidean volume of the d-ball."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0) * r**d


def leading_term_ball(desc: GroupDescriptor, vol: float, t: float) -> float:
    """|W| Vol (2 sqrt(pi))^{-d} t^d / Gamma(d/2 + 1)."""
    if vol <= 0:
        raise ValueError("vol must be positive")
    if t < 0:
        raise ValueError("t must be >= 0")
    rs = build_root_system(desc)
    d = dim_symmetric_space(desc, rs)
    return (
        weyl_order(rs)
        * vol
        * (2.0 * math.sqrt(math.pi)) ** (-d)
        * t**d
        / math.gamma(d / 2.0 + 1.0)
    )


def _chamber_integral(rs: RootSystem, indicator, rmax: float, grid: int) -> float:
    """I(S) = integral over the chamber of 1_{WS}(H) prod alpha(H)^m dH in
    stored coordinates, midpoint grid over the bounding box [0,rmax]^n
    rotated into the chamber (we simply grid the cube [-rmax, rmax]^n and
    mask the chamber; rank <= 3 intended)."""
    n = rs.rank
    axes = [(-rmax + (np.arange(grid) + 0.5) * (2.0 * rmax / grid)) for _ in range(n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    cell = (2.0 * rmax / grid) ** n
    # chamber: alpha_i(H) > 0 for all simple roots (self-dual coordinates)
    mask = np.all(pts @ rs.simple_roots.T > 0, axis=1)
    pts = pts[mask]
    if pts.size == 0:
        return 0.0
    inside = np.array([indicator(p) for p in pts], dtype=bool)
    if not np.any(inside):
        return 0.0
    dens = np.prod(
        (pts[inside] @ rs.positive_roots.T) ** rs.multiplicities[None, :], axis=1
    )
    return float(dens.sum() * cell)


def vol_adk_omega(
    desc: GroupDescriptor, omega: OmegaSpec, grid: int = 80
) -> float:
    """Vol(Ad(K) Omega).  Balls are exact via the calibration identity;
    general indicators use the self-calibrated chamber quadrature
    Vol(B_1^d) * I(Omega)/I(B_1), which cancels the unknown constant of
    the Weyl integration formula."""
    rs = build_root_system(desc)
    d = dim_symmetric_space(desc, rs)
    if omega.kind == "ball":
        return ball_volume(d, omega.radius)
    if rs.rank > 3:
        raise ValueError("indicator quadrature supported for rank <= 3")
    rb = omega.bounding_radius
    elements = weyl_enumerate(rs)

    def symmetrized(p):
        hit = any(omega.indicator(w.matrix @ p) for w in elements)
        if hit and np.linalg.norm(p) > rb * (1.0 + 1e-9):
            raise IndicatorUnbounded("indicator true outside bounding radius")
        return hit

    rmax = max(rb, 1.0)
    i_omega = _chamber_integral(rs, symmetrized, rmax, grid)
    i_ball = _chamber_integral(rs, lambda p: np.dot(p, p) < 1.0, rmax, grid)
    return ball_volume(d) * i_omega / i_ball


def counting_lower_bound(
    desc: GroupDescriptor, vol: float, omega: OmegaSpec, t: float, grid: int = 80
) -> float:
    """|W| Vol (2 pi)^{-d} Vol(Ad(K) Omega) t^d.  The remainder is
    O(t^{d-1}) and is never evaluated numerically."""
    if vol <= 0:
        raise ValueError("vol must be positive")
    if t < 0:
        raise ValueError("t must be >= 0")
    rs = build_root_system(desc)
    d = dim_symmetric_space(desc, rs)
    return (
        weyl_order(rs)
        * vol
        * (2.0 * math.pi) ** (-d)
        * vol_adk_omega(desc, omega, grid)
        * t**d
    )
