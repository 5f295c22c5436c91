"""Numerical elementary spherical functions for SL(2,R) and SL(3,R).

phi_lambda(g) is evaluated through the compact-group integral of
exp(-(lambda+rho) H(g^{-1} k)) over K = SO(n), with tensor-product
quadrature: trapezoid in the periodic Euler angles, Gauss-Legendre in
cos(beta) for SO(3).

Cartan coordinates: elements of a are passed around as length-n vectors of
diagonal entries (trace zero); spectral parameters as complex vectors in
the stored orthonormal coordinates of the root system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .descriptors import GroupDescriptor
from .regions import in_conv_weyl_rho, in_neg_dual_cone_closure
from .rootsystem import RootSystem, build_root_system

__all__ = [
    "SphericalConfig",
    "SphericalValue",
    "QuadratureNotConverged",
    "SingularMatrix",
    "iwasawa_H",
    "spherical_phi",
    "phi_on_grid",
    "boundedness_probe",
    "psd_gram_test",
    "pointwise_bound_check",
    "lp_norm_truncated",
    "lp_divergence_verdict",
    "lp_membership_predict",
]


class QuadratureNotConverged(RuntimeError):
    pass


class SingularMatrix(ValueError):
    pass


@dataclass
class SphericalConfig:
    group: GroupDescriptor
    quadrature_order: int = 64
    cartan_radius: float = 20.0
    cartan_grid: int = 400

    def __post_init__(self):
        if self.group.family != "SLnR" or self.group.param not in (2, 3):
            raise ValueError("spherical numerics support SL(2,R) and SL(3,R) only")
        if self.quadrature_order < 8:
            raise ValueError("quadrature_order must be >= 8")
        if self.cartan_radius <= 0:
            raise ValueError("cartan_radius must be > 0")
        if self.cartan_grid < 16:
            raise ValueError("cartan_grid must be >= 16")

    @property
    def n(self) -> int:
        return self.group.param

    def root_system(self) -> RootSystem:
        return build_root_system(self.group)


@dataclass(frozen=True)
class SphericalValue:
    value: complex
    est_error: float


# -- Iwasawa decomposition ------------------------------------------------


def iwasawa_H(g: np.ndarray) -> np.ndarray:
    """log of the A-component of g = k a n (k special orthogonal, a
    positive diagonal, n unit upper triangular).  Returns the diagonal of
    log a."""
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError("square matrix required")
    det = np.linalg.det(g)
    if abs(det) < 1e-12:
        raise SingularMatrix("matrix is singular")
    if abs(det - 1.0) > 1e-8:
        raise ValueError(f"determinant {det} not within 1e-8 of 1")
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    q = q * signs
    r = signs[:, None] * r
    return np.log(np.diag(r))


def iwasawa_kan(g: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full decomposition (k, a, n) with g = k @ a @ n, for reconstruction
    checks."""
    h = iwasawa_H(g)
    q, r = np.linalg.qr(np.asarray(g, dtype=float))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    q = q * signs
    r = signs[:, None] * r
    a = np.diag(np.exp(h))
    nmat = np.diag(np.exp(-h)) @ r
    return q, a, nmat


# -- K-quadrature nodes ---------------------------------------------------


@lru_cache(maxsize=32)
def _so3_nodes(q: int):
    """First two columns of the SO(3) Euler-angle sample rotations plus
    normalized Haar weights, flattened to (q^3, 3) arrays."""
    ang = 2.0 * np.pi * np.arange(q) / q
    x, wgl = np.polynomial.legendre.leggauss(q)  # x = cos(beta)
    ca, sa = np.cos(ang), np.sin(ang)
    cg, sg = np.cos(ang), np.sin(ang)
    cb = x
    sb = np.sqrt(1.0 - x * x)

    A, B, G = np.ix_(np.arange(q), np.arange(q), np.arange(q))
    # k = Rz(alpha) Ry(beta) Rz(gamma); columns of k
    c1 = np.empty((q, q, q, 3))
    c2 = np.empty((q, q, q, 3))
    c1[..., 0] = ca[A] * cb[B] * cg[G] - sa[A] * sg[G]
    c1[..., 1] = sa[A] * cb[B] * cg[G] + ca[A] * sg[G]
    c1[..., 2] = -sb[B] * cg[G]
    c2[..., 0] = -ca[A] * cb[B] * sg[G] - sa[A] * cg[G]
    c2[..., 1] = -sa[A] * cb[B] * sg[G] + ca[A] * cg[G]
    c2[..., 2] = sb[B] * sg[G]
    w = np.broadcast_to(wgl[None, :, None], (q, q, q)) / (2.0 * q * q)
    return c1.reshape(-1, 3), c2.reshape(-1, 3), w.reshape(-1)


def _softplus(x: np.ndarray) -> np.ndarray:
    """log(1 + e^x) without overflow."""
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))


# -- the spherical integral -----------------------------------------------


def _phi_raw(rs: RootSystem, lam_stored, h: np.ndarray, q: int) -> complex:
    """Quadrature value of phi_lambda(exp(diag h)) at order q."""
    n = rs.eps_dim
    eps = rs.stored_to_eps(np.asarray(lam_stored, dtype=complex) + rs.rho)
    scale = np.exp(-np.asarray(h, dtype=float))
    if n == 2:
        # SO(2) integral after the substitution t = log tan(theta):
        #   phi = (1/pi) Int g(t)^{-s/2} sech(t) dt,
        #   g(t) = |a^{-1} k e_1|^2 = e^{-2u} (1 + e^{2t+4u}) / (1 + e^{2t}),
        # which is uniformly resolved in u (the naive angular trapezoid
        # needs O(e^{2u}) nodes to see the peak of width e^{-2u}).
        u = 0.5 * float(h[0] - h[1])
        s = eps[0] - eps[1]
        # the integrand decays like sech(t) outside [-2u, 0]; the margin
        # grows with |Re s| so the truncated tails stay below ~1e-11
        margin = 26.0 + u * max(0.0, abs(s.real) - 2.0)
        lo, hi = -2.0 * u - margin, margin
        # q counts nodes per 16-unit segment so accuracy is uniform in u
        nq = q * int(np.ceil((hi - lo) / 16.0))
        step = (hi - lo) / nq
        t = lo + (np.arange(nq) + 0.5) * step
        log_g = -2.0 * u + _softplus(2.0 * t + 4.0 * u) - _softplus(2.0 * t)
        vals = np.exp(-0.5 * s * log_g) / np.cosh(t)
        return complex(np.sum(vals) * step / np.pi)
    else:
        c1, c2, w = _so3_nodes(q)
        v1 = scale * c1
        v2 = scale * c2
        cr = np.cross(v1, v2)
        logr1 = 0.5 * np.log(np.einsum("ij,ij->i", v1, v1))
        logr12 = 0.5 * np.log(np.einsum("ij,ij->i", cr, cr))
        # H = (logr1, logr12 - logr1, -logr12) since det = 1
        expo = -(
            eps[0] * logr1 + eps[1] * (logr12 - logr1) - eps[2] * logr12
        )
    return complex(np.sum(w * np.exp(expo)))


def _dominant_h(h) -> np.ndarray:
    """Chamber representative of a Cartan vector: sorted decreasing."""
    h = np.asarray(h, dtype=float)
    return np.sort(h)[::-1].copy()


def spherical_phi(cfg: SphericalConfig, lam_stored, h) -> SphericalValue:
    """phi_lambda at exp(diag h).  h is dominantized (sorted) first; the
    error estimate compares quadrature orders q and q/2."""
    rs = cfg.root_system()
    h = _dominant_h(h)
    if abs(np.sum(h)) > 1e-10:
        raise ValueError("Cartan vector must be trace-free")
    q = cfg.quadrature_order
    val = _phi_raw(rs, lam_stored, h, q)
    val_half = _phi_raw(rs, lam_stored, h, max(q // 2, 4))
    err = abs(val - val_half)
    if err > 1e-4 * (1.0 + abs(val)):
        raise QuadratureNotConverged(
            f"estimated error {err:.3e} at |value| {abs(val):.3e}"
        )
    return SphericalValue(val, err)


def phi_on_grid(cfg: SphericalConfig, lam_stored, hs: Sequence[np.ndarray]):
    """Convenience loop over several Cartan vectors."""
    return [spherical_phi(cfg, lam_stored, h) for h in hs]


# -- Cartan-coordinate helpers -------------------------------------------


def unit_ray(cfg: SphericalConfig, direction: Optional[np.ndarray] = None) -> np.ndarray:
    """A Killing-unit Cartan vector in the open chamber.  The Killing norm
    of diag h is sqrt(2n * sum h_i^2)."""
    n = cfg.n
    if direction is None:
        h = np.arange(n, 0, -1, dtype=float)
        h -= h.mean()
    else:
        h = _dominant_h(direction)
    return h / np.sqrt(2.0 * n * np.sum(h * h))


def rho_of_h(rs: RootSystem, h) -> float:
    return float(rs.stored_to_eps(rs.rho) @ np.asarray(h, dtype=float))


# -- boundedness and positivity ------------------------------------------


@dataclass(frozen=True)
class BoundednessVerdict:
    bounded: bool
    witness_h: Optional[np.ndarray] = None
    max_abs: float = 0.0

    def __bool__(self) -> bool:  # truthy = bounded on probe
        return self.bounded


def boundedness_probe(
    cfg: SphericalConfig, lam_stored, n_rays: int = 3, n_steps: int = 24
) -> BoundednessVerdict:
    """Sweep |phi_lambda| along chamber rays out to the Cartan radius.
    Reports unbounded if the sweep exceeds 1 + 1e-6 and is still increasing
    over its last decade."""
    rs = cfg.root_system()
    n = cfg.n
    rays = []
    if n == 2:
        rays = [unit_ray(cfg)]
    else:
        base = [np.array([2.0, -1.0, -1.0]), np.array([1.0, 0.0, -1.0]),
                np.array([1.0, 1.0, -2.0])]
        rays = [unit_ray(cfg, b) for b in base[:n_rays]]
    ts = np.linspace(cfg.cartan_radius / n_steps, cfg.cartan_radius, n_steps)
    worst = 0.0
    for ray in rays:
        vals = np.array(
            [abs(_phi_raw(rs, lam_stored, _dominant_h(t * ray), cfg.quadrature_order))
             for t in ts]
        )
        worst = max(worst, float(vals.max()))
        if vals.max() > 1.0 + 1e-6:
            tail = vals[int(0.9 * n_steps) - 1:]
            if np.all(np.diff(tail) > 0):
                return BoundednessVerdict(False, ts[-1] * ray, float(vals.max()))
    return BoundednessVerdict(True, None, worst)


@dataclass(frozen=True)
class PsdVerdict:
    consistent: bool
    min_eigenvalue: Optional[float] = None
    unbounded_witness: Optional[np.ndarray] = None

    def __bool__(self) -> bool:
        return self.consistent


def psd_gram_test(
    cfg: SphericalConfig,
    lam_stored,
    points: Sequence[np.ndarray],
    tol: float = 1e-8,
) -> PsdVerdict:
    """Gram-matrix positivity probe at group elements exp(diag h_i).
    NotPSD when the Hermitian Gram has an eigenvalue below -tol * ||M||,
    or when the boundedness probe already witnesses growth beyond phi(e)."""
    probe = boundedness_probe(cfg, lam_stored)
    if not probe.bounded:
        return PsdVerdict(False, None, probe.witness_h)
    rs = cfg.root_system()
    pts = [np.asarray(p, dtype=float) for p in points]
    m = len(pts)
    M = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            M[i, j] = _phi_raw(
                rs, lam_stored, _dominant_h(pts[j] - pts[i]), cfg.quadrature_order
            )
    H = 0.5 * (M + M.conj().T)
    evals = np.linalg.eigvalsh(H)
    norm = max(np.linalg.norm(H, 2), 1.0)
    ok = evals.min() >= -tol * norm
    return PsdVerdict(ok, float(evals.min()), None)


@dataclass(frozen=True)
class PointwiseBoundReport:
    fitted_constant: float
    max_ratio: float
    slope: float
    violation: bool


def pointwise_bound_check(
    cfg: SphericalConfig, lam_stored, h_samples: Sequence[np.ndarray]
) -> PointwiseBoundReport:
    """Check |phi_lambda| against the exponential-polynomial envelope
    exp((Re lam - rho)(H)) (1 + rho(H))^d with d = |W| as a heuristic
    degree cap.  Requires Re lam dominant and Re lam in rho - R_{>=0}Pi."""
    rs = cfg.root_system()
    lam = np.asarray(lam_stored, dtype=complex)
    re = lam.real
    if np.any(rs.simple_roots @ re < -1e-10):
        raise ValueError("Re lambda must be dominant")
    ok, _ = in_neg_dual_cone_closure(rs, re - rs.rho, 1e-10)
    if not ok:
        raise ValueError("Re lambda must lie in rho - R_{>=0}Pi")
    d = math.factorial(cfg.n)  # |W| for SL(n,R)
    eps_shift = rs.stored_to_eps(re - rs.rho)
    ratios, xs = [], []
    for h in h_samples:
        h = _dominant_h(h)
        val = abs(_phi_raw(rs, lam, h, cfg.quadrature_order))
        envelope = np.exp(float(eps_shift @ h)) * (1.0 + rho_of_h(rs, h)) ** d
        ratios.append(val / envelope)
        xs.append(np.log(1.0 + rho_of_h(rs, h)))
    ratios = np.array(ratios)
    xs = np.array(xs)
    if len(xs) >= 2 and np.ptp(xs) > 0:
        slope = float(np.polyfit(xs, np.log(np.maximum(ratios, 1e-300)), 1)[0])
    else:
        slope = 0.0
    return PointwiseBoundReport(
        fitted_constant=float(ratios.max()),
        max_ratio=float(ratios.max()),
        slope=slope,
        violation=slope > d + 0.5,
    )


# -- truncated L^p integrals ----------------------------------------------


def lp_norm_truncated(cfg: SphericalConfig, lam_stored, p: float, R: float) -> float:
    """Grid quadrature of |phi_lambda(exp H)|^p * prod sinh(alpha(H))^m
    over the chamber ball of Killing radius R."""
    if p <= 0 or R <= 0:
        raise ValueError("p and R must be positive")
    rs = cfg.root_system()
    n = cfg.n
    g = cfg.cartan_grid
    if n == 2:
        # H(u) = diag(u, -u), alpha(H) = 2u, Killing norm 2*sqrt(2)*u
        umax = R / (2.0 * np.sqrt(2.0))
        us = (np.arange(g) + 0.5) * umax / g
        du = umax / g
        total = 0.0
        for u in us:
            val = abs(_phi_raw(rs, lam_stored, np.array([u, -u]), cfg.quadrature_order))
            total += val**p * np.sinh(2.0 * u) * (2.0 * np.sqrt(2.0) * du)
        return float(total)
    # SL(3,R): simple-root coordinates x_i = alpha_i(H) > 0
    T = np.array([[2.0, -1.0, -1.0], [1.0, 1.0, -2.0]]).T / 3.0  # h = T @ x
    K = 6.0 * T.T @ T  # Killing Gram of the coordinate frame (2n tr(H H'))
    jac = float(np.sqrt(np.linalg.det(K)))
    xmax = R / np.sqrt(np.min(np.linalg.eigvalsh(K)))
    xs = (np.arange(g) + 0.5) * xmax / g
    dx = xmax / g
    total = 0.0
    for x1 in xs:
        for x2 in xs:
            h = T @ np.array([x1, x2])
            if 6.0 * np.sum(h * h) > R * R:
                continue
            val = abs(_phi_raw(rs, lam_stored, h, cfg.quadrature_order))
            dens = np.sinh(x1) * np.sinh(x2) * np.sinh(x1 + x2)
            total += val**p * dens * jac * dx * dx
    return float(total)


def lp_divergence_verdict(
    cfg: SphericalConfig,
    lam_stored,
    p: float,
    radii: tuple[float, float] = (10.0, 20.0),
) -> str:
    """Two-radius classifier: "Convergent" if the relative change between
    the truncated integrals is < 1e-4, "Divergent" if the ratio is >= 1.2,
    else "Inconclusive"."""
    r1, r2 = radii
    if not r2 > r1 > 0:
        raise ValueError("need 0 < R1 < R2")
    i1 = lp_norm_truncated(cfg, lam_stored, p, r1)
    i2 = lp_norm_truncated(cfg, lam_stored, p, r2)
    if i1 <= 0:
        return "Inconclusive"
    ratio = i2 / i1
    if ratio - 1.0 < 1e-4:
        return "Convergent"
    if ratio >= 1.2:
        return "Divergent"
    return "Inconclusive"


def lp_membership_predict(rs: RootSystem, lam_stored, p: float) -> bool:
    """Analytic integrability predicate: Re lambda in (1 - 2/p) conv(W rho)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    re = np.asarray(lam_stored, dtype=complex).real
    return in_conv_weyl_rho(rs, re, 1.0 - 2.0 / p)
