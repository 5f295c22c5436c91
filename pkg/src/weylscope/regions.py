"""Membership tests for the spectral region sets and candidate classification.

All sets live in a* (real) or a*_C (complex), in the stored orthonormal
coordinates of a RootSystem.  Conventions: open cones are tested strictly
(> tol), closures with >= -tol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .descriptors import GroupDescriptor
from .rootsystem import (
    DEFAULT_CAP,
    RootSystem,
    WeylElement,
    build_root_system,
    dominantize,
    longest_element,
    weyl_enumerate,
    weyl_orbit,
)

__all__ = [
    "DEFAULT_TOL",
    "Verdict",
    "Classification",
    "GroupFacts",
    "PK",
    "NoQuantitativeGap",
    "in_neg_dual_cone_closure",
    "in_dominant_closure",
    "in_conv_weyl_rho",
    "in_exceptional_A",
    "in_set_B",
    "in_first_band_cone_F",
    "first_band_region_alt",
    "p_k",
    "group_facts",
    "quantum_obstruction",
    "classify_candidate",
    "gap_certificate",
]

DEFAULT_TOL = 1e-9

ENUM_RANK_LIMIT = 4  # full W enumeration for the B-search is refused beyond this


class NoQuantitativeGap(RuntimeError):
    """No quantitative gap hull is available (p_K is not finite)."""


class Verdict(Enum):
    EXCLUDED_BY_CONE = "ExcludedByCone"
    MUST_BE_FIRST_BAND_AND_EXCLUDED_BY_QUANTUM = "MustBeFirstBandAndExcludedByQuantum"
    POSSIBLE_FIRST_BAND = "PossibleFirstBand"
    POSSIBLE_HIGHER_BAND_ONLY = "PossibleHigherBandOnly"
    EXCEPTIONAL_UNKNOWN = "ExceptionalUnknown"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    tested_lambda: np.ndarray
    cone_witness: Optional[int] = None          # index of violated simple coefficient
    exceptional_witness: Optional[tuple[np.ndarray, int]] = None
    b_witness: Optional[WeylElement] = None
    quantum_passed: Optional[bool] = None
    in_F: Optional[bool] = None


@dataclass(frozen=True)
class PK:
    """Integrability exponent catalog entry.  value may be math.inf;
    exact=False marks an upper bound or unknown value."""

    value: float
    exact: bool
    note: str = ""

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


@dataclass(frozen=True)
class GroupFacts:
    p_K: PK
    has_property_T: bool
    dim_GK: int


# -- cone and hull memberships -------------------------------------------


def in_neg_dual_cone_closure(rs: RootSystem, v, tol: float = DEFAULT_TOL):
    """v in -R_{>=0}Pi?  Returns (bool, simple-root coefficients)."""
    c = rs.simple_coords(np.asarray(v, dtype=float))
    return bool(np.all(c <= tol)), c


def in_pos_dual_cone(rs: RootSystem, v, tol: float = DEFAULT_TOL) -> bool:
    """Open dual cone: all simple-root coefficients strictly positive."""
    c = rs.simple_coords(np.asarray(v, dtype=float))
    return bool(np.all(c > tol))


def in_dominant_closure(rs: RootSystem, v, tol: float = DEFAULT_TOL) -> bool:
    """Closed Weyl chamber in a*: <v, alpha_i> >= -tol for all simple i."""
    v = np.asarray(v, dtype=float)
    return bool(np.all(rs.simple_roots @ v >= -tol))


def in_conv_weyl_rho(
    rs: RootSystem, v, scale: float = 1.0, tol: float = DEFAULT_TOL
) -> bool:
    """v in scale*conv(W rho)?  Dominantize, then check the dominant
    representative against scale*rho - R_{>=0}Pi."""
    if scale < 0:
        raise ValueError("scale must be >= 0")
    v_dom, _ = dominantize(rs, np.asarray(v, dtype=float))
    ok, _ = in_neg_dual_cone_closure(rs, v_dom - scale * rs.rho, tol)
    return ok


def in_exceptional_A(
    rs: RootSystem, lam, tol: float = DEFAULT_TOL
) -> Optional[tuple[np.ndarray, int]]:
    """Witness (alpha, k) if 2<lam+rho, alpha>/<alpha,alpha> is within tol
    of a negative integer -k, else None."""
    lam = np.asarray(lam, dtype=complex)
    mu = lam + rs.rho
    for a in rs.positive_roots:
        z = 2.0 * np.sum(mu * a) / np.dot(a, a)
        if abs(z.imag) > tol:
            continue
        k = int(round(-z.real))
        if k >= 1 and abs(z.real + k) <= tol:
            return a.copy(), k
    return None


def in_set_B(
    rs: RootSystem, lam, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP
) -> Optional[WeylElement]:
    """Witness w with w(lam) = -conj(lam), i.e. w(Re) = -Re and
    w(Im) = Im.  The identity and the longest element are tried first
    (they witness the common cases lam imaginary / lam real self-dual);
    otherwise the full Weyl group is enumerated, which is refused above
    rank ENUM_RANK_LIMIT."""
    lam = np.asarray(lam, dtype=complex)
    re, im = lam.real, lam.imag
    scale = 1.0 + np.linalg.norm(lam)

    def matches(w: WeylElement) -> bool:
        return bool(
            np.linalg.norm(w.matrix @ re + re) < tol * scale
            and np.linalg.norm(w.matrix @ im - im) < tol * scale
        )

    identity = WeylElement(np.eye(rs.ambient_dim), ())
    for w in (identity, longest_element(rs)):
        if matches(w):
            return w
    if rs.rank > ENUM_RANK_LIMIT:
        from .rootsystem import CapExceeded

        raise CapExceeded(f"set-B search limited to rank <= {ENUM_RANK_LIMIT}")
    for w in weyl_enumerate(rs, cap):
        if (
            np.linalg.norm(w.matrix @ re + re) < tol * scale
            and np.linalg.norm(w.matrix @ im - im) < tol * scale
        ):
            return w
    return None


def in_first_band_cone_F(rs: RootSystem, v, tol: float = DEFAULT_TOL) -> bool:
    """The forced-first-band set: v + alpha escapes -R_{>=0}Pi for every
    simple alpha."""
    c = rs.simple_coords(np.asarray(v, dtype=float))
    for i in range(rs.rank):
        shifted = c.copy()
        shifted[i] += 1.0
        if np.all(shifted <= tol):
            return False
    return True


def first_band_region_alt(rs: RootSystem, v, tol: float = DEFAULT_TOL) -> bool:
    """Equivalent form of the forced-first-band region intersected with the
    negative dual cone: v in -R_{>=0}Pi and v + sum(Pi) in the open dual
    cone."""
    v = np.asarray(v, dtype=float)
    ok_neg, _ = in_neg_dual_cone_closure(rs, v, tol)
    lam0 = rs.simple_roots.sum(axis=0)
    return ok_neg and in_pos_dual_cone(rs, v + lam0, tol)


# -- integrability exponent catalog ---------------------------------------


def p_k(desc: GroupDescriptor) -> PK:
    """Catalog of the K-finite matrix coefficient integrability exponent.
    Exact where known; +inf for groups without Property (T); flagged
    non-exact where only a bound (or nothing) is known."""
    fam, n = desc.family, desc.param
    if fam in ("SLnR", "SLnC"):
        if n >= 3:
            return PK(2.0 * (n - 1), True)
        return PK(math.inf, True, "no Property (T)")
    if fam == "Sp2nR":
        return PK(2.0 * n, True)
    if fam in ("SOn1", "SUn1"):
        return PK(math.inf, True, "no Property (T)")
    if fam == "Spn1":
        return PK(2.0 * n + 1.0, False, "upper bound from the rank-one spherical dual")
    # split types
    ct, r = desc.cartan_type, n
    if ct == "A":
        if r >= 2:
            return PK(2.0 * r, True)
        return PK(math.inf, True, "no Property (T)")
    if ct == "C" and r >= 2:
        return PK(2.0 * r, True)
    return PK(math.inf, False, "Property (T) holds but no catalog value")


def has_property_T(desc: GroupDescriptor) -> bool:
    fam, n = desc.family, desc.param
    if fam in ("SLnR", "SLnC"):
        return n >= 3
    if fam == "Sp2nR":
        return True
    if fam in ("SOn1", "SUn1"):
        return False
    if fam == "Spn1":
        return True
    return desc.rank >= 2


def group_facts(desc: GroupDescriptor, rs: Optional[RootSystem] = None) -> GroupFacts:
    if rs is None:
        rs = build_root_system(desc)
    d = rs.rank + int(rs.multiplicities.sum())
    return GroupFacts(p_k(desc), has_property_T(desc), d)


# -- quantum obstruction and classification -------------------------------


@dataclass(frozen=True)
class QuantumObstruction:
    in_B: Optional[WeylElement]
    re_in_conv: bool
    orthogonal: bool
    norm_ok: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.in_B is not None and self.re_in_conv and self.orthogonal and self.norm_ok
        )


def quantum_obstruction(
    rs: RootSystem, lam, tol: float = DEFAULT_TOL
) -> QuantumObstruction:
    """The four necessary conditions for membership in the quantum joint
    spectrum: self-duality under W, Re in conv(W rho), Re perpendicular to
    Im, and |Re| <= |rho|."""
    lam = np.asarray(lam, dtype=complex)
    re, im = lam.real, lam.imag
    return QuantumObstruction(
        in_B=in_set_B(rs, lam, tol),
        re_in_conv=in_conv_weyl_rho(rs, re, 1.0, tol),
        orthogonal=abs(np.dot(re, im)) < tol * (1.0 + np.sum(np.abs(lam) ** 2)),
        norm_ok=np.linalg.norm(re) <= np.linalg.norm(rs.rho) + tol,
    )


def _quantum_test(rs: RootSystem, facts: GroupFacts, lam, tol):
    """Q(lam): lam+rho self-dual under W and Re(lam+rho) in the scaled hull
    or on the W rho orbit.  Returns (passed, b_witness)."""
    mu = np.asarray(lam, dtype=complex) + rs.rho
    bw = in_set_B(rs, mu, tol)
    if bw is None:
        return False, None
    scale = 1.0 - 2.0 / facts.p_K.value if facts.p_K.finite else 1.0
    re = mu.real
    if in_conv_weyl_rho(rs, re, scale, tol):
        return True, bw
    orbit_dist = min(np.linalg.norm(re - p) for p in weyl_orbit(rs, rs.rho))
    return orbit_dist < tol, bw


def classify_candidate(
    desc: GroupDescriptor, lam, tol: float = DEFAULT_TOL
) -> Classification:
    """Decision tree for a candidate resonance parameter."""
    rs = build_root_system(desc)
    facts = group_facts(desc, rs)
    lam = np.asarray(lam, dtype=complex)

    ok, coeffs = in_neg_dual_cone_closure(rs, lam.real, tol)
    if not ok:
        return Classification(
            Verdict.EXCLUDED_BY_CONE,
            lam,
            cone_witness=int(np.argmax(coeffs)),
        )

    wit = in_exceptional_A(rs, lam, tol)
    if wit is not None:
        return Classification(Verdict.EXCEPTIONAL_UNKNOWN, lam, exceptional_witness=wit)

    q_ok, bw = _quantum_test(rs, facts, lam, tol)
    f_ok = in_first_band_cone_F(rs, lam.real, tol)

    if q_ok:
        verdict = Verdict.POSSIBLE_FIRST_BAND
    elif f_ok:
        verdict = Verdict.MUST_BE_FIRST_BAND_AND_EXCLUDED_BY_QUANTUM
    else:
        verdict = Verdict.POSSIBLE_HIGHER_BAND_ONLY
    return Classification(
        verdict, lam, b_witness=bw, quantum_passed=q_ok, in_F=f_ok
    )


def gap_certificate(desc: GroupDescriptor, lam, tol: float = DEFAULT_TOL) -> bool:
    """True iff lam is certified non-resonant by the uniform-gap argument:
    nonzero, real part in the forced-first-band slab, and the quantum test
    with the (1 - 2/p_K)-scaled hull fails."""
    rs = build_root_system(desc)
    facts = group_facts(desc, rs)
    if not facts.p_K.finite:
        raise NoQuantitativeGap(f"p_K({desc}) is not finite")
    lam = np.asarray(lam, dtype=complex)
    if np.linalg.norm(lam) <= tol:
        return False
    re = lam.real
    ok_neg, _ = in_neg_dual_cone_closure(rs, re, tol)
    if not (ok_neg and in_first_band_cone_F(rs, re, tol)):
        return False
    q_ok, _ = _quantum_test(rs, facts, lam, tol)
    return not q_ok
