"""Restricted root systems with multiplicities, and Weyl group machinery.

Coordinates: every covector lives in R^rank, expressed in a basis that is
orthonormal for the inner product on a* induced by the Killing form.  The
Killing form on a is realized as <H,H'> = sum_{alpha in Sigma} m_alpha
alpha(H) alpha(H'); the form on a* is its inverse.  With this convention
``killing_pairing`` is the plain dot product of stored coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .descriptors import GroupDescriptor, UnsupportedDescriptor

__all__ = [
    "RootSystem",
    "WeylElement",
    "CapExceeded",
    "build_root_system",
    "killing_pairing",
    "simple_reflection",
    "dominantize",
    "longest_element",
    "w0_invariants",
    "weyl_enumerate",
    "weyl_orbit",
]

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """Weyl group closure grew past the requested cap."""


@dataclass(frozen=True)
class WeylElement:
    """Orthogonal map of a* together with a word in simple reflections.

    The matrix equals the product s_{word[0]} s_{word[1]} ... of simple
    reflections (0-based indices) applied left to right.
    """

    matrix: np.ndarray
    word: tuple[int, ...]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix, self.word + other.word)


@dataclass(frozen=True)
class RootSystem:
    """Restricted root data of a group descriptor, in Killing-orthonormal
    coordinates on a*."""

    desc: GroupDescriptor
    rank: int
    ambient_dim: int
    simple_roots: np.ndarray          # (rank, rank), rows
    positive_roots: np.ndarray        # (k, rank), rows
    multiplicities: np.ndarray        # (k,)
    rho: np.ndarray
    gram: np.ndarray                  # <alpha_i, alpha_j>
    coweights: np.ndarray             # (rank, rank), rows; <alpha_i, w_j> = delta_ij
    # conversion data between epsilon coordinates of the catalog realization
    # and stored coordinates (vectors in span(Sigma) only)
    eps_dim: int
    _span_basis: np.ndarray = field(repr=False)     # (rank, eps_dim), orthonormal rows
    _metric_sqrt: np.ndarray = field(repr=False)     # K^{1/2} on span coords
    _metric_invsqrt: np.ndarray = field(repr=False)  # K^{-1/2}

    # -- coordinate views -------------------------------------------------

    def simple_coords(self, v: np.ndarray) -> np.ndarray:
        """Coefficients c with v = sum_i c_i alpha_i."""
        v = np.asarray(v)
        if v.shape[-1] != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return np.linalg.solve(self.simple_roots.T, v.T).T

    def from_simple_coords(self, c) -> np.ndarray:
        c = np.asarray(c)
        if c.shape[-1] != self.rank:
            raise ValueError("dimension mismatch")
        return c @ self.simple_roots

    def eps_to_stored(self, v_eps) -> np.ndarray:
        """Stored coordinates of a covector given in the catalog's epsilon
        coordinates (must lie in span(Sigma))."""
        v_eps = np.asarray(v_eps)
        return self._metric_invsqrt @ (self._span_basis @ v_eps)

    def stored_to_eps(self, v) -> np.ndarray:
        v = np.asarray(v)
        return self._span_basis.T @ (self._metric_sqrt @ v)

    def reduced_positive_roots(self) -> tuple[np.ndarray, np.ndarray]:
        """Positive roots alpha with alpha/2 not a root (drops the 2*alpha
        entries of BC systems), with their multiplicities."""
        keep = []
        for i, a in enumerate(self.positive_roots):
            half = a / 2.0
            is_double = any(
                np.allclose(half, b, atol=1e-10) for b in self.positive_roots
            )
            if not is_double:
                keep.append(i)
        return self.positive_roots[keep], self.multiplicities[keep]


# -- catalog data ---------------------------------------------------------


def _simple_roots_eps(ct: str, n: int) -> np.ndarray:
    """Simple roots of the split type in standard epsilon coordinates."""
    if ct == "A":
        S = np.zeros((n, n + 1))
        for i in range(n):
            S[i, i], S[i, i + 1] = 1.0, -1.0
        return S
    if ct in ("B", "C", "D"):
        S = np.zeros((n, n))
        for i in range(n - 1):
            S[i, i], S[i, i + 1] = 1.0, -1.0
        if ct == "B":
            S[n - 1, n - 1] = 1.0
        elif ct == "C":
            S[n - 1, n - 1] = 2.0
        else:
            S[n - 1, n - 2], S[n - 1, n - 1] = 1.0, 1.0
        return S
    if ct == "G2":
        return np.array([[1.0, 0.0], [-1.5, np.sqrt(3.0) / 2.0]])
    if ct == "F4":
        return np.array(
            [
                [0, 1, -1, 0],
                [0, 0, 1, -1],
                [0, 0, 0, 1],
                [0.5, -0.5, -0.5, -0.5],
            ],
            dtype=float,
        )
    if ct in ("E6", "E7", "E8"):
        m = int(ct[1])
        S = np.zeros((8, 8))
        S[0] = [0.5, -0.5, -0.5, -0.5, -0.5, -0.5, -0.5, 0.5]
        S[1, 0], S[1, 1] = 1.0, 1.0
        for i in range(2, 8):
            S[i, i - 2], S[i, i - 1] = -1.0, 1.0
        return S[:m]
    raise UnsupportedDescriptor(f"unknown Cartan type {ct!r}")


def _generate_roots(simple_eps: np.ndarray) -> np.ndarray:
    """All roots of a reduced system as the closure of the simple roots
    under simple reflections (epsilon coordinates)."""
    norms2 = np.einsum("ij,ij->i", simple_eps, simple_eps)
    seen: dict[bytes, np.ndarray] = {}

    def key(v):
        return (np.round(v, 9) + 0.0).tobytes()

    frontier = [r.copy() for r in simple_eps] + [-r for r in simple_eps]
    for v in frontier:
        seen[key(v)] = v
    while frontier:
        nxt = []
        for v in frontier:
            for a, n2 in zip(simple_eps, norms2):
                w = v - (2.0 * np.dot(v, a) / n2) * a
                k = key(w)
                if k not in seen:
                    seen[k] = w
                    nxt.append(w)
        frontier = nxt
    return np.array(list(seen.values()))


def _family_root_data(desc: GroupDescriptor):
    """Simple roots (eps coords) plus positive roots with multiplicities."""
    fam, n = desc.family, desc.param
    if fam in ("SLnR", "SLnC"):
        simple = _simple_roots_eps("A", n - 1)
        mult = 1 if fam == "SLnR" else 2
        pos = [(e_i_minus_e_j(n, i, j), mult) for i in range(n) for j in range(i + 1, n)]
        return simple, pos
    if fam == "Sp2nR":
        simple = _simple_roots_eps("C", n)
        return simple, _positive_from_closure(simple, lambda a: 1)
    if fam == "SOn1":
        simple = np.array([[1.0]])
        return simple, [(np.array([1.0]), n - 1)]
    if fam == "SUn1":
        simple = np.array([[1.0]])
        return simple, [(np.array([1.0]), 2 * (n - 1)), (np.array([2.0]), 1)]
    if fam == "Spn1":
        simple = np.array([[1.0]])
        return simple, [(np.array([1.0]), 4 * (n - 1)), (np.array([2.0]), 3)]
    if fam == "split":
        simple = _simple_roots_eps(desc.cartan_type, n)
        return simple, _positive_from_closure(simple, lambda a: 1)
    raise UnsupportedDescriptor(f"unknown family {fam!r}")


def e_i_minus_e_j(n: int, i: int, j: int) -> np.ndarray:
    v = np.zeros(n)
    v[i], v[j] = 1.0, -1.0
    return v


def _positive_from_closure(simple_eps, mult_of):
    roots = _generate_roots(simple_eps)
    coeffs, *_ = np.linalg.lstsq(simple_eps.T, roots.T, rcond=None)
    pos = []
    for r, c in zip(roots, coeffs.T):
        if np.all(c >= -1e-9) and np.linalg.norm(c) > 1e-9:
            pos.append((r, mult_of(r)))
    return pos


def build_root_system(desc: GroupDescriptor) -> RootSystem:
    """Construct the restricted root system with multiplicities for a
    catalog descriptor."""
    simple_eps, pos_data = _family_root_data(desc)
    rank = simple_eps.shape[0]
    eps_dim = simple_eps.shape[1]
    pos_eps = np.array([p[0] for p in pos_data])
    mults = np.array([p[1] for p in pos_data], dtype=int)

    # orthonormal basis of span(Sigma) in epsilon coordinates
    _, s, vt = np.linalg.svd(simple_eps, full_matrices=False)
    if np.min(s) < 1e-10:
        raise UnsupportedDescriptor("degenerate simple system")
    span = vt  # (rank, eps_dim)

    a_simple = simple_eps @ span.T       # span coordinates
    a_pos = pos_eps @ span.T

    # Killing form on a in span coordinates: sum over the full root set
    K = 2.0 * (a_pos.T * mults) @ a_pos
    evals, evecs = np.linalg.eigh(K)
    K_sqrt = (evecs * np.sqrt(evals)) @ evecs.T
    K_invsqrt = (evecs / np.sqrt(evals)) @ evecs.T

    simple = a_simple @ K_invsqrt.T
    pos = a_pos @ K_invsqrt.T
    rho = 0.5 * (mults @ pos)
    gram = simple @ simple.T
    coweights = np.linalg.solve(gram, simple)

    return RootSystem(
        desc=desc,
        rank=rank,
        ambient_dim=rank,
        simple_roots=simple,
        positive_roots=pos,
        multiplicities=mults,
        rho=rho,
        gram=gram,
        coweights=coweights,
        eps_dim=eps_dim,
        _span_basis=span,
        _metric_sqrt=K_sqrt,
        _metric_invsqrt=K_invsqrt,
    )


# -- operations -----------------------------------------------------------


def killing_pairing(rs: RootSystem, v, w):
    """Killing-induced inner product on a*, bilinear (no conjugation)."""
    v = np.asarray(v)
    w = np.asarray(w)
    if v.shape[-1] != rs.ambient_dim or w.shape[-1] != rs.ambient_dim:
        raise ValueError("dimension mismatch")
    return np.sum(v * w, axis=-1)


def rho(rs: RootSystem) -> np.ndarray:
    return rs.rho.copy()


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """Reflection in the i-th simple root (0-based index)."""
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple root index {i} out of range")
    a = rs.simple_roots[i]
    M = np.eye(rs.ambient_dim) - 2.0 * np.outer(a, a) / np.dot(a, a)
    return WeylElement(M, (i,))


def dominantize(
    rs: RootSystem, v: np.ndarray, tol: float = 1e-12
) -> tuple[np.ndarray, WeylElement]:
    """Weyl-chamber representative: returns (v_dom, w) with v_dom = w(v)
    and <v_dom, alpha_i> >= -tol for every simple root.  Pairings in
    (-tol, 0) are treated as zero (no reflection on walls)."""
    v = np.array(v, dtype=v.dtype if np.iscomplexobj(v) else float)
    M = np.eye(rs.ambient_dim)
    word: list[int] = []
    norms2 = np.einsum("ij,ij->i", rs.simple_roots, rs.simple_roots)
    for _ in range(100000):
        pair = rs.simple_roots @ v
        neg = np.where(np.real(pair) < -tol)[0]
        if neg.size == 0:
            return v, WeylElement(M, tuple(word))
        i = int(neg[0])
        a = rs.simple_roots[i]
        v = v - (2.0 * (a @ v) / norms2[i]) * a
        Si = np.eye(rs.ambient_dim) - 2.0 * np.outer(a, a) / norms2[i]
        M = Si @ M
        word.insert(0, i)
    raise RuntimeError("dominantize did not terminate")  # pragma: no cover


def longest_element(rs: RootSystem) -> WeylElement:
    """The unique Weyl element mapping the simple system to its negative.
    Computed by dominantizing a generic anti-dominant vector, so it works
    without enumerating W."""
    xi = (1.0 + 0.1 * np.arange(rs.rank)) @ rs.coweights
    _, w = dominantize(rs, -xi)
    img = rs.simple_roots @ w.matrix.T
    for a in img:
        if not any(np.allclose(a, -b, atol=1e-8) for b in rs.simple_roots):
            raise RuntimeError("longest element check failed")  # pragma: no cover
    return w


def w0_invariants(rs: RootSystem) -> tuple[int, int, int]:
    """(trace, d_plus, d_minus) of the longest element on span(Sigma)."""
    tr = int(round(np.trace(longest_element(rs).matrix)))
    d_plus = (rs.rank + tr) // 2
    return tr, d_plus, rs.rank - d_plus


def weyl_enumerate(rs: RootSystem, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    """Complete list of Weyl elements by breadth-first closure under the
    simple reflections.  Raises CapExceeded past ``cap`` elements."""
    gens = [simple_reflection(rs, i) for i in range(rs.rank)]

    def key(M):
        return (np.round(M, 9) + 0.0).tobytes()

    ident = WeylElement(np.eye(rs.ambient_dim), ())
    seen = {key(ident.matrix): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for i, g in enumerate(gens):
                M = g.matrix @ w.matrix
                k = key(M)
                if k not in seen:
                    el = WeylElement(M, (i,) + w.word)
                    seen[k] = el
                    nxt.append(el)
                    if len(seen) > cap:
                        raise CapExceeded(f"Weyl group larger than cap {cap}")
        frontier = nxt
    return list(seen.values())


def weyl_orbit(rs: RootSystem, v, cap: int = DEFAULT_CAP) -> list[np.ndarray]:
    """Deduplicated W-orbit of a vector."""
    v = np.asarray(v, dtype=float)
    norms2 = np.einsum("ij,ij->i", rs.simple_roots, rs.simple_roots)

    def key(u):
        return (np.round(u, 9) + 0.0).tobytes()

    seen = {key(v): v}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for a, n2 in zip(rs.simple_roots, norms2):
                w = u - (2.0 * np.dot(u, a) / n2) * a
                k = key(w)
                if k not in seen:
                    seen[k] = w
                    nxt.append(w)
                    if len(seen) > cap:
                        raise CapExceeded(f"orbit larger than cap {cap}")
        frontier = nxt
    return list(seen.values())
