"""Region-slice rasterization and SVG/CSV emission for rank-2 systems.

Each overlay tag is evaluated as a boolean mask on a pixel grid; the SVG
uses only polygons, paths and text so figures stay diffable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .regions import DEFAULT_TOL
from .rootsystem import RootSystem, weyl_enumerate, weyl_orbit

__all__ = ["SliceSpec", "overlay_mask", "slice_masks", "write_csv", "write_svg",
           "OVERLAY_STYLE", "KNOWN_OVERLAYS"]

# one style table so figure diffs stay stable; colors echo the paper's
# figures (pink a-priori cone, green first-band region)
OVERLAY_STYLE = {
    "neg_dual_cone": ("#f8c8dc", 0.85),
    "conv_wrho": ("#2e8b57", 0.45),
    "first_band_F": ("#b8e0b8", 0.6),
    "alt_identity": ("#69b36b", 0.6),
    "exceptional_A_lines": ("#222222", 0.9),
    "quantum_B_loci": ("#cc2222", 0.8),
    "gap_region": ("#7fb2e5", 0.6),
}

KNOWN_OVERLAYS = tuple(OVERLAY_STYLE)


@dataclass(frozen=True)
class SliceSpec:
    """A 2-D window of a* (real part) or of Im a* at a fixed real part."""

    plane: str = "re"  # "re" | "im"
    fixed_re: Optional[np.ndarray] = None  # required for plane="im"
    center: tuple[float, float] = (0.0, 0.0)
    half_widths: tuple[float, float] = (1.0, 1.0)
    resolution: int = 256
    overlays: tuple[str, ...] = ()
    hull_scale: float = 0.5  # scale for the conv_wrho overlay
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.plane not in ("re", "im"):
            raise ValueError("plane must be 're' or 'im'")
        if self.plane == "im" and self.fixed_re is None:
            raise ValueError("plane='im' needs fixed_re")
        if not 32 <= self.resolution <= 4096:
            raise ValueError("resolution out of [32, 4096]")
        if min(self.half_widths) <= 0:
            raise ValueError("window is degenerate")
        for tag in self.overlays:
            base = tag.split(":")[0]
            if base not in OVERLAY_STYLE:
                raise ValueError(f"unknown overlay {tag!r}")


def grid_points(spec: SliceSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pixel-center coordinates: xs, ys (1-D) and pts (res*res, 2),
    row-major with y varying slowest."""
    res = spec.resolution
    cx, cy = spec.center
    hx, hy = spec.half_widths
    xs = cx - hx + (np.arange(res) + 0.5) * (2.0 * hx / res)
    ys = cy - hy + (np.arange(res) + 0.5) * (2.0 * hy / res)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    return xs, ys, np.stack([X.ravel(), Y.ravel()], axis=-1)


def _hull_halfspaces(rs: RootSystem, scale: float):
    """Outward half-plane normals/offsets of scale*conv(W rho), rank 2."""
    pts = np.array(weyl_orbit(rs, scale * rs.rho))
    ang = np.arctan2(pts[:, 1], pts[:, 0])
    order = np.argsort(ang)
    pts = pts[order]
    normals, offs = [], []
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        e = b - a
        nvec = np.array([e[1], -e[0]])
        if np.dot(nvec, a) < 0:
            nvec = -nvec
        nn = np.linalg.norm(nvec)
        if nn < 1e-14:
            continue
        normals.append(nvec / nn)
        offs.append(np.dot(nvec / nn, a))
    return np.array(normals), np.array(offs)


def _minus_one_projections(rs: RootSystem):
    """For each Weyl element, dimension and orthogonal projector of its
    (-1)-eigenspace."""
    out = []
    for w in weyl_enumerate(rs):
        M = w.matrix
        u, s, vt = np.linalg.svd(M + np.eye(rs.ambient_dim))
        null = vt[s < 1e-9]
        dim = null.shape[0]
        P = null.T @ null if dim else np.zeros((rs.ambient_dim, rs.ambient_dim))
        out.append((w, dim, P))
    return out


def _plus_one_projection(M: np.ndarray):
    u, s, vt = np.linalg.svd(M - np.eye(M.shape[0]))
    null = vt[s < 1e-9]
    dim = null.shape[0]
    P = null.T @ null if dim else np.zeros_like(M)
    return dim, P


def overlay_mask(rs: RootSystem, spec: SliceSpec, tag: str) -> np.ndarray:
    """Boolean mask (res*res,) for one overlay tag on the slice grid."""
    if rs.rank != 2:
        raise ValueError("slices require a rank-2 root system")
    tol = spec.tol
    base, _, arg = tag.partition(":")
    _, _, pts = grid_points(spec)
    hx, hy = spec.half_widths
    # band half-width for line loci: fixed in world units once the pixel
    # pitch is fine enough, so rasterizations stabilize under refinement
    pix = max(np.hypot(2.0 * hx, 2.0 * hy) / spec.resolution,
              np.hypot(2.0 * hx, 2.0 * hy) / 192.0)
    coeffs = np.linalg.solve(rs.simple_roots.T, pts.T).T  # simple-root coords

    if base == "neg_dual_cone":
        return np.all(coeffs <= tol, axis=1)
    if base == "conv_wrho":
        scale = float(arg) if arg else spec.hull_scale
        if scale <= 0:
            return np.linalg.norm(pts, axis=1) <= tol
        normals, offs = _hull_halfspaces(rs, scale)
        return np.all(pts @ normals.T <= offs[None, :] + tol, axis=1)
    if base == "first_band_F":
        mask = np.zeros(len(pts), dtype=bool)
        for i in range(rs.rank):
            shifted = coeffs.copy()
            shifted[:, i] += 1.0
            mask |= np.all(shifted <= tol, axis=1)
        return ~mask
    if base == "alt_identity":
        neg = np.all(coeffs <= tol, axis=1)
        return neg & np.all(coeffs + 1.0 > tol, axis=1)
    if base == "exceptional_A_lines":
        mask = np.zeros(len(pts), dtype=bool)
        re0 = spec.fixed_re if spec.plane == "im" else None
        for a in rs.positive_roots:
            n2 = float(np.dot(a, a))
            if spec.plane == "re":
                z = 2.0 * ((pts + rs.rho) @ a) / n2
                band = 0.75 * pix * 2.0 * np.linalg.norm(a) / n2
                frac = z - np.round(z)
                mask |= (np.abs(frac) <= band) & (np.round(z) <= -1.0)
            else:
                zre = 2.0 * float(np.dot(re0 + rs.rho, a)) / n2
                if zre <= -0.5 and abs(zre - round(zre)) <= tol and round(zre) <= -1:
                    zim = 2.0 * (pts @ a) / n2
                    band = 0.75 * pix * 2.0 * np.linalg.norm(a) / n2
                    mask |= np.abs(zim) <= band
        return mask
    if base == "quantum_B_loci":
        mask = np.zeros(len(pts), dtype=bool)
        if spec.plane == "re":
            for w, dim, P in _minus_one_projections(rs):
                if dim == rs.ambient_dim:
                    return np.ones(len(pts), dtype=bool)
                resid = pts - pts @ P.T
                mask |= np.linalg.norm(resid, axis=1) <= 0.75 * pix
        else:
            re0 = np.asarray(spec.fixed_re, dtype=float)
            for w, dim, P in _minus_one_projections(rs):
                if np.linalg.norm(w.matrix @ re0 + re0) > tol * (1 + np.linalg.norm(re0)):
                    continue
                dplus, Pp = _plus_one_projection(w.matrix)
                if dplus == rs.ambient_dim:
                    return np.ones(len(pts), dtype=bool)
                resid = pts - pts @ Pp.T
                mask |= np.linalg.norm(resid, axis=1) <= 0.75 * pix
        return mask
    if base == "gap_region":
        scale = float(arg) if arg else spec.hull_scale
        neg = np.all(coeffs <= tol, axis=1)
        in_f = overlay_mask(rs, spec, "first_band_F")
        nonzero = np.linalg.norm(pts, axis=1) > tol
        # quantum test at mu = v + rho (real): B-locus and scaled hull/orbit
        mu = pts + rs.rho
        b_mask = np.zeros(len(pts), dtype=bool)
        for w, dim, P in _minus_one_projections(rs):
            if dim == rs.ambient_dim:
                b_mask[:] = True
                break
            resid = mu - mu @ P.T
            b_mask |= np.linalg.norm(resid, axis=1) <= 0.75 * pix
        if scale > 0:
            normals, offs = _hull_halfspaces(rs, scale)
            hull = np.all(mu @ normals.T <= offs[None, :] + tol, axis=1)
        else:
            hull = np.linalg.norm(mu, axis=1) <= tol
        orbit = np.zeros(len(pts), dtype=bool)
        for p in weyl_orbit(rs, rs.rho):
            orbit |= np.linalg.norm(mu - p, axis=1) < tol
        q_pass = b_mask & (hull | orbit)
        return nonzero & neg & in_f & ~q_pass
    raise ValueError(f"unknown overlay {tag!r}")


def slice_masks(rs: RootSystem, spec: SliceSpec) -> dict[str, np.ndarray]:
    return {tag: overlay_mask(rs, spec, tag) for tag in spec.overlays}


# -- emission -------------------------------------------------------------


def write_csv(path: str, spec: SliceSpec, masks: dict[str, np.ndarray]) -> None:
    _, _, pts = grid_points(spec)
    tags = list(masks)
    with open(path, "w", newline="") as fh:
        fh.write("x,y," + ",".join(tags) + "\n")
        cols = [masks[t].astype(int) for t in tags]
        for i, (x, y) in enumerate(pts):
            fh.write(f"{x:.9g},{y:.9g}," + ",".join(str(c[i]) for c in cols) + "\n")


def _runs(row: np.ndarray):
    """Consecutive True runs in a boolean row as (start, stop) pairs."""
    idx = np.flatnonzero(row)
    if idx.size == 0:
        return
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate([[idx[0]], idx[breaks + 1]])
    stops = np.concatenate([idx[breaks] + 1, [idx[-1] + 1]])
    yield from zip(starts, stops)


def write_svg(
    path: str, rs: RootSystem, spec: SliceSpec, masks: dict[str, np.ndarray],
    size: int = 640,
) -> None:
    """Layered filled regions (row-run polygons) with chamber walls, root
    vectors and labels.  Only polygon, path and text elements are used."""
    res = spec.resolution
    cx, cy = spec.center
    hx, hy = spec.half_widths

    def to_px(x, y):
        u = (x - (cx - hx)) / (2.0 * hx) * size
        v = size - (y - (cy - hy)) / (2.0 * hy) * size
        return u, v

    px_w = size / res
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<polygon points="0,0 {size},0 {size},{size} 0,{size}" fill="#ffffff"/>',
    ]
    for tag, mask in masks.items():
        color, opacity = OVERLAY_STYLE[tag.split(":")[0]]
        grid = mask.reshape(res, res)  # row-major, y slowest
        parts = []
        for j in range(res):
            yb = size - (j + 1) * px_w
            yt = size - j * px_w
            for a, b in _runs(grid[j]):
                x0 = a * px_w
                x1 = b * px_w
                parts.append(
                    f'<polygon points="{x0:.2f},{yb:.2f} {x1:.2f},{yb:.2f} '
                    f'{x1:.2f},{yt:.2f} {x0:.2f},{yt:.2f}" '
                    f'fill="{color}" fill-opacity="{opacity}"/>'
                )
        lines.append(f"<!-- overlay {tag} -->")
        lines.extend(parts)
    # chamber walls: lines where <v, alpha_i> = 0, through the origin
    reach = 2.0 * (hx + hy)
    for i, a in enumerate(rs.simple_roots):
        d = np.array([-a[1], a[0]])
        d = d / np.linalg.norm(d)
        x0, y0 = to_px(*(-reach * d))
        x1, y1 = to_px(*(reach * d))
        lines.append(
            f'<path d="M {x0:.2f} {y0:.2f} L {x1:.2f} {y1:.2f}" '
            f'stroke="#555555" stroke-width="1" stroke-dasharray="4,3" fill="none"/>'
        )
    # root vectors
    for i, a in enumerate(rs.simple_roots):
        x0, y0 = to_px(0.0, 0.0)
        x1, y1 = to_px(a[0], a[1])
        lines.append(
            f'<path d="M {x0:.2f} {y0:.2f} L {x1:.2f} {y1:.2f}" '
            f'stroke="#000000" stroke-width="2" fill="none"/>'
        )
        lines.append(
            f'<text x="{x1 + 4:.2f}" y="{y1:.2f}" font-size="14">a{i + 1}</text>'
        )
    xr, yr = to_px(rs.rho[0], rs.rho[1])
    lines.append(f'<text x="{xr + 4:.2f}" y="{yr:.2f}" font-size="14">rho</text>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
