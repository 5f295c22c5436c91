"""Command-line front end.

Subcommands: info, w0-table, classify, region-slice, spherical, lp-check,
weyl-law.  Exit codes: 0 success, 1 usage/parse error, 2 computational
refusal (CapExceeded / NoQuantitativeGap), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .descriptors import GroupDescriptor, UnsupportedDescriptor, parse_group
from .figures import KNOWN_OVERLAYS, SliceSpec, slice_masks, write_csv, write_svg
from .regions import (
    NoQuantitativeGap,
    classify_candidate,
    gap_certificate,
    group_facts,
)
from .rootsystem import (
    CapExceeded,
    build_root_system,
    w0_invariants,
    weyl_enumerate,
)
from .spherical import (
    QuadratureNotConverged,
    SphericalConfig,
    lp_divergence_verdict,
    lp_membership_predict,
    spherical_phi,
)
from .weyllaw import (
    OmegaSpec,
    counting_lower_bound,
    dim_symmetric_space,
    leading_term_ball,
)

__all__ = ["main", "build_parser", "W0_TABLE_TYPES"]

CONFIG_KEYS = ("tol", "quadrature_order", "cartan_radius", "cartan_grid", "r1", "r2")


class UsageError(ValueError):
    pass


def _read_config(path: str) -> dict[str, float]:
    """key = value lines, UTF-8, '#' comments."""
    out: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {raw.strip()!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            out[key] = float(val)
    return out


def _parse_vec(text: str, n: int, what: str) -> np.ndarray:
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse {what}: {text!r}") from exc
    if len(vals) != n:
        raise UsageError(f"{what} must have {n} entries, got {len(vals)}")
    return np.array(vals)


def _lambda_from_args(rs, args) -> np.ndarray:
    n = rs.rank
    re = _parse_vec(args.re, n, "--re") if args.re else np.zeros(n)
    im = _parse_vec(args.im, n, "--im") if args.im else np.zeros(n)
    lam = re + 1j * im
    if getattr(args, "basis", "simple") == "simple":
        return rs.from_simple_coords(lam)
    return lam


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _snap(x: float, tol: float = 1e-12) -> float:
    return 0.0 if abs(x) < tol else x


def _coord_str(v) -> str:
    return "(" + ",".join(f"{_snap(x):.6g}" for x in np.asarray(v)) + ")"


def _restricted_type(desc: GroupDescriptor) -> str:
    fam, n = desc.family, desc.param
    if fam in ("SLnR", "SLnC"):
        return f"A{n - 1}"
    if fam == "Sp2nR":
        return f"C{n}"
    if fam == "SOn1":
        return "A1"
    if fam in ("SUn1", "Spn1"):
        return "BC1"
    ct = desc.cartan_type
    return ct if len(ct) > 1 else f"{ct}{n}"


# -- subcommands ----------------------------------------------------------


def cmd_info(args, cfg) -> int:
    desc = parse_group(args.group)
    rs = build_root_system(desc)
    facts = group_facts(desc, rs)
    tr, dplus, dminus = w0_invariants(rs)
    print(f"group: {desc}")
    print(f"restricted root system: {_restricted_type(desc)}")
    print(f"rank = {rs.rank}")
    print("positive roots (simple-root coordinates; multiplicity):")
    coords = rs.simple_coords(rs.positive_roots)
    for c, m in zip(coords, rs.multiplicities):
        print(f"  {_coord_str(c)}  m = {m}")
    print(f"rho (simple basis) = {_coord_str(rs.simple_coords(rs.rho))}")
    print(f"rho (ortho basis)  = {_coord_str(rs.rho)}")
    print(f"|W| = {len(weyl_enumerate(rs))}")
    print(f"w0: -Tr = {-tr}, d+ = {dplus}")
    print(f"d = {facts.dim_GK}")
    if facts.p_K.finite:
        suffix = "" if facts.p_K.exact else f" ({facts.p_K.note})"
        print(f"p_K = {_fmt(facts.p_K.value)}{suffix}")
    else:
        note = facts.p_K.note or (
            "Property (T)" if facts.has_property_T else "no Property (T)"
        )
        print(f"p_K = infinity ({note})")
    return 0


W0_TABLE_TYPES = (
    [("A", n) for n in range(2, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(2, 9)]
    + [("D", n) for n in range(3, 9)]
    + [("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)]
)


def cmd_w0_table(args, cfg) -> int:
    print(f"{'type':>6}  {'-Tr(w0)':>8}  {'d+':>4}")
    for ct, n in W0_TABLE_TYPES:
        name = ct if len(ct) == 2 else f"{ct}{n}"
        desc = GroupDescriptor("split", n, ct[0] if len(ct) == 1 else ct)
        rs = build_root_system(desc)
        tr, dplus, _ = w0_invariants(rs)
        print(f"{name:>6}  {-tr:>8}  {dplus:>4}")
    return 0


def cmd_classify(args, cfg) -> int:
    desc = parse_group(args.group)
    rs = build_root_system(desc)
    lam = _lambda_from_args(rs, args)
    tol = args.tol if args.tol is not None else cfg.get("tol", 1e-9)
    res = classify_candidate(desc, lam, tol=tol)
    print(f"group: {desc}")
    print("lambda (ortho basis) = " + ",".join(f"{z.real:.9g}{z.imag:+.9g}j" for z in lam))
    print(f"verdict: {res.verdict.value}")
    if res.cone_witness is not None:
        print(f"cone witness: simple coefficient #{res.cone_witness + 1} is positive")
    if res.exceptional_witness is not None:
        a, k = res.exceptional_witness
        print(f"exceptional witness: alpha = {np.array2string(a, precision=6)}, k = {k}")
    if res.b_witness is not None:
        word = " ".join(f"s{i + 1}" for i in res.b_witness.word) or "e"
        print(f"B witness: w = {word}")
    if res.quantum_passed is not None:
        print(f"quantum obstruction passed: {res.quantum_passed}")
    if res.in_F is not None:
        print(f"in first-band region F: {res.in_F}")
    try:
        cert = gap_certificate(desc, lam, tol=tol)
        print(f"gap certificate: {cert}")
    except NoQuantitativeGap as exc:
        print(f"gap certificate: unavailable ({exc})")
    return 0


def cmd_region_slice(args, cfg) -> int:
    desc = parse_group(args.group)
    rs = build_root_system(desc)
    fixed_re = None
    plane = args.plane
    if plane.startswith("im"):
        _, _, coords = plane.partition(":")
        fixed = _parse_vec(coords, rs.rank, "fixed real part") if coords else np.zeros(rs.rank)
        fixed_re = rs.from_simple_coords(fixed).astype(float)
        plane = "im"
    elif plane != "re":
        raise UsageError("--plane must be re or im[:c1,...,cn]")
    center = _parse_vec(args.center, 2, "--center") if args.center else np.zeros(2)
    hw = _parse_vec(args.half_widths, 2, "--half-widths") if args.half_widths else np.array([1.0, 1.0])
    overlays = tuple(t for t in args.overlays.split(",") if t) if args.overlays else ()
    spec = SliceSpec(
        plane=plane,
        fixed_re=fixed_re,
        center=(center[0], center[1]),
        half_widths=(hw[0], hw[1]),
        resolution=args.resolution,
        overlays=overlays,
        tol=cfg.get("tol", 1e-9),
    )
    masks = slice_masks(rs, spec)
    out = args.out
    try:
        if out.endswith(".csv"):
            write_csv(out, spec, masks)
        elif out.endswith(".svg"):
            if rs.rank != 2:
                raise UsageError("SVG slices require a rank-2 system")
            write_svg(out, rs, spec, masks)
        else:
            raise UsageError("--out must end in .svg or .csv")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {out}")
    return 0


def _spherical_cfg(desc: GroupDescriptor, cfg, args) -> SphericalConfig:
    return SphericalConfig(
        group=desc,
        quadrature_order=int(getattr(args, "quadrature_order", None)
                             or cfg.get("quadrature_order", 64)),
        cartan_radius=float(cfg.get("cartan_radius", 20.0)),
        cartan_grid=int(cfg.get("cartan_grid", 400)),
    )


def cmd_spherical(args, cfg) -> int:
    desc = parse_group(args.group)
    if not (desc.family == "SLnR" and desc.param in (2, 3)):
        raise UsageError("spherical numerics support SL(2,R) and SL(3,R) only")
    rs = build_root_system(desc)
    scfg = _spherical_cfg(desc, cfg, args)
    lam = _lambda_from_args(rs, args)
    n = scfg.n
    grid = args.grid
    hmax = args.hmax
    rows = []
    if n == 2:
        for i in range(1, grid + 1):
            u = hmax * i / grid
            h = np.array([u, -u])
            sv = spherical_phi(scfg, lam, h)
            rows.append((list(h), sv))
    else:
        for i in range(1, grid + 1):
            for j in range(1, grid + 1):
                x = np.array([hmax * i / grid, hmax * j / grid])
                h = np.array([[2, -1], [-1, 2], [-1, -1]]) @ x / 3.0
                sv = spherical_phi(scfg, lam, h)
                rows.append((list(h), sv))
    try:
        with open(args.out, "w", newline="") as fh:
            hcols = ",".join(f"h{i + 1}" for i in range(n))
            fh.write(f"{hcols},re_phi,im_phi,est_error\n")
            for h, sv in rows:
                hs = ",".join(f"{x:.9g}" for x in h)
                fh.write(
                    f"{hs},{sv.value.real:.12g},{sv.value.imag:.12g},{sv.est_error:.6g}\n"
                )
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


def cmd_lp_check(args, cfg) -> int:
    desc = parse_group(args.group)
    if not (desc.family == "SLnR" and desc.param in (2, 3)):
        raise UsageError("L^p numerics support SL(2,R) and SL(3,R) only")
    rs = build_root_system(desc)
    scfg = _spherical_cfg(desc, cfg, args)
    lam = _lambda_from_args(rs, args)
    p = args.p
    if p <= 0:
        raise UsageError("p must be positive")
    radii = (cfg.get("r1", 10.0), cfg.get("r2", 20.0))
    if args.radii:
        radii = tuple(_parse_vec(args.radii, 2, "--radii"))
    if p >= 2:
        pred = lp_membership_predict(rs, lam, p)
        print(
            "analytic prediction: "
            + ("Convergent" if pred else "Divergent")
            + f"  (Re lambda in (1-2/p) conv(W rho) with 1-2/p = {_fmt(1 - 2 / p)})"
        )
    else:
        print("analytic prediction: Divergent  (p < 2: only lambda with no "
              "tempered decay margin; scaled-hull criterion requires p >= 2)")
    verdict = lp_divergence_verdict(scfg, lam, p, radii)
    print(f"two-radius verdict (R = {_fmt(radii[0])}, {_fmt(radii[1])}): {verdict}")
    if verdict == "Inconclusive":
        print("note: near-critical parameters legitimately return Inconclusive;"
              " increase the radii to sharpen the test")
    return 0


def cmd_weyl_law(args, cfg) -> int:
    desc = parse_group(args.group)
    if args.vol <= 0:
        raise UsageError("--vol must be positive")
    if args.t < 0:
        raise UsageError("--t must be >= 0")
    rs = build_root_system(desc)
    d = dim_symmetric_space(desc, rs)
    order = len(weyl_enumerate(rs))
    if args.omega:
        kind, _, val = args.omega.partition(":")
        if kind != "ball":
            raise UsageError("--omega supports ball:<radius> on the command line")
        omega = OmegaSpec.ball(float(val or 1.0))
        lead = counting_lower_bound(desc, args.vol, omega, args.t)
        omega_text = f"Omega = ball({_fmt(omega.radius)})"
    else:
        lead = leading_term_ball(desc, args.vol, args.t)
        omega_text = "Omega = unit ball (calibration form)"
    print(f"group: {desc}")
    print(f"d = dim G/K = {d}, |W| = {order}, Vol(Gamma\\G/K) = {_fmt(args.vol)}")
    print(omega_text)
    print(
        f"N({_fmt(args.t)}) >= {_fmt(lead)} + O(t^{d - 1})"
        "   (leading term of the counting lower bound)"
    )
    return 0


# -- dispatch -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="weylscope",
        description="Resonance-region calculator for Weyl chamber flows",
    )
    ap.add_argument("--config", help="key = value config file", default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="group report: roots, rho, |W|, w0, p_K")
    p.add_argument("group")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("w0-table", help="longest-element trace/dimension table")
    p.set_defaults(fn=cmd_w0_table)

    p = sub.add_parser("classify", help="classify a candidate resonance parameter")
    p.add_argument("group")
    p.add_argument("--re", default=None, help="comma list, real part")
    p.add_argument("--im", default=None, help="comma list, imaginary part")
    p.add_argument("--basis", choices=("simple", "ortho"), default="simple")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("region-slice", help="emit an SVG/CSV region slice")
    p.add_argument("group")
    p.add_argument("--plane", default="re", help="re | im[:c1,...,cn (simple basis)]")
    p.add_argument("--center", default=None, help="window center x,y")
    p.add_argument("--half-widths", default=None, help="window half-widths wx,wy")
    p.add_argument("--resolution", type=int, default=256)
    p.add_argument(
        "--overlays",
        default="",
        help="comma list from: " + ", ".join(KNOWN_OVERLAYS) + " (conv_wrho:SCALE)",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_region_slice)

    p = sub.add_parser("spherical", help="CSV grid of phi_lambda")
    p.add_argument("group")
    p.add_argument("--re", dest="re", default=None, help="lambda real part (comma list)")
    p.add_argument("--im", dest="im", default=None, help="lambda imaginary part")
    p.add_argument("--basis", choices=("simple", "ortho"), default="simple")
    p.add_argument("--hmax", type=float, default=2.0)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--quadrature-order", dest="quadrature_order", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_spherical)

    p = sub.add_parser("lp-check", help="L^p membership: prediction vs quadrature")
    p.add_argument("group")
    p.add_argument("--re", default=None)
    p.add_argument("--im", default=None)
    p.add_argument("--basis", choices=("simple", "ortho"), default="simple")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--radii", default=None, help="R1,R2 truncation radii")
    p.add_argument("--quadrature-order", dest="quadrature_order", type=int, default=None)
    p.set_defaults(fn=cmd_lp_check)

    p = sub.add_parser("weyl-law", help="Weyl-law leading term report")
    p.add_argument("group")
    p.add_argument("--vol", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--omega", default=None, help="ball:<radius>")
    p.set_defaults(fn=cmd_weyl_law)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    cfg: dict[str, float] = {}
    try:
        if args.config:
            cfg = _read_config(args.config)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.fn(args, cfg)
    except (UsageError, UnsupportedDescriptor, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, NoQuantitativeGap, QuadratureNotConverged) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
