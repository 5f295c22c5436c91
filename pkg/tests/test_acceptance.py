"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each criterion also reports a PASS/FAIL line in the terminal summary (see
conftest.py).  Where a stated constant proved numerically unattainable the
adjusted value is noted inline and in the project notes.
"""

import math
import time

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from weylscope.cli import main as cli_main
from weylscope.descriptors import parse_group
from weylscope.figures import SliceSpec, overlay_mask, slice_masks, write_svg
from weylscope.regions import (
    NoQuantitativeGap,
    Verdict,
    classify_candidate,
    first_band_region_alt,
    gap_certificate,
    in_conv_weyl_rho,
    in_first_band_cone_F,
    in_neg_dual_cone_closure,
)
from weylscope.rootsystem import build_root_system, w0_invariants, weyl_enumerate, weyl_orbit
from weylscope.spherical import (
    SphericalConfig,
    lp_divergence_verdict,
    lp_membership_predict,
    psd_gram_test,
    spherical_phi,
)
from weylscope.weyllaw import (
    OmegaSpec,
    counting_lower_bound,
    dim_symmetric_space,
    leading_term_ball,
    vol_adk_omega,
)

from lie_oracle import (
    MatrixAlgebra,
    sl_basis,
    sl_cartan,
    so_n1_cartan,
    so_pq_basis,
)


def test_criterion_01_w0_table():
    """w0 traces and (+1)-eigenspace dimensions match the paper's table,
    integer-exact, for A2..A8, B2..B8, D3..D8, E6, E7, E8, F4, G2."""
    start = time.time()
    expected = {}
    for n in range(2, 9):
        expected[("A", n)] = (0, n // 2) if n % 2 == 0 else (1, (n - 1) // 2)
    for n in range(2, 9):
        expected[("B", n)] = (n, 0)
    for n in range(3, 9):
        expected[("D", n)] = (n, 0) if n % 2 == 0 else (n - 2, 1)
    expected[("E6", 6)] = (2, 2)
    expected[("E7", 7)] = (7, 0)
    expected[("E8", 8)] = (8, 0)
    expected[("F4", 4)] = (4, 0)
    expected[("G2", 2)] = (2, 0)
    for (ct, n), (neg_tr, dplus) in expected.items():
        name = ct if len(ct) == 2 else f"{ct}{n}"
        rs = build_root_system(parse_group(f"split:{name}"))
        tr, dp, _ = w0_invariants(rs)
        assert (-tr, dp) == (neg_tr, dplus), f"type {name}"
        assert float(tr) == int(tr)
    assert time.time() - start < 5.0


def test_criterion_02_killing_oracle():
    """Root-data Killing form vs trace(ad X ad Y) in explicit matrix bases
    for sl2(R), sl3(R), so(2,1), so(3,1): 100 random pairs, rel err < 1e-8."""
    start = time.time()
    rng = np.random.default_rng(42)

    for n in (2, 3):
        alg = MatrixAlgebra(sl_basis(n))
        rs = build_root_system(parse_group(f"SL({n},R)"))
        eps_roots = np.stack([rs.stored_to_eps(a).real for a in rs.positive_roots])
        for _ in range(100):
            h1 = rng.normal(size=n)
            h1 -= h1.mean()
            h2 = rng.normal(size=n)
            h2 -= h2.mean()
            got = alg.killing(sl_cartan(n, h1), sl_cartan(n, h2))
            vals1 = eps_roots @ h1
            vals2 = eps_roots @ h2
            want = 2.0 * float(rs.multiplicities @ (vals1 * vals2))
            assert abs(got - want) <= 1e-8 * (1.0 + abs(want))

    for n in (2, 3):
        alg = MatrixAlgebra(so_pq_basis(n, 1))
        rs = build_root_system(parse_group(f"SO({n},1)"))
        mult = float(rs.multiplicities[0])
        for _ in range(100):
            s, t = rng.normal(size=2)
            got = alg.killing(so_n1_cartan(n, s), so_n1_cartan(n, t))
            want = 2.0 * mult * s * t
            assert abs(got - want) <= 1e-8 * (1.0 + abs(want))
    assert time.time() - start < 1.0


def test_criterion_03_region_identity():
    """F-cap-closure(-a*) vs the alternative form on 1e4 samples each for
    A2, B2, G2, A3, boundary shell 1e-8 excluded: zero mismatches."""
    start = time.time()
    rng = np.random.default_rng(7)
    for name in ["split:A2", "split:B2", "split:G2", "split:A3"]:
        rs = build_root_system(parse_group(name))
        mismatches = 0
        tested = 0
        while tested < 10_000:
            c = rng.uniform(-2.0, 1.0, size=rs.rank)
            if np.min(np.abs(c)) < 1e-8 or np.min(np.abs(c + 1.0)) < 1e-8:
                continue
            tested += 1
            v = rs.from_simple_coords(c)
            lhs = in_first_band_cone_F(rs, v) and in_neg_dual_cone_closure(rs, v)[0]
            if lhs != first_band_region_alt(rs, v):
                mismatches += 1
        assert mismatches == 0, name
    assert time.time() - start < 5.0


def test_criterion_04_hull_cross_validation():
    """in_conv_weyl_rho vs scipy half-space test on the explicit W rho hull:
    1e4 samples per group, rank <= 3, zero mismatches off the 1e-8 shell."""
    start = time.time()
    rng = np.random.default_rng(11)
    for name in ["SL(3,R)", "Sp(4,R)", "split:G2", "SL(4,R)"]:
        rs = build_root_system(parse_group(name))
        orbit = np.array(weyl_orbit(rs, rs.rho))
        hull = ConvexHull(orbit)
        eqs = hull.equations  # rows [normal | offset], inside = <= 0
        box = 1.3 * np.abs(orbit).max()
        mismatches = 0
        tested = 0
        while tested < 10_000:
            v = rng.uniform(-box, box, size=rs.rank)
            slack = eqs[:, :-1] @ v + eqs[:, -1]
            if np.min(np.abs(slack)) < 1e-8:
                continue
            tested += 1
            inside_hull = bool(np.all(slack <= 0.0))
            if inside_hull != in_conv_weyl_rho(rs, v):
                mismatches += 1
        assert mismatches == 0, name
    assert time.time() - start < 10.0


def test_criterion_05_spherical_identity_and_symmetry():
    """phi_{-rho} = 1 (1e-8) on rays/grids; Weyl symmetry to 1e-6 (SL2,
    20 probes) and 1e-3 (SL3, 10 probes)."""
    start = time.time()
    sl2 = parse_group("SL(2,R)")
    sl3 = parse_group("SL(3,R)")
    cfg2 = SphericalConfig(group=sl2, quadrature_order=256)
    cfg3 = SphericalConfig(group=sl3, quadrature_order=96)
    rs2 = build_root_system(sl2)
    rs3 = build_root_system(sl3)

    for u in np.linspace(0.2, 2.0, 10):
        v = spherical_phi(cfg2, -rs2.rho, np.array([u, -u]))
        assert abs(v.value - 1.0) < 1e-8
    for x1 in (0.3, 0.7, 1.1):
        for x2 in (0.3, 0.7, 1.1):
            h = np.array([[2, -1], [-1, 2], [-1, -1]]) @ np.array([x1, x2]) / 3.0
            v = spherical_phi(cfg3, -rs3.rho, h)
            assert abs(v.value - 1.0) < 1e-8

    rng = np.random.default_rng(23)
    # SL2: the nontrivial Weyl element sends lam to -lam
    for _ in range(20):
        z = rng.uniform(-1.2, 1.2) + 1j * rng.uniform(-1.2, 1.2)
        lam = z * rs2.rho
        u = rng.uniform(0.3, 1.8)
        h = np.array([u, -u])
        a = spherical_phi(cfg2, lam, h).value
        b = spherical_phi(cfg2, -lam, h).value
        assert abs(a - b) < 1e-6
    # SL3: random Weyl images
    elements = weyl_enumerate(rs3)
    for _ in range(10):
        lam = (
            rng.uniform(-0.8, 0.8, size=2)
            + 1j * rng.uniform(-0.8, 0.8, size=2)
        ) @ rs3.simple_roots
        w = elements[rng.integers(len(elements))]
        h = np.array([[2, -1], [-1, 2], [-1, -1]]) @ rng.uniform(0.3, 1.0, size=2) / 3.0
        a = spherical_phi(cfg3, lam, h).value
        b = spherical_phi(cfg3, w.matrix @ lam, h).value
        assert abs(a - b) < 1e-3
    assert time.time() - start < 120.0


def test_criterion_06_lp_transition():
    """SL2, p = 2.5: lambda = 0 convergent, 0.9 rho divergent, matching
    the analytic scale 0.2; near-critical 0.2 rho may be Inconclusive.
    The truncation radii are (100, 200) Killing units: the integrand tail
    at lambda = 0 decays like exp(-rho(H)/2), so the radii (10, 20) named
    in the criterion cannot certify convergence for any radius convention
    (see the project notes)."""
    start = time.time()
    sl2 = parse_group("SL(2,R)")
    cfg = SphericalConfig(group=sl2, quadrature_order=256)
    rs = build_root_system(sl2)
    radii = (100.0, 200.0)

    assert lp_divergence_verdict(cfg, 0.0 * rs.rho, 2.5, radii) == "Convergent"
    assert lp_membership_predict(rs, 0.0 * rs.rho, 2.5)
    assert lp_divergence_verdict(cfg, 0.9 * rs.rho, 2.5, radii) == "Divergent"
    assert not lp_membership_predict(rs, 0.9 * rs.rho, 2.5)
    # lambda = 0.2 rho sits exactly on the critical hull: the truncated
    # integrals grow polynomially, so Divergent or Inconclusive are both
    # legitimate outcomes
    assert lp_divergence_verdict(cfg, 0.2 * rs.rho, 2.5, radii) in (
        "Inconclusive",
        "Divergent",
    )
    assert time.time() - start < 120.0


def test_criterion_07_positivity():
    """SL2 Gram consistency for {0, 0.5rho, rho, i rho, 2i rho}; NotPSD
    with an unboundedness witness at 1.5rho; eigenvalue tolerance 1e-8."""
    start = time.time()
    sl2 = parse_group("SL(2,R)")
    cfg = SphericalConfig(group=sl2, quadrature_order=256)
    rs = build_root_system(sl2)
    pts = [np.array([u, -u]) for u in (0.0, 0.4, 0.8, 1.2)]
    for z in (0.0, 0.5, 1.0, 1j, 2j):
        verdict = psd_gram_test(cfg, z * rs.rho, pts, tol=1e-8)
        assert verdict.consistent, f"lambda = {z} rho"
    bad = psd_gram_test(cfg, 1.5 * rs.rho, pts, tol=1e-8)
    assert not bad.consistent
    assert bad.unbounded_witness is not None
    assert time.time() - start < 60.0


def test_criterion_08_classification_sanity():
    """lambda = 0 is PossibleFirstBand across the catalog; the -rho + i nu
    line stays possible for SL3; Re lambda = lambda_0 is excluded; gap
    certificates behave as stated."""
    start = time.time()
    catalog = [
        "SL(2,R)", "SL(3,R)", "SL(4,R)", "SL(3,C)", "Sp(4,R)", "Sp(6,R)",
        "SO(3,1)", "SO(5,1)", "SU(2,1)", "Sp(2,1)", "split:A2", "split:B2",
        "split:B3", "split:C3", "split:D4", "split:F4", "split:G2",
    ]
    for name in catalog:
        desc = parse_group(name)
        rank = desc.rank
        res = classify_candidate(desc, np.zeros(rank))
        assert res.verdict is Verdict.POSSIBLE_FIRST_BAND, name

    sl3 = parse_group("SL(3,R)")
    rs = build_root_system(sl3)
    nu = rs.rho + 0.7 * rs.simple_roots[0]  # regular imaginary part
    res = classify_candidate(sl3, -rs.rho + 1j * nu)
    assert res.verdict is Verdict.POSSIBLE_FIRST_BAND

    lam0 = rs.simple_roots.sum(axis=0)
    assert classify_candidate(sl3, lam0).verdict is Verdict.EXCLUDED_BY_CONE

    assert gap_certificate(sl3, -0.1 * rs.rho)
    with pytest.raises(NoQuantitativeGap):
        gap_certificate(parse_group("SL(2,R)"), np.array([-0.1]))
    assert time.time() - start < 1.0


def test_criterion_09_weyl_law_consistency():
    """Ball-form vs Omega-form leading constants agree to 1e-12 for the
    catalog groups with d <= 20; indicator quadrature grid-stable < 0.5%."""
    start = time.time()
    catalog = [
        "SL(2,R)", "SL(3,R)", "SL(4,R)", "SL(5,R)", "SL(6,R)", "SL(2,C)",
        "SL(3,C)", "Sp(4,R)", "SO(3,1)", "SO(6,1)", "SO(15,1)", "SU(2,1)",
        "SU(4,1)", "Sp(2,1)", "Sp(5,1)", "split:A2", "split:A3", "split:B2",
        "split:C2", "split:G2",
    ]
    for name in catalog:
        desc = parse_group(name)
        assert dim_symmetric_space(desc) <= 20, name
        a = leading_term_ball(desc, 1.0, 2.0)
        b = counting_lower_bound(desc, 1.0, OmegaSpec.ball(1.0), 2.0)
        assert abs(a - b) <= 1e-12 * abs(a), name

    desc = parse_group("SL(3,R)")
    omega = OmegaSpec.from_indicator(lambda p: float(p @ p) < 0.8, 1.0)
    v1 = vol_adk_omega(desc, omega, grid=80)
    v2 = vol_adk_omega(desc, omega, grid=160)
    assert abs(v1 - v2) <= 5e-3 * abs(v2)
    assert time.time() - start < 30.0


FIGURE_SETS = {
    "fig2": ("neg_dual_cone", "conv_wrho:0.5"),
    "fig3": ("neg_dual_cone", "first_band_F", "alt_identity"),
    "fig5": (
        "neg_dual_cone",
        "exceptional_A_lines",
        "quantum_B_loci",
        "gap_region",
    ),
}


def test_criterion_10_figure_regression(tmp_path):
    """cmd_region_slice SVGs for the Fig. 2/3/5 overlay sets; region masks
    stable under resolution doubling (>= 99% agreement) and green region
    contained in the pink cone."""
    start = time.time()
    rs = build_root_system(parse_group("SL(3,R)"))
    window = dict(center=(0.0, -0.5), half_widths=(1.5, 1.5))

    for name, overlays in FIGURE_SETS.items():
        out = tmp_path / f"{name}.svg"
        code = cli_main([
            "region-slice", "SL(3,R)", "--center", "0,-0.5",
            "--half-widths", "1.5,1.5", "--resolution", "256",
            "--overlays", ",".join(overlays), "--out", str(out),
        ])
        assert code == 0
        body = out.read_text()
        assert body.startswith("<svg")
        import re as _re

        tags = set(_re.findall(r"<(\w+)[ >]", body))
        assert tags <= {"svg", "polygon", "path", "text"}

        res = 1024
        coarse = SliceSpec(resolution=res, overlays=overlays, **window)
        fine = SliceSpec(resolution=2 * res, overlays=overlays, **window)
        for tag in overlays:
            m1 = overlay_mask(rs, coarse, tag).reshape(res, res)
            m2 = overlay_mask(rs, fine, tag).reshape(2 * res, 2 * res)
            up = np.repeat(np.repeat(m1, 2, axis=0), 2, axis=1)
            agreement = float((up == m2).mean())
            assert agreement >= 0.99, (tag, agreement)

    # topology: the green first-band region is inside the pink cone
    spec = SliceSpec(resolution=512, **window)
    pink = overlay_mask(rs, spec, "neg_dual_cone")
    green = overlay_mask(rs, spec, "alt_identity")
    gap = overlay_mask(rs, spec, "gap_region")
    assert green.any() and pink.any()
    assert not np.any(green & ~pink)
    assert not np.any(gap & ~pink)
    assert time.time() - start < 60.0
