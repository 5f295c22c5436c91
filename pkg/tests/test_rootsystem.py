"""Unit tests for descriptors and the root-system core."""

import numpy as np
import pytest

from weylscope.descriptors import GroupDescriptor, UnsupportedDescriptor, parse_group
from weylscope.rootsystem import (
    build_root_system,
    dominantize,
    killing_pairing,
    longest_element,
    simple_reflection,
    w0_invariants,
    weyl_enumerate,
    weyl_orbit,
)

from lie_oracle import (
    MatrixAlgebra,
    sl_basis,
    sl_cartan,
    so_n1_cartan,
    so_pq_basis,
)


def test_parse_group_roundtrip():
    for text, family, param in [
        ("SL(3,R)", "SLnR", 3),
        ("SL(4,C)", "SLnC", 4),
        ("Sp(4,R)", "Sp2nR", 2),
        ("SO(4,1)", "SOn1", 4),
        ("SU(2,1)", "SUn1", 2),
        ("Sp(2,1)", "Spn1", 2),
    ]:
        desc = parse_group(text)
        assert desc.family == family
        assert desc.param == param
    assert parse_group("split:E8").cartan_type == "E8"
    assert parse_group("split:A3").param == 3


def test_parse_group_rejects_garbage():
    for text in ["SL(1,R)", "SO(3,2)", "split:H4", "GL(3,R)", ""]:
        with pytest.raises((UnsupportedDescriptor, ValueError)):
            parse_group(text)


def test_rank_catalog():
    assert parse_group("SL(5,R)").rank == 4
    assert parse_group("Sp(6,R)").rank == 3
    assert parse_group("SO(9,1)").rank == 1
    assert parse_group("split:F4").rank == 4


@pytest.mark.parametrize("name,n_pos", [
    ("SL(3,R)", 3),
    ("SL(4,R)", 6),
    ("Sp(4,R)", 4),
    ("split:G2", 6),
    ("split:F4", 24),
    ("SO(5,1)", 1),
    ("SU(3,1)", 2),
    ("Sp(2,1)", 2),
])
def test_positive_root_counts(name, n_pos):
    rs = build_root_system(parse_group(name))
    assert len(rs.positive_roots) == n_pos


def test_rank_one_multiplicities():
    assert list(build_root_system(parse_group("SO(6,1)")).multiplicities) == [5]
    assert list(build_root_system(parse_group("SU(3,1)")).multiplicities) == [4, 1]
    assert list(build_root_system(parse_group("Sp(3,1)")).multiplicities) == [8, 3]
    assert list(build_root_system(parse_group("SL(3,C)")).multiplicities) == [2, 2, 2]


def test_rho_is_half_sum():
    rs = build_root_system(parse_group("Sp(4,R)"))
    assert np.allclose(rs.rho, 0.5 * rs.multiplicities @ rs.positive_roots)


def test_simple_coords_inverse():
    rs = build_root_system(parse_group("split:G2"))
    rng = np.random.default_rng(7)
    v = rng.normal(size=rs.rank)
    c = rs.simple_coords(v)
    assert np.allclose(rs.from_simple_coords(c), v)


def test_killing_pairing_is_dot_in_stored_coords():
    rs = build_root_system(parse_group("SL(3,R)"))
    a, b = rs.positive_roots[0], rs.positive_roots[1]
    assert killing_pairing(rs, a, b) == pytest.approx(float(a @ b))


def test_stored_root_norms_match_sl_n_oracle():
    # dual Killing form on diag functionals of sl_n is dot/(2n)
    for n in (2, 3, 4):
        rs = build_root_system(parse_group(f"SL({n},R)"))
        eps = np.stack([rs.stored_to_eps(a) for a in rs.positive_roots])
        for i in range(len(eps)):
            for j in range(len(eps)):
                expect = float(eps[i] @ eps[j]) / (2.0 * n)
                got = killing_pairing(rs, rs.positive_roots[i], rs.positive_roots[j])
                assert got == pytest.approx(expect, rel=1e-10, abs=1e-12)


def test_matrix_killing_oracle_sl3():
    alg = MatrixAlgebra(sl_basis(3))
    rng = np.random.default_rng(11)
    for _ in range(5):
        h1 = rng.normal(size=3)
        h1 -= h1.mean()
        h2 = rng.normal(size=3)
        h2 -= h2.mean()
        got = alg.killing(sl_cartan(3, h1), sl_cartan(3, h2))
        assert got == pytest.approx(6.0 * float(h1 @ h2), rel=1e-10)


def test_matrix_killing_oracle_so31():
    alg = MatrixAlgebra(so_pq_basis(3, 1))
    got = alg.killing(so_n1_cartan(3, 1.0), so_n1_cartan(3, 1.0))
    assert got == pytest.approx(4.0, rel=1e-10)  # 2(n-1) with n = 3


def test_simple_reflection_involution():
    rs = build_root_system(parse_group("split:F4"))
    rng = np.random.default_rng(3)
    v = rng.normal(size=rs.rank)
    for i in range(rs.rank):
        w = simple_reflection(rs, i)
        assert np.allclose(w.apply(w.apply(v)), v)


def test_dominantize_reaches_chamber():
    rs = build_root_system(parse_group("split:B3"))
    rng = np.random.default_rng(5)
    for _ in range(20):
        v = rng.normal(size=rs.rank)
        vd, w = dominantize(rs, v)
        assert np.all(rs.simple_roots @ vd >= -1e-9)
        assert np.allclose(w.apply(v), vd)


def test_weyl_orders():
    for name, order in [
        ("SL(3,R)", 6),
        ("SL(4,R)", 24),
        ("Sp(4,R)", 8),
        ("split:G2", 12),
        ("split:D4", 192),
        ("SO(5,1)", 2),
    ]:
        rs = build_root_system(parse_group(name))
        assert len(weyl_enumerate(rs)) == order


def test_weyl_orbit_of_rho_is_free():
    rs = build_root_system(parse_group("Sp(4,R)"))
    orbit = weyl_orbit(rs, rs.rho)
    assert len(orbit) == 8


def test_longest_element_negates_positives():
    for name in ["SL(3,R)", "split:B2", "split:G2", "split:E6"]:
        rs = build_root_system(parse_group(name))
        w0 = longest_element(rs)
        image = rs.positive_roots @ w0.matrix.T
        # w0 maps the positive system to its negative
        for row in image:
            assert min(np.linalg.norm(rs.positive_roots + row, axis=1)) < 1e-8


def test_w0_invariants_paper_values():
    cases = {
        "split:A2": (0, 1),
        "split:A3": (1, 1),
        "split:B3": (3, 0),
        "split:D5": (3, 1),
        "split:E6": (2, 2),
        "split:E7": (7, 0),
        "split:G2": (2, 0),
    }
    for name, (neg_tr, dplus) in cases.items():
        rs = build_root_system(parse_group(name))
        tr, dp, dm = w0_invariants(rs)
        assert (-tr, dp) == (neg_tr, dplus)
        assert dp + dm == rs.rank
