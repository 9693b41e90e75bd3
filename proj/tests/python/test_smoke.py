"""Smoke tests for the python bindings."""

import json

import maxlab


def test_cube_navigation():
    root = maxlab.DyadicCube(1, 0, [0])
    kids = maxlab.children(root, 5)
    assert len(kids) == 2
    assert kids[0].corner(0) == 0.0
    assert kids[1].corner(0) == 0.5
    assert maxlab.parent(kids[1]) == root

    square = maxlab.DyadicCube(2, 1, [0, 1])
    assert len(maxlab.children(square, 3)) == 4


def test_shifted_cover_ratio():
    cover = maxlab.shifted_cover([0.375], 0.25, 1000)
    assert cover.level == 1
    assert cover.shifted
    assert abs(cover.corner(0) - 1.0 / 3.0) < 1e-12
    for k in range(40):
        side = 1.0 / (k + 3)
        cover = maxlab.shifted_cover([0.5 - side / 2], side, 720720)
        assert cover.side <= 6 * side + 1e-9


def test_grid_function_masses():
    f = maxlab.GridFunction(1, 2, [4.0, 0.0, 0.0, 0.0])
    assert abs(f.mass(maxlab.DyadicCube(1, 1, [0])) - 1.0) < 1e-15
    assert abs(f.total_mass() - 1.0) < 1e-15

    g = maxlab.grid_from_json(f.to_json())
    assert g.values == f.values
    h = maxlab.grid_from_csv(f.to_csv())
    assert h.values == f.values


def test_dyadic_maximal_example():
    f = maxlab.GridFunction(1, 2, [4.0, 0.0, 0.0, 0.0])
    m = maxlab.dyadic_maximal(f)
    assert m.values == [4.0, 2.0, 1.0, 1.0]


def test_constants():
    w = maxlab.Weight(1, 1, [1.0, 4.0])
    assert abs(maxlab.ap_constant(w, 2.0).value - 25.0 / 16.0) < 1e-13
    assert abs(maxlab.ainf_hr_constant(w).value - 1.25) < 1e-13

    one = maxlab.Weight.constant(1, 3, 1.0)
    assert abs(maxlab.ainf_fw_constant(one).value - 1.0) < 1e-13

    cfg = maxlab.ExponentConfig(1, 2, [2.0, 2.0], 2.0, 0.5)
    assert abs(cfg.p - 1.0) < 1e-15
    apq = maxlab.apq_vec_constant([one, one], one, cfg)
    assert abs(apq.value - 1.0) < 1e-12


def test_carleson_roundtrip_and_constant():
    seq = maxlab.CarlesonSequence(1, 3)
    root = maxlab.DyadicCube(1, 0, [0])
    seq.set(root, 0.5)
    sigma = maxlab.Weight.constant(1, 3, 1.0)
    res = maxlab.carleson_constant(seq, sigma, 1.0)
    assert abs(res.value - 0.5) < 1e-15
    back = maxlab.carleson_from_json(seq.to_json(), 1, 3)
    assert back.at(root) == 0.5


def test_paraproduct_single_coefficient():
    phi = maxlab.HaarSymbol(4)
    phi.set(0, 0, 1.0)
    assert abs(maxlab.paraproduct_carleson(phi, 2.0) - 1.0) < 1e-15
    out = maxlab.paraproduct_apply(phi, maxlab.GridFunction.constant(1, 4, 1.0))
    one = maxlab.Weight.constant(1, 4, 1.0)
    assert abs(maxlab.lp_norm(out, one, 2.0) - 1.0) < 1e-14


def test_sandwich_on_random_data():
    f = maxlab.generate_weight("martingale:0.5,2", 3, 1, 4)
    cfg = maxlab.ExponentConfig(1, 1, [2.0], 2.0, 0.0)
    lower, upper = maxlab.multilinear_fractional_approx([f], cfg)
    oracle = maxlab.lattice_cube_maximal([f], cfg)
    for lo, mid, hi in zip(lower.values, oracle.values, upper.values):
        assert lo <= mid * (1 + 1e-9)
        assert mid <= hi * (1 + 1e-9)


def test_verify_and_report():
    rep = maxlab.verify_theorem("GRID_COVER", trials=25, seed=0)
    assert rep.passed
    payload = json.loads(rep.to_json())
    assert payload["theorem"] == "GRID_COVER"
    assert payload["pass"] is True
    assert len(payload["trials"]) == 25

    again = maxlab.verify_theorem("GRID_COVER", trials=25, seed=0)
    assert rep.to_json() == again.to_json()


def test_norm_estimate_trivial_band():
    one = maxlab.Weight.constant(1, 3, 1.0)
    cfg = maxlab.ExponentConfig(1, 1, [2.0], 2.0, 0.0)
    est = maxlab.operator_norm_estimate([one], one, cfg, random_trials=8, seed=0)
    assert 1.0 - 1e-12 <= est.value <= 2.0 + 1e-12
