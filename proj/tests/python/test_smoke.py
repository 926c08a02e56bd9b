import json
import os
import subprocess

import numpy as np
import pytest

import roal


def test_embedding_is_the_real_block_form():
    re = np.array([[1.0, 2.0], [3.0, 4.0]])
    im = np.array([[0.5, -1.0], [2.0, 0.0]])
    b = roal.embed(re, im)
    assert b.shape == (4, 4)
    np.testing.assert_array_equal(b[:2, :2], re)
    np.testing.assert_array_equal(b[:2, 2:], -im)
    np.testing.assert_array_equal(b[2:, :2], im)


def test_complex_positivity_matches_numpy():
    rng = np.random.default_rng(7)
    for _ in range(50):
        re = rng.standard_normal((3, 3))
        im = rng.standard_normal((3, 3))
        re = re + re.T
        im = im - im.T
        shift = rng.uniform(-1.0, 6.0)
        re = re + shift * np.eye(3)
        h = re + 1j * im
        expected = np.linalg.eigvalsh(h).min() >= -1e-9
        assert roal.complex_is_psd(re, im) == expected


def test_spin_system_closure():
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.array([[1.0, 0.0], [0.0, -1.0]])
    flags = roal.subspace_flags([sx, sz])
    assert flags["selfadjoint"]
    assert not flags["jordan_closed"]
    assert roal.jordan_closure_dimension([sx, sz]) == 3


def test_f_transform_round_trip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = rng.standard_normal((3, 3))
        x = p @ p.T + (rng.standard_normal((3, 3)) - rng.standard_normal((3, 3)).T)
        x = 0.5 * (x - x.T) + p @ p.T
        assert roal.is_real_positive(x)
        w, dist, ok = roal.f_transform(x)
        assert ok and dist <= 1 + 1e-9
        np.testing.assert_allclose(w, x @ np.linalg.inv(np.eye(3) + x), atol=1e-12)
        np.testing.assert_allclose(roal.f_transform_inverse(w), x, atol=1e-9 * (1 + np.abs(x).max()))


def test_functional_norm_is_the_trace_norm_on_full_algebras():
    g = np.array([[1.0, 0.6], [-0.6, 1.0]])
    lo, hi = roal.functional_norm(g)
    nuc = np.linalg.svd(g, compute_uv=False).sum()
    assert abs(lo - nuc) <= 1e-6 and hi >= lo - 1e-12


def test_transpose_and_conjugation_maps():
    assert roal.transpose_choi_lambda_min(2) == pytest.approx(-1.0, abs=1e-9)
    rng = np.random.default_rng(3)
    ks = [rng.standard_normal((2, 3)) for _ in range(2)]
    assert roal.is_cp_conjugation(ks)
    residual, gap = roal.stinespring_residual(ks)
    assert residual <= 1e-8 and gap <= 1e-6


def test_catalog_from_python():
    names = [n for n, _ in roal.list_scenarios()]
    assert names == sorted(names) and "expoly" in names
    v = roal.run_scenario("meyer_invariance", seed=2)
    assert v["scenario"] == "meyer_invariance" and v["overall"] is True
    assert v == roal.run_scenario("meyer_invariance", seed=2)
    with pytest.raises(KeyError):
        roal.run_scenario("bogus")


@pytest.mark.skipif("ROAL_BIN" not in os.environ, reason="CLI binary path not provided")
def test_cli_json_matches_the_python_verdict(tmp_path):
    out = tmp_path / "v.json"
    subprocess.run([os.environ["ROAL_BIN"], "catalog", "run", "triangle_eq3", "--seed", "4", "--json", str(out)],
                   check=True, capture_output=True)
    assert json.loads(out.read_text()) == roal.run_scenario("triangle_eq3", seed=4)
