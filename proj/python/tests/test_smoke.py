import math

import numpy as np
import pytest

import sdsq


def test_operators_are_hermitian():
    h, m = sdsq.build_operators(4)
    assert h.shape == (16, 16)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(m, m.conj().T)


def test_decompose_counts_and_round_trip():
    _, m = sdsq.build_operators(4, 0.01)
    terms = sdsq.decompose(m)
    assert len(terms) == 57
    assert np.allclose(sdsq.reconstruct(terms), m, atol=1e-12)


def test_vqe_reaches_exact_minimum_at_four_qubits():
    run = sdsq.run_vqe(4, seeds=[1, 2, 3])
    assert run["gap"] <= 1e-6
    assert len(run["starts"]) == 3


def test_filter_spectrum():
    s = sdsq.constrained_spectrum(4)
    assert np.allclose(s["eigenvalues"], [0.0, 0.935639, 3.29768, 7.67034], atol=1e-3)
    assert s["eigenvectors"].shape == (4, 16)


def test_thermo():
    r_bh, r_ch, _ = sdsq.horizons(0.5, 0.01)
    assert r_bh == pytest.approx(1.00337, abs=1e-3)
    assert r_ch == pytest.approx(16.797, abs=1e-3)
    assert sdsq.nariai_mass(0.01) == pytest.approx(10 / 3)
    assert sdsq.thermo_point(sdsq.nariai_mass(0.01), 0.01)["beta_bh"] is None
    assert sdsq.partition_function(0.0) == pytest.approx(0.243896252570801, rel=1e-10)
    with pytest.raises(sdsq.NoHorizonError):
        sdsq.horizons(4.0, 0.01)


def test_wavefunction_grid_norm():
    s = sdsq.constrained_spectrum(4)
    grid = sdsq.sample_wavefunction(s["eigenvectors"][0], 4)
    assert grid["values"].shape == (161, 161)
    assert grid["norm"] == pytest.approx(1.0, abs=1e-3)


def test_wkb_turning_point_flag():
    value, region = sdsq.wkb(0.5, 1.0, 0.5, 0.01)
    assert region in {"allowed", "forbidden", "turning_point"}
    assert math.isfinite(abs(value))


def test_errors_map_to_exceptions():
    with pytest.raises(sdsq.DimensionError):
        sdsq.build_operators(3)
    with pytest.raises(sdsq.Error):
        sdsq.constrained_spectrum(4, method="nonsense")
