import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalar_ab.constants import SI
from scalar_ab.eit import LambdaSystem, dip_metric, lambda_from_drive, probe_response, scan_grid, transparency_scan
from scalar_ab.errors import InvalidInputError
from scalar_ab.floquet import LevelScheme, dominant_splitting, make_drive

G3 = 1.0


def system(**kw):
    base = dict(delta_p=0.0, delta_c=0.0, rabi_p=0.01, rabi_c=G3, gamma_3=G3, gamma_2=0.0)
    base.update(kw)
    return LambdaSystem(**base)


def test_two_level_limit_is_lorentzian():
    sys_ = system(rabi_c=0.0)
    grid = scan_grid(sys_, 2001)
    curve = transparency_scan(sys_, grid)
    # Im rho = (rabi_p/2)(gamma_3/2) / ((gamma_3/2)^2 + delta^2): FWHM gamma_3
    peak = (0.01 / 2) / (G3 / 2)
    expected = peak * (G3 / 2) ** 2 / (grid ** 2 + (G3 / 2) ** 2)
    assert np.max(np.abs(curve.absorption - expected)) < 1e-9
    assert grid[np.argmax(curve.absorption)] == 0.0
    left = curve.absorption[grid <= 0]
    right = curve.absorption[grid >= 0]
    assert np.all(np.diff(left) > 0) and np.all(np.diff(right) < 0)


def test_perfect_transparency():
    on = probe_response(system(gamma_2=0.0, rabi_c=G3))
    assert on == 0
    peak = probe_response(system(rabi_c=0.0)).imag
    for dc in (0.0, 0.3, -0.7):
        assert abs(probe_response(system(delta_p=dc, delta_c=dc)).imag) < 1e-12 * peak


def test_hole_with_small_decoherence():
    peak = probe_response(system(rabi_c=0.0)).imag
    hole = probe_response(system(gamma_2=1e-3 * G3, rabi_c=G3)).imag
    assert hole < 0.1 * peak


def test_dip_at_two_photon_resonance():
    sys_ = system(delta_c=0.2, gamma_2=0.0)
    grid = np.union1d(scan_grid(sys_, 2001), [0.2])
    dip = dip_metric(transparency_scan(sys_, grid))
    assert dip.present
    assert dip.center == 0.2
    assert abs(dip.depth_fraction - 1) < 1e-9


def test_dip_metric_cases():
    assert not dip_metric(transparency_scan(system(rabi_c=0.0), scan_grid(system()))).present
    sys_ = system(gamma_2=1e-3 * G3, rabi_c=G3)
    dip = dip_metric(transparency_scan(sys_, scan_grid(sys_)))
    assert dip.present and dip.depth_fraction > 0.9
    assert dip.center == 0.0


def test_dip_fills_as_decoherence_grows():
    gammas = [0.0, 1e-3, 1e-2, 0.05, 0.1, 0.2, 0.4]
    floor, depth = [], []
    for g2 in gammas:
        sys_ = system(gamma_2=g2)
        floor.append(probe_response(sys_).imag)
        depth.append(dip_metric(transparency_scan(sys_, scan_grid(sys_))).depth_fraction)
    assert np.all(np.diff(floor) > 0)
    assert np.all(np.diff(depth) < 0)


def test_local_minimum_condition():
    # dip present whenever gamma_2 < rabi_c^2 / (2 gamma_3)
    for rabi_c, g2 in [(1.0, 0.3), (0.5, 0.1), (2.0, 1.5)]:
        assert g2 < rabi_c ** 2 / (2 * G3)
        sys_ = system(rabi_c=rabi_c, gamma_2=g2)
        assert dip_metric(transparency_scan(sys_, scan_grid(sys_, 8001))).present


def test_scan_must_cover_ten_linewidths():
    sys_ = system()
    with pytest.raises(InvalidInputError):
        transparency_scan(sys_, np.linspace(-5, 5, 101))


@pytest.mark.parametrize("kw", [
    dict(gamma_3=0.0), dict(gamma_2=-1e-3), dict(rabi_c=-1.0), dict(rabi_p=0.0), dict(rabi_p=0.2),
])
def test_invariants(kw):
    with pytest.raises(InvalidInputError):
        system(**kw)


def test_offset_from_drive():
    drive = make_drive(5e-4, 1e8, SI)
    split = dominant_splitting(LevelScheme.from_energies([0.0]), drive)
    sys_ = lambda_from_drive(drive, delta_p=0.0, delta_c=0.0, rabi_p=1e6, rabi_c=1e7, gamma_3=1e7)
    assert sys_.sideband_offset == pytest.approx(split.exact_shift_frequency(), rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(
    dp=st.floats(-20, 20), dc=st.floats(-5, 5), rabi_c=st.floats(0, 5),
    g2=st.floats(0, 2), g3=st.floats(0.1, 5),
)
def test_absorption_non_negative(dp, dc, rabi_c, g2, g3):
    sys_ = LambdaSystem(delta_p=dp, delta_c=dc, rabi_p=g3 / 20, rabi_c=rabi_c, gamma_3=g3, gamma_2=g2)
    assert probe_response(sys_).imag >= -1e-18
