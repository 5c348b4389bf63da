import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicritical.arithmetic import q_alpha
from bicritical.dynamics import (
    ToyModel,
    conjugate_seq,
    disk_to_w,
    level_data,
    orbit_of_one,
    ratio_spread,
    reconstruct,
    recurrence_probe,
    renorm_verify,
    renormalise_params,
    rotation_defect,
    toy_map_disk,
    toy_step,
    trajectory,
    w_to_disk,
)
from bicritical.errors import DomainError, NotInSet
from bicritical.model import GridPolicy

from conftest import GOLDEN, SILVER, expand

SMALL = GridPolicy(base_density=1024)


@pytest.fixture(scope="module")
def golden_model(golden_quarter):
    return ToyModel(golden_quarter, 10, policy=SMALL)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 0.999), st.floats(0.1, 3.0))
def test_rotation_defect_small(golden_quarter, golden_model, x, y):
    w = complex(x, golden_model.base_height(x) + y)
    assert rotation_defect(golden_quarter, w, golden_model) < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 0.999), st.floats(0.05, 3.0))
def test_trajectory_reconstructs(golden_quarter, golden_model, x, y):
    w = complex(x, golden_model.base_height(x) + y)
    traj = trajectory(golden_quarter, w, model=golden_model)
    back = reconstruct(golden_quarter, traj)
    assert abs(back.real - w.real) < 1e-8 and abs(back.imag - w.imag) < 1e-8


def test_step_from_zero(golden_quarter, golden_model):
    traj = trajectory(golden_quarter, 0j, model=golden_model)
    assert traj.exit == "K" and traj.exit_level == 0
    res = toy_step(golden_quarter, 0j, golden_model)
    assert res.case == 1
    alpha = (math.sqrt(5) - 1) / 2
    assert (-res.value.real) % 1.0 == pytest.approx(alpha, abs=1e-12)


def test_below_base_is_rejected(golden_quarter, golden_model):
    with pytest.raises(NotInSet):
        trajectory(golden_quarter, complex(0.5, -0.9), model=golden_model)


def test_disk_conventions():
    z = complex(0.3, 0.4)
    assert w_to_disk(disk_to_w(z)) == pytest.approx(z)
    assert disk_to_w(1 + 0j) == pytest.approx(0j)
    assert toy_map_disk(expand(GOLDEN, "0", 12), 0j) == 0j


def test_renormalise_params_shifts():
    s = expand(SILVER, "3/10", 12)
    r = renormalise_params(s)
    assert r.alphas == s.alphas[1:] and r.betas == s.betas[1:]
    assert r.eps[0] == -s.eps[1] and r.eps[1:] == s.eps[2:]
    assert float(r.alphas[0]) == pytest.approx(float(s.alphas[1]))


def test_conjugate_keeps_level_data():
    s = expand(SILVER, "3/10", 8)
    c = conjugate_seq(s)
    assert c.eps[0] == -s.eps[0] and level_data(c)[0] == level_data(s)[0]
    cc = conjugate_seq(c)
    assert level_data(cc) == level_data(s) and cc.a_coef == s.a_coef and cc.b_coef == s.b_coef


def test_orbit_beta_zero_prediction_is_q():
    s = expand(GOLDEN, "0", 14)
    a0 = float(s.alphas[0])
    recs = orbit_of_one(s, int(1 / a0), depth=10)
    for rec in recs:
        assert rec.predicted == pytest.approx(q_alpha(a0, float(rec.k)))
    assert recs[0].modulus == pytest.approx(1.0, abs=1e-6)


def test_orbit_ratio_spread_bounded():
    s = expand(SILVER, "1/4", 14)
    recs = orbit_of_one(s, int(1 / float(s.alphas[0])), depth=10)
    assert 1.0 <= ratio_spread(recs) < 3.0


def test_recurrence_probe():
    s = expand(GOLDEN, "1/4", 14)
    model = ToyModel(s, 8, policy=SMALL)
    assert recurrence_probe(s, 1 + 0j, 8, 2.0, model=model) == 1
    k1 = recurrence_probe(s, 1 + 0j, 8, 0.3, model=model)
    k2 = recurrence_probe(s, 1 + 0j, 8, 0.05, model=model)
    assert k1 is not None and k2 is not None and k1 <= k2


def test_renorm_verify_needs_depth():
    with pytest.raises(DomainError):
        renorm_verify(expand(GOLDEN, "1/4", 6), 6)


def test_renorm_verify_small_run():
    s = expand(GOLDEN, "1/4", 12)
    rep = renorm_verify(s, 6, samples=8, seed=1, angle_samples=256, policy=SMALL)
    # golden alpha has eps_0 = -1, so the check runs on the conjugate parameters
    assert rep.samples == 8 and rep.conjugated
    assert rep.point_max < 1e-3
    assert rep.set_radial < 0.1
