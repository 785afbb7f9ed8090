import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsim.errors import ShapeMismatchError
from qsim.fock.operators import FockCutoff, GateParams, build_gate
from qsim.fock.states import (
    joint_photon_number_distribution,
    mean_photon_number,
    partial_trace,
    prepare_state,
    tensor_product,
)
from qsim.temporal import (
    FULL_AXIS,
    GaussianEnvelope,
    OverlapWeight,
    TimeInterval,
    coincidence_probability,
    detection_probability,
    overlap_lambda_closed_form,
    overlap_lambda_quadrature,
    partial_overlap_bs_apply,
)

C3 = FockCutoff(3)
BS5050 = build_gate("beamsplitter", GateParams(theta=math.pi / 4), C3)


def _fock_pair(n: int, m: int, cutoff=C3):
    return tensor_product(prepare_state("fock", cutoff, n=n), prepare_state("fock", cutoff, n=m))


def test_envelope_is_normalized():
    env = GaussianEnvelope(t0=0.3, sigma=0.7, omega=2.0)
    t = np.linspace(-8, 8, 6001)
    density = np.abs(env(t)) ** 2
    assert np.sum(density) * (t[1] - t[0]) == pytest.approx(1.0, abs=1e-9)


def test_envelope_rejects_bad_sigma():
    with pytest.raises(ValueError):
        GaussianEnvelope(t0=0.0, sigma=0.0, omega=0.0)


def test_interval_intersection():
    a = TimeInterval(0.0, 2.0)
    b = TimeInterval(1.0, 3.0)
    both = a.intersect(b)
    assert (both.lo, both.hi) == (1.0, 2.0)
    assert a.intersect(TimeInterval(5.0, 6.0)) is None


def test_closed_form_delay_and_detuning():
    e0 = GaussianEnvelope(t0=0.0, sigma=1.0, omega=0.0)
    e_delay = GaussianEnvelope(t0=2.0, sigma=1.0, omega=0.0)
    e_detune = GaussianEnvelope(t0=0.0, sigma=1.0, omega=1.0)
    assert overlap_lambda_closed_form(e0, e_delay).value == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert overlap_lambda_closed_form(e0, e_detune).value == pytest.approx(math.exp(-0.5), abs=1e-12)


def test_quadrature_route_equal_widths():
    e0 = GaussianEnvelope(t0=0.0, sigma=1.0, omega=0.0)
    e_delay = GaussianEnvelope(t0=2.0, sigma=1.0, omega=0.0)
    e_detune = GaussianEnvelope(t0=0.0, sigma=1.0, omega=1.0)
    assert overlap_lambda_quadrature(e0, e0).value == pytest.approx(1.0, abs=1e-9)
    assert overlap_lambda_quadrature(e0, e_delay).value == pytest.approx(math.exp(-1.0), abs=1e-9)
    # |integral psi_a* psi_b| picks up exp(-sigma^2 dw^2 / 4) under detuning
    assert overlap_lambda_quadrature(e0, e_detune).value == pytest.approx(
        math.exp(-0.25), abs=1e-9
    )


def test_overlap_weight_bounds():
    with pytest.raises(ValueError):
        OverlapWeight(1.5, "quadrature")
    w = OverlapWeight(1.0 + 5e-13, "quadrature")
    assert w.clipped == 1.0


def test_detection_probability_completeness():
    env = GaussianEnvelope(t0=0.0, sigma=1.0, omega=0.0)
    shifted = GaussianEnvelope(t0=1.3, sigma=1.0, omega=0.0)
    for n, m in ((1, 0), (1, 1), (2, 1)):
        total = sum(
            detection_probability(n, m, k, l, FULL_AXIS, FULL_AXIS, env, shifted, BS5050)
            for k in range(3)
            for l in range(3)
            if k + l <= n + m
        )
        assert total == pytest.approx(1.0, abs=1e-9)


def test_detection_probability_disjoint_windows_pass_through():
    env = GaussianEnvelope(t0=0.0, sigma=1.0, omega=0.0)
    left = TimeInterval(-50.0, -10.0)
    right = TimeInterval(10.0, 50.0)
    # no common support: photons never meet, counts swap ports unchanged
    p = detection_probability(1, 0, 0, 1, left, right, env, env, BS5050)
    assert p == pytest.approx(1.0, abs=1e-12)
    p_keep = detection_probability(1, 0, 1, 0, left, right, env, env, BS5050)
    assert p_keep == pytest.approx(0.0, abs=1e-12)


def test_full_overlap_bunches_photons():
    out = partial_overlap_bs_apply(_fock_pair(1, 1), 1.0)
    dist = joint_photon_number_distribution(out)
    assert dist[1, 1] == pytest.approx(0.0, abs=1e-12)
    assert dist[2, 0] == pytest.approx(0.5, abs=1e-12)
    assert dist[0, 2] == pytest.approx(0.5, abs=1e-12)


def test_zero_overlap_keeps_half_coincidence():
    out = partial_overlap_bs_apply(_fock_pair(1, 1), 0.0)
    assert coincidence_probability(out) == pytest.approx(0.5, abs=1e-12)


def test_zero_overlap_single_photon_splits_evenly():
    out = partial_overlap_bs_apply(_fock_pair(1, 0), 0.0)
    assert mean_photon_number(out, 0) == pytest.approx(0.5, abs=1e-12)
    assert mean_photon_number(out, 1) == pytest.approx(0.5, abs=1e-12)


def test_mixture_preserves_trace_and_positivity():
    for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
        rho = partial_overlap_bs_apply(_fock_pair(2, 1), lam).density_matrix()
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_mixture_handles_mixed_input():
    pure = _fock_pair(1, 1)
    mixed_in = pure.as_mixed()
    out_pure = partial_overlap_bs_apply(pure, 0.4).density_matrix()
    out_mixed = partial_overlap_bs_apply(mixed_in, 0.4).density_matrix()
    assert np.abs(out_pure - out_mixed).max() < 1e-12


def test_requires_two_mode_state():
    single = prepare_state("fock", C3, n=1)
    with pytest.raises(ShapeMismatchError):
        partial_overlap_bs_apply(single, 0.5)


@settings(max_examples=20, deadline=None)
@given(lam=st.floats(0.0, 1.0), mix=st.floats(0.0, 1.0))
def test_affinity_in_weight(lam, mix):
    joint = _fock_pair(1, 1)
    other = 1.0 - lam
    left = partial_overlap_bs_apply(joint, lam).density_matrix()
    right = partial_overlap_bs_apply(joint, other).density_matrix()
    target = mix * lam + (1.0 - mix) * other
    blend = partial_overlap_bs_apply(joint, target).density_matrix()
    assert np.abs(blend - (mix * left + (1.0 - mix) * right)).max() < 1e-10


def test_reduced_modes_after_partial_overlap():
    out = partial_overlap_bs_apply(_fock_pair(1, 1), 0.3)
    reduced = partial_trace(out, 0)
    assert np.trace(reduced.density_matrix()).real == pytest.approx(1.0, abs=1e-12)
