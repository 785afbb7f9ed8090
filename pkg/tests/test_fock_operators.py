import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsim.errors import InvalidCutoffError
from qsim.fock.operators import (
    FockCutoff,
    GateParams,
    beamsplitter,
    build_gate,
    embed_operator,
    ladder_operators,
    operator_max_norm_defect,
    position_operator,
)

C8 = FockCutoff(8)


def test_cutoff_rejects_small_dims():
    with pytest.raises(InvalidCutoffError):
        FockCutoff(1)
    with pytest.raises(InvalidCutoffError):
        FockCutoff(0)
    assert FockCutoff(2).dim == 2


def test_ladder_matrix_elements():
    a, adag, n = ladder_operators(FockCutoff(5))
    for k in range(4):
        assert adag.matrix[k + 1, k] == pytest.approx(math.sqrt(k + 1))
        assert a.matrix[k, k + 1] == pytest.approx(math.sqrt(k + 1))
    assert np.array_equal(np.diag(n.matrix).real, np.arange(5))
    assert np.allclose(adag.matrix, a.dagger().matrix)


def test_commutator_exact_on_interior_block():
    a, adag, _ = ladder_operators(C8)
    comm = a.matrix @ adag.matrix - adag.matrix @ a.matrix
    # the top corner absorbs the truncation; everything below is identity
    block = comm[:6, :6]
    assert np.abs(block - np.eye(6)).max() < 1e-14
    assert comm[7, 7] == pytest.approx(-(C8.dim - 1))


def test_number_equals_adag_a():
    a, adag, n = ladder_operators(C8)
    assert np.abs(n.matrix - adag.matrix @ a.matrix).max() < 1e-14


def test_position_operator_hermitian():
    x = position_operator(C8)
    assert np.abs(x - x.conj().T).max() < 1e-14


GATE_CASES = [
    ("displacement", GateParams(alpha=0.6 - 0.2j)),
    ("squeeze", GateParams(z=0.5 * np.exp(0.8j))),
    ("rotation", GateParams(phi=2.1)),
    ("beamsplitter", GateParams(theta=0.6, phi=1.0)),
    ("cubic_phase", GateParams(gamma=0.15)),
]


@pytest.mark.parametrize("kind,params", GATE_CASES)
def test_gates_unitary(kind, params):
    gate = build_gate(kind, params, C8)
    assert operator_max_norm_defect(gate) < 1e-10


@settings(max_examples=25, deadline=None)
@given(
    theta=st.floats(-math.pi, math.pi),
    phi=st.floats(-math.pi, math.pi),
)
def test_beamsplitter_unitary_for_any_angles(theta, phi):
    gate = beamsplitter(theta, phi, FockCutoff(4))
    assert operator_max_norm_defect(gate) < 1e-10


def test_beamsplitter_transmission_amplitudes():
    theta, phi = 0.7, 0.3
    gate = beamsplitter(theta, phi, FockCutoff(3))
    dim = 3
    vec = np.zeros(dim * dim, dtype=complex)
    vec[1 * dim + 0] = 1.0  # |1,0>
    out = gate.matrix @ vec
    t = out[1 * dim + 0]
    r = out[0 * dim + 1]
    assert t == pytest.approx(math.cos(theta), abs=1e-12)
    assert abs(r) == pytest.approx(math.sin(theta), abs=1e-12)
    assert np.angle(r) == pytest.approx(phi, abs=1e-12)


def test_rotation_is_diagonal_phase():
    gate = build_gate("rotation", GateParams(phi=0.9), FockCutoff(6))
    expected = np.diag(np.exp(1j * 0.9 * np.arange(6)))
    assert np.abs(gate.matrix - expected).max() < 1e-12


def test_identity_limits():
    for kind, params in (
        ("displacement", GateParams(alpha=0.0)),
        ("squeeze", GateParams(z=0.0)),
        ("rotation", GateParams(phi=0.0)),
        ("beamsplitter", GateParams(theta=0.0, phi=0.0)),
        ("cubic_phase", GateParams(gamma=0.0)),
    ):
        gate = build_gate(kind, params, FockCutoff(5))
        size = gate.matrix.shape[0]
        assert np.abs(gate.matrix - np.eye(size)).max() < 1e-14


def test_embed_single_mode_matches_kron():
    cutoff = FockCutoff(3)
    gate = build_gate("displacement", GateParams(alpha=0.4), cutoff)
    embedded = embed_operator(gate, (1,), 3, cutoff)
    eye = np.eye(3)
    direct = np.kron(np.kron(eye, gate.matrix), eye)
    assert np.abs(embedded.matrix - direct).max() < 1e-13


def test_embed_two_mode_reversed_targets():
    cutoff = FockCutoff(3)
    gate = beamsplitter(0.5, 0.2, cutoff)
    fwd = embed_operator(gate, (0, 1), 2, cutoff)
    rev = embed_operator(gate, (1, 0), 2, cutoff)
    dim = 3
    swap = np.zeros((dim * dim, dim * dim))
    for i in range(dim):
        for j in range(dim):
            swap[j * dim + i, i * dim + j] = 1.0
    assert np.abs(rev.matrix - swap @ fwd.matrix @ swap).max() < 1e-13


def test_build_gate_rejects_unknown_kind():
    with pytest.raises(ValueError):
        build_gate("teleporter", GateParams(), C8)


def test_gate_params_reject_non_finite():
    with pytest.raises(ValueError):
        GateParams(alpha=float("nan"))
    with pytest.raises(ValueError):
        GateParams(theta=float("inf"))
