import json
from decimal import Decimal

import pytest

from qsim.des.engine import Device, Emission, Graph, Port, connect, run
from qsim.des.signals import (
    GENERIC_QUANTUM_SIGNAL,
    GENERIC_SIGNAL,
    PHOTONIC_QUANTUM_SIGNAL,
    Signal,
    StateHandle,
    classical_signal,
    photonic_signal,
)
from qsim.des.simtime import SimTime, set_time_precision, time_precision
from qsim.errors import (
    CausalityViolationError,
    ConnectionError_,
    PortTypeMismatchError,
    SimultaneityConflictError,
)
from qsim.fock.operators import FockCutoff
from qsim.fock.states import prepare_state
from qsim.temporal import GaussianEnvelope


def test_simtime_decimal_exactness():
    t = SimTime.from_seconds(0.1) + SimTime.from_seconds(0.2)
    assert t.value == Decimal("0.3")  # repr-based conversion, no float drift
    assert SimTime(Decimal("1e-12")) < SimTime(Decimal("2e-12"))


def test_simtime_precision_context():
    assert time_precision() == 24
    set_time_precision(40)
    try:
        third = SimTime(Decimal(1)) - SimTime(Decimal(2)) + SimTime(Decimal(1))
        assert third.value == Decimal("0")
        assert time_precision() == 40
    finally:
        set_time_precision(24)


def test_signal_kind_subtyping():
    assert PHOTONIC_QUANTUM_SIGNAL.is_subtype_of(GENERIC_QUANTUM_SIGNAL)
    assert PHOTONIC_QUANTUM_SIGNAL.is_subtype_of(GENERIC_SIGNAL)
    assert not GENERIC_SIGNAL.is_subtype_of(PHOTONIC_QUANTUM_SIGNAL)


class _Pitcher(Device):
    """Emits one classical signal at a fixed time on init."""

    def __init__(self, device_id, at="1.0", value=42):
        super().__init__(device_id)
        self.at = SimTime(Decimal(at))
        self.value = value

    def ports(self):
        return (Port("out", "output", GENERIC_SIGNAL),)

    def init_action(self):
        return [Emission("out", classical_signal(self.value), self.at)]


class _Catcher(Device):
    def __init__(self, device_id):
        super().__init__(device_id)
        self.seen = []

    def ports(self):
        return (Port("in", "input", GENERIC_SIGNAL), Port("in2", "input", GENERIC_SIGNAL))

    def event_action(self, time, inputs):
        self.seen.append((str(time), sorted(inputs)))
        return []


class _Echo(Device):
    """Forwards its input after a fixed lag; lag < 0 breaks causality."""

    def __init__(self, device_id, lag="0.5"):
        super().__init__(device_id)
        self.lag = Decimal(lag)

    def ports(self):
        return (Port("in", "input", GENERIC_SIGNAL), Port("out", "output", GENERIC_SIGNAL))

    def event_action(self, time, inputs):
        return [Emission("out", inputs["in"], time + self.lag)]


def _wire(*devices):
    graph = Graph()
    for dev in devices:
        graph.add_device(dev)
    return graph


def test_connect_checks_direction_and_kind():
    graph = _wire(_Pitcher("p"), _Catcher("c"))
    with pytest.raises(ConnectionError_):
        connect(graph, "p.out", "p.out")

    class _QuantumIn(Device):
        def ports(self):
            return (Port("in", "input", PHOTONIC_QUANTUM_SIGNAL),)

    graph2 = _wire(_Pitcher("p"), _QuantumIn("q"))
    with pytest.raises(PortTypeMismatchError):
        connect(graph2, "p.out", "q.in")


def test_output_and_input_fanout_forbidden():
    graph = _wire(_Pitcher("p"), _Catcher("c1"), _Catcher("c2"))
    connect(graph, "p.out", "c1.in")
    with pytest.raises(ConnectionError_):
        connect(graph, "p.out", "c2.in")
    graph2 = _wire(_Pitcher("p1"), _Pitcher("p2"), _Catcher("c"))
    connect(graph2, "p1.out", "c.in")
    with pytest.raises(ConnectionError_):
        connect(graph2, "p2.out", "c.in")


def test_same_time_same_device_events_merge():
    graph = _wire(_Pitcher("p1", at="1.0"), _Pitcher("p2", at="1.0"), _Catcher("c"))
    connect(graph, "p1.out", "c.in")
    connect(graph, "p2.out", "c.in2")
    trace = run(graph, "2.0")
    catcher = graph.device("c")
    assert catcher.seen == [("1.0", ["in", "in2"])]
    assert len(trace.events) == 1


def test_same_port_same_time_conflicts():
    graph = _wire(_Pitcher("p", at="1.0"), _Echo("e", lag="0"), _Catcher("c"))

    class _Double(Device):
        def ports(self):
            return (Port("out", "output", GENERIC_SIGNAL),)

        def init_action(self):
            t = SimTime(Decimal("1.0"))
            return [
                Emission("out", classical_signal(1), t),
                Emission("out", classical_signal(2), t),
            ]

    graph2 = _wire(_Double("d"), _Catcher("c"))
    connect(graph2, "d.out", "c.in")
    with pytest.raises(SimultaneityConflictError):
        run(graph2, "2.0")


def test_causality_violation_detected():
    graph = _wire(_Pitcher("p", at="1.0"), _Echo("e", lag="-0.5"), _Catcher("c"))
    connect(graph, "p.out", "e.in")
    connect(graph, "e.out", "c.in")
    with pytest.raises(CausalityViolationError):
        run(graph, "3.0")


def test_unconnected_output_warns_and_drops():
    graph = _wire(_Pitcher("p"))
    trace = run(graph, "2.0")
    assert len(trace.warnings) == 1
    assert "not connected" in trace.warnings[0]
    assert trace.events == []


def test_horizon_is_inclusive():
    graph = _wire(_Pitcher("p", at="2.0"), _Catcher("c"))
    connect(graph, "p.out", "c.in")
    trace = run(graph, "2.0")
    assert len(trace.events) == 1
    graph2 = _wire(_Pitcher("p", at="2.0"), _Catcher("c"))
    connect(graph2, "p.out", "c.in")
    assert run(graph2, "1.999999").events == []


def test_event_order_breaks_ties_by_device_then_seq():
    graph = _wire(_Pitcher("b", at="1.0", value=2), _Pitcher("a", at="1.0", value=1),
                  _Catcher("ca"), _Catcher("cb"))
    connect(graph, "a.out", "ca.in")
    connect(graph, "b.out", "cb.in")
    trace = run(graph, "2.0")
    assert [ev.device for ev in trace.events] == ["ca", "cb"]


def test_trace_jsonl_round_trips():
    graph = _wire(_Pitcher("p", at="1.5"), _Echo("e"), _Catcher("c"))
    connect(graph, "p.out", "e.in")
    connect(graph, "e.out", "c.in")
    trace = run(graph, "5")
    lines = trace.to_jsonl().splitlines()
    assert len(lines) == len(trace.events) == 2
    records = [json.loads(line) for line in lines]
    assert [r["time"] for r in records] == ["1.5", "2.0"]
    for r in records:
        assert set(r) == {"time", "device", "ports", "summary"}


def test_photonic_signal_carries_shared_handle():
    state = prepare_state("vacuum", FockCutoff(2))
    handle = StateHandle(state)
    env = GaussianEnvelope(t0=0.0, sigma=1.0, omega=0.0)
    sig = photonic_signal(handle, 0, env)
    assert sig.kind is PHOTONIC_QUANTUM_SIGNAL
    assert sig.payload.handle is handle
    desc = sig.describe()
    assert desc["mode"] == 0 and desc["modes_total"] == 1
    with pytest.raises(ValueError):
        photonic_signal(handle, 1, env)  # only one mode in the handle


def test_classical_signal_describe():
    sig = classical_signal({"clicks": 3})
    assert sig.describe()["kind"] == "GenericSignal"
    assert isinstance(sig, Signal)
