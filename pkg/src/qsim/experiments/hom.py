"""Two-photon interference dip: fixture graph and delay sweep.

Two single-photon sources hit a 50:50 beam splitter watched by two
detectors. With perfectly overlapping envelopes the photons bunch and the
coincidence probability vanishes; delaying one envelope center restores
distinguishability and the coincidence rate climbs toward 1/2.
"""

from __future__ import annotations

import uuid

from .graph_io import ExperimentSpec, parse_experiment
from .results import ResultSet
from .runner import run_experiment, sweep_envelope_center

HOM_DEFAULT_CUTOFF_DIM = 4


def build_hom_spec(
    delays=None,
    sigma: float = 1.0,
    omega: float = 0.0,
    cutoff: int = HOM_DEFAULT_CUTOFF_DIM,
    delay: float = 0.0,
) -> ExperimentSpec:
    """Canonical two-source dip graph; ``delays`` arms the sweep harness."""
    envelope = {"time": 0.0, "sigma": sigma, "omega": omega}
    options = {}
    if delays is not None:
        options["hom_sweep"] = {"source": "src_b", "delays": [float(d) for d in delays]}
    obj = {
        "version": "qsim_graph_v1",
        "devices": [
            {"id": "src_a", "type": "single_photon_source", "parameters": dict(envelope)},
            {
                "id": "src_b",
                "type": "single_photon_source",
                "parameters": {**envelope, "envelope_center": float(delay)},
            },
            {"id": "bs", "type": "beam_splitter", "parameters": {}},
            {"id": "det_a", "type": "photon_detector", "parameters": {}},
            {"id": "det_b", "type": "photon_detector", "parameters": {}},
        ],
        "connections": [
            {"from": "src_a.out", "to": "bs.in_a"},
            {"from": "src_b.out", "to": "bs.in_b"},
            {"from": "bs.out_a", "to": "det_a.in"},
            {"from": "bs.out_b", "to": "det_b.in"},
        ],
        "sim": {"until": "1.0", "seed": None, "cutoff": cutoff, "options": options},
    }
    return parse_experiment(obj)


def run_hom_point(
    delay: float, sigma: float = 1.0, omega: float = 0.0, cutoff: int = HOM_DEFAULT_CUTOFF_DIM
) -> tuple[float, float]:
    """(overlap weight, coincidence probability) at one envelope delay."""
    spec = build_hom_spec(sigma=sigma, omega=omega, cutoff=cutoff)
    table = sweep_envelope_center(spec, "src_b", [delay])
    _, lam, p = table.rows[0]
    return lam, p


def run_hom_sweep(
    delays,
    sigma: float = 1.0,
    omega: float = 0.0,
    cutoff: int = HOM_DEFAULT_CUTOFF_DIM,
    run_id: str | None = None,
) -> ResultSet:
    spec = build_hom_spec(delays=delays, sigma=sigma, omega=omega, cutoff=cutoff)
    rs = run_experiment(spec, run_id=run_id or uuid.uuid4().hex)
    rs.metadata.update({"experiment": "hom_sweep", "sigma": sigma, "omega": omega})
    return rs
