"""Sequential joint-detection decoding packaged as an experiment run.

Wraps the decoder in a ResultSet: the round-by-round transcript as a table,
per-pulse Wigner maps of the stored snapshots as grids, and the declared
codeword in the metadata.
"""

from __future__ import annotations

import uuid

import numpy as np

from ..devices.jdr import DEFAULT_ALPHA, DEFAULT_PULSES, DecodeResult, sequential_decode
from ..fock.operators import FockCutoff
from ..fock.phase_space import default_phase_space_axes, wigner_grid
from .results import ResultSet, Table

JDR_DEFAULT_CUTOFF_DIM = 12
TRANSCRIPT_COLUMNS = ("round", "guess", "p_yes", "mismatches", "outcome")


def transcript_table(result: DecodeResult) -> Table:
    rows = [
        [row.round, row.guess, row.p_yes, row.mismatches, row.outcome]
        for row in result.transcript
    ]
    return Table(columns=list(TRANSCRIPT_COLUMNS), rows=rows)


def run_jdr(
    message: int,
    pulses: int = DEFAULT_PULSES,
    alpha: float = DEFAULT_ALPHA,
    cutoff: FockCutoff | None = None,
    mode: str = "probability",
    seed: int | None = None,
    start_index: int = 0,
    run_id: str | None = None,
    wigner: bool = True,
    wigner_points: int = 101,
) -> ResultSet:
    cutoff = cutoff if cutoff is not None else FockCutoff(JDR_DEFAULT_CUTOFF_DIM)
    rng = np.random.default_rng(seed) if mode == "sample" else None
    result = sequential_decode(
        message, pulses=pulses, alpha=alpha, cutoff=cutoff, mode=mode,
        rng=rng, start_index=start_index,
    )
    rs = ResultSet(run_id or uuid.uuid4().hex)
    rs.tables["jdr_transcript"] = transcript_table(result)
    rs.metadata.update(
        {
            "experiment": "jdr",
            "message": message,
            "pulses": pulses,
            "alpha": alpha,
            "mode": mode,
            "start_index": start_index,
            "cutoff": cutoff.dim,
            "declared": result.declared,
            "declared_bits": result.declared_bits,
            "rounds": result.rounds,
        }
    )
    if wigner:
        x_axis, p_axis = default_phase_space_axes(points=wigner_points)
        for name, states in result.snapshots:
            for pulse, state in enumerate(states):
                rs.add_grid(f"wigner_{name}_pulse{pulse}", wigner_grid(state, x_axis, p_axis))
    return rs
