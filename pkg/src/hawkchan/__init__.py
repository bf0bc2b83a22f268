"""Fermionic amplification (Hawking) channels near a black hole, their
coherent superpositions, and the entanglement and coherent information
each scenario preserves."""

from .channel import (
    BlackHoleGeometry,
    ChannelParams,
    KrausPair,
    apply_channel,
    apply_channel_dilated,
    channel_output_closed_form,
    cross_term,
    cross_term_dilated,
    dilation_unitary,
    kraus_pair,
    squeezing_from_geometry,
)
from .metrics import (
    MetricReport,
    average_branch_negativity,
    coherent_information,
    ensemble_coherent_information,
    negativity,
    negativity_avg_closed,
    negativity_convex_avg,
    negativity_mixture_closed,
    phase_avg_negativity,
    ppt_separable,
    report_for_state,
    von_neumann_entropy,
)
from .protocol import (
    BranchStatistics,
    ProtocolConfig,
    bell_state,
    classical_mixture,
    classical_scenario,
    measure_control,
    phase_protocol,
    superposed_state,
)
from .sweep import METRICS, SweepGrid, SweepSpec, emit_csv, emit_json, run_sweep

__all__ = [
    "BlackHoleGeometry",
    "BranchStatistics",
    "ChannelParams",
    "KrausPair",
    "METRICS",
    "MetricReport",
    "ProtocolConfig",
    "SweepGrid",
    "SweepSpec",
    "apply_channel",
    "apply_channel_dilated",
    "average_branch_negativity",
    "bell_state",
    "channel_output_closed_form",
    "classical_mixture",
    "classical_scenario",
    "coherent_information",
    "cross_term",
    "cross_term_dilated",
    "dilation_unitary",
    "emit_csv",
    "emit_json",
    "ensemble_coherent_information",
    "kraus_pair",
    "measure_control",
    "negativity",
    "negativity_avg_closed",
    "negativity_convex_avg",
    "negativity_mixture_closed",
    "phase_avg_negativity",
    "phase_protocol",
    "ppt_separable",
    "report_for_state",
    "run_sweep",
    "squeezing_from_geometry",
    "superposed_state",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
