"""Entanglement and information measures for two-qubit states.

Numeric negativity and coherent information sit next to the closed
forms for the protocol scenarios, so every closed form can be checked
against the fully numeric pipeline.  All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import linop

# Numeric negativities this far below zero are roundoff and clip to 0.
NEGATIVITY_CLIP = 1e-12
# Eigenvalues in [ENTROPY_CLIP, 0) are treated as exact zeros.
ENTROPY_CLIP = -1e-10
# A state is PPT when its partial transpose has no eigenvalue below this.
PPT_TOL = -1e-10
# Allowed gap between a closed form and its numeric counterpart.
CLOSED_FORM_TOL = 1e-10


@dataclass(frozen=True)
class MetricReport:
    """Entanglement summary of one two-qubit state.

    When a closed-form negativity is supplied it must agree with the
    numeric value within ``CLOSED_FORM_TOL``; the constructor enforces
    that, so a report is itself a consistency check.
    """

    negativity_numeric: float
    coherent_information: float
    ppt: bool
    negativity_closed_form: Optional[float] = None

    def __post_init__(self):
        if self.negativity_numeric < -NEGATIVITY_CLIP:
            raise ValueError(f"negativity {self.negativity_numeric} below clip floor")
        if self.negativity_closed_form is not None:
            gap = abs(self.negativity_numeric - self.negativity_closed_form)
            if gap > CLOSED_FORM_TOL:
                raise ValueError(
                    f"closed-form negativity differs from numeric by {gap:.3e}"
                )


def _check_two_qubit(rho, name: str) -> np.ndarray:
    arr = linop.check_density_matrix(rho, name)
    if arr.shape != (4, 4):
        raise ValueError(f"{name} must be a 2x2-partite 4x4 state, got {arr.shape}")
    return arr


def negativity(rho) -> float:
    """Negativity (||rho^T_A||_1 - 1)/2 of a two-qubit state.

    Zero exactly for separable states; 1/2 for a maximally entangled
    pair.  Values in [-1e-12, 0) from roundoff are clipped to 0.
    """
    arr = _check_two_qubit(rho, "state")
    value = (linop.trace_norm(linop.partial_transpose(arr, (2, 2))) - 1.0) / 2.0
    if value < -NEGATIVITY_CLIP:
        raise ValueError(f"negativity {value} below clip floor {-NEGATIVITY_CLIP}")
    return max(value, 0.0)


def negativity_avg_closed(r1: float, r2: float) -> float:
    """Average post-measurement negativity of the superposed channels.

    Closed form for equal phases; equals ``p_plus * negativity(rho_plus)``
    from the numeric protocol path within 1e-10.
    """
    s_sum = math.sin(r1) + math.sin(r2)
    c_sum = math.cos(r1) + math.cos(r2)
    return (-(s_sum**2) + math.sqrt(16.0 * c_sum**2 + s_sum**4)) / 16.0


def negativity_mixture_closed(r1: float, r2: float) -> float:
    """Negativity of the equal classical mixture of the two channel outputs."""
    s_sq = math.sin(r1) ** 2 + math.sin(r2) ** 2
    c_sum = math.cos(r1) + math.cos(r2)
    return (-s_sq + math.sqrt(4.0 * c_sum**2 + s_sq**2)) / 8.0


def negativity_convex_avg(r1: float, r2: float) -> float:
    """Convex average of the two single-channel negativities: (c1^2 + c2^2)/4."""
    return (math.cos(r1) ** 2 + math.cos(r2) ** 2) / 4.0


def phase_avg_negativity(r: float) -> float:
    """Average negativity |cos r|/2 of the opposite-phase superposition."""
    return abs(math.cos(r)) / 2.0


def von_neumann_entropy(rho) -> float:
    """Entropy -sum(l * log2 l) of a state's spectrum, in bits."""
    arr = linop.check_density_matrix(rho, "state")
    eigs = linop.hermitian_eigenvalues(arr)
    eigs = np.where((eigs < 0.0) & (eigs >= ENTROPY_CLIP), 0.0, eigs)
    positive = eigs[eigs > 0.0]
    return float(-(positive * np.log2(positive)).sum())


def coherent_information(rho) -> float:
    """Coherent information S(B) - S(AB) of a two-qubit state, B = Rob's side.

    A positive value lower-bounds the quantum capacity of the channel
    that produced ``rho`` from a maximally entangled input; a maximally
    entangled state gives +1 bit, a maximally mixed one -1 bit.
    """
    arr = _check_two_qubit(rho, "state")
    rho_b = linop.partial_trace(arr, (2, 2), keep=1)
    return von_neumann_entropy(rho_b) - von_neumann_entropy(arr)


def ensemble_coherent_information(branches: Iterable[tuple[float, Optional[np.ndarray]]]) -> float:
    """Probability-weighted coherent information over measurement branches.

    ``branches`` yields ``(probability, state)`` pairs; absent branches
    (state ``None``) contribute nothing.
    """
    total = 0.0
    for prob, rho in branches:
        if rho is None:
            continue
        total += prob * coherent_information(rho)
    return total


def average_branch_negativity(branches: Iterable[tuple[float, Optional[np.ndarray]]]) -> float:
    """Probability-weighted negativity over measurement branches.

    This is the entanglement kept on average when the measurement
    record is retained.  Absent branches (state ``None``) contribute
    nothing.
    """
    total = 0.0
    for prob, rho in branches:
        if rho is None:
            continue
        total += prob * negativity(rho)
    return total


def ppt_separable(rho) -> bool:
    """Positive-partial-transpose test; equivalent to separability for 2x2."""
    arr = _check_two_qubit(rho, "state")
    eigs = linop.hermitian_eigenvalues(linop.partial_transpose(arr, (2, 2)))
    return bool(eigs[0] >= PPT_TOL)


def report_for_state(rho, closed_form: Optional[float] = None) -> MetricReport:
    """Bundle the standard measures of one state into a `MetricReport`."""
    return MetricReport(
        negativity_numeric=negativity(rho),
        coherent_information=coherent_information(rho),
        ppt=ppt_separable(rho),
        negativity_closed_form=closed_form,
    )
