"""Communication protocols built on the Hawking channel.

Three scenarios are implemented for a shared two-qubit maximally
entangled state:

* a single channel acting on Rob's half (`classical_scenario`),
* an equal coherent superposition of two channels correlated with a
  control qubit that is finally measured in the |+>/|-> basis
  (`superposed_state`, `measure_control`),
* the incoherent equal mixture of the same two channels
  (`classical_mixture`), the baseline a stochastic classical field
  would produce.

`phase_protocol` covers the special superposition of two channels with
equal squeezing and opposite phases, where the closed forms are
simplest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linop
from .channel import ChannelParams, apply_channel, cross_term, kraus_pair

# Below this value of the minus-branch scalar the branch never occurs
# and its posterior state is undefined (the 0/0 guard).
ABSENT_BRANCH_TOL = 1e-14


@dataclass(frozen=True)
class ProtocolConfig:
    """Parameters of the two superposed channels (equal branch weights)."""

    params1: ChannelParams
    params2: ChannelParams


@dataclass(eq=False)
class BranchStatistics:
    """Outcome of measuring the control qubit in the |+>/|-> basis.

    ``a_scalar``, ``b_scalar`` and ``c_scalar`` are the closed-form
    combinations of the channel parameters that govern the outcome:

        A = 3 + cos r1 cos r2 + cos(phi1 - phi2) sin r1 sin r2
        B = sin((phi1 - phi2)/2)^2 sin r1 sin r2
        C = 1 - cos r1 cos r2 - cos(phi1 - phi2) sin r1 sin r2

    with outcome probabilities ``p_plus = A/4`` and ``p_minus = C/4``.
    ``rho_minus`` is ``None`` when the minus branch cannot occur
    (identical channels, C = 0).
    """

    a_scalar: float
    b_scalar: float
    c_scalar: float
    p_plus: float
    p_minus: float
    rho_plus: np.ndarray
    rho_minus: Optional[np.ndarray]


def bell_state() -> np.ndarray:
    """Density matrix of (|00> + |11>)/sqrt(2), the shared resource state."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / math.sqrt(2.0)
    return np.outer(psi, psi.conj())


def classical_scenario(p: ChannelParams) -> np.ndarray:
    """Shared state after a single channel: the definite-geometry case."""
    return apply_channel(bell_state(), kraus_pair(p))


def _interference_blocks(cfg: ProtocolConfig):
    """The four blocks xi_ij(bell) for i, j in {1, 2}."""
    rho = bell_state()
    k1 = kraus_pair(cfg.params1)
    k2 = kraus_pair(cfg.params2)
    return (
        cross_term(rho, k1, k1),
        cross_term(rho, k2, k2),
        cross_term(rho, k1, k2),
        cross_term(rho, k2, k1),
    )


def branch_scalars(cfg: ProtocolConfig) -> tuple[float, float, float]:
    """Closed-form scalars (A, B, C) for the given channel pair.

    C is evaluated as 2 sin^2((r1 - r2)/2) + 2 B, a sum of
    non-negatives; the textbook form 1 - c1 c2 - cos(dphi) s1 s2
    cancels catastrophically for near-identical channels.  A = 4 - C.
    """
    r1, phi1 = cfg.params1.r, cfg.params1.phi
    r2, phi2 = cfg.params2.r, cfg.params2.phi
    dphi = phi1 - phi2
    b = math.sin(dphi / 2.0) ** 2 * math.sin(r1) * math.sin(r2)
    c = 2.0 * math.sin((r1 - r2) / 2.0) ** 2 + 2.0 * b
    return 4.0 - c, b, c


def superposed_state(cfg: ProtocolConfig) -> np.ndarray:
    """Joint Alice-Rob-control state after the coherent superposition.

    The 8x8 state on (A x R) x control is assembled from the four
    interference blocks:

        1/2 [ xi_11 (x) |0><0| + xi_22 (x) |1><1|
              + xi_12 (x) |0><1| + xi_21 (x) |1><0| ].

    Tracing out the control recovers `classical_mixture`.
    """
    x11, x22, x12, x21 = _interference_blocks(cfg)
    p00 = np.array([[1, 0], [0, 0]], dtype=complex)
    p11 = np.array([[0, 0], [0, 1]], dtype=complex)
    p01 = np.array([[0, 1], [0, 0]], dtype=complex)
    p10 = np.array([[0, 0], [1, 0]], dtype=complex)
    state = 0.5 * (
        linop.tensor(x11, p00)
        + linop.tensor(x22, p11)
        + linop.tensor(x12, p01)
        + linop.tensor(x21, p10)
    )
    return linop.check_density_matrix(state, "superposed state")


def measure_control(cfg: ProtocolConfig) -> BranchStatistics:
    """Posterior Alice-Rob states after measuring the control in |+>/|->.

    The plus branch carries the recovered entanglement; the minus
    branch is always separable.  When the two channels are identical
    the minus branch has probability zero and ``rho_minus`` is ``None``
    rather than a 0/0 artifact.

    The plus branch is assembled numerically from the interference
    blocks (its weight never drops below 1/2).  The minus branch is
    built from its closed form: normalizing the numeric block by a
    probability as small as C/4 would amplify roundoff past the state
    invariants, while the closed form is non-negative diagonal by
    construction for every C.
    """
    a, b, c = branch_scalars(cfg)
    x11, x22, x12, x21 = _interference_blocks(cfg)
    plus_un = 0.25 * (x11 + x22 + x12 + x21)
    p_plus = float(plus_un.trace().real)
    p_minus = c / 4.0
    rho_plus = linop.check_density_matrix(plus_un / p_plus, "plus branch")
    if c < ABSENT_BRANCH_TOL:
        rho_minus = None
    else:
        vac = (math.cos(cfg.params1.r) - math.cos(cfg.params2.r)) ** 2
        excited = (math.sin(cfg.params1.r) - math.sin(cfg.params2.r)) ** 2 + 4.0 * b
        rho_minus = np.diag([vac, excited, 0.0, 0.0]).astype(complex) / (vac + excited)
        rho_minus = linop.check_density_matrix(rho_minus, "minus branch")
    return BranchStatistics(a, b, c, p_plus, p_minus, rho_plus, rho_minus)


def classical_mixture(cfg: ProtocolConfig) -> np.ndarray:
    """Equal incoherent mixture of the two channel outputs."""
    rho = bell_state()
    mixed = 0.5 * (
        apply_channel(rho, kraus_pair(cfg.params1))
        + apply_channel(rho, kraus_pair(cfg.params2))
    )
    return linop.check_density_matrix(mixed, "classical mixture")


def phase_protocol(r: float) -> BranchStatistics:
    """Superposition of equal-squeezing channels with opposite phases.

    For phi1 = phi2 + pi and common squeezing ``r`` the closed forms
    collapse: p_plus = (1 + cos(r)^2)/2, the plus branch is

        [[cos^2 r, 0, 0, cos r],
         [0,       0, 0, 0    ],
         [0,       0, 0, 0    ],
         [cos r,   0, 0, 1    ]] / (1 + cos^2 r)

    with negativity |cos r| / (1 + cos^2 r), and the minus branch is
    the product state |0_A 1_R><0_A 1_R| (absent at r = 0).
    """
    if not (math.isfinite(r) and 0.0 <= r < math.pi / 2):
        raise ValueError(f"squeezing r must be in [0, pi/2), got {r}")
    cos_r = math.cos(r)
    sin_r = math.sin(r)
    a = 2.0 + 2.0 * cos_r * cos_r
    b = sin_r * sin_r
    c = 2.0 * sin_r * sin_r
    p_plus = a / 4.0
    p_minus = c / 4.0
    rho_plus = np.zeros((4, 4), dtype=complex)
    rho_plus[0, 0] = cos_r * cos_r
    rho_plus[0, 3] = rho_plus[3, 0] = cos_r
    rho_plus[3, 3] = 1.0
    rho_plus = linop.check_density_matrix(rho_plus / (1.0 + cos_r * cos_r), "plus branch")
    if c < ABSENT_BRANCH_TOL:
        rho_minus = None
    else:
        rho_minus = np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex)
    return BranchStatistics(a, b, c, p_plus, p_minus, rho_plus, rho_minus)
