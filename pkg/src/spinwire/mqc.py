"""Multiple-quantum coherence distributions under collective z grading.

The double-quantum Hamiltonian pumps coherence orders 0 and +-2 (and no
others) out of longitudinal or logical end states. The phase-cycling
protocol evolves a prepared deviation state, tags coherence orders with
a collective z rotation, and correlates against the evolved total
polarisation:

    S(phi) = Tr[R_phi rho(t) R_phi^dag Z(t)] / 2^n,
    J_q    = (1/N) sum_m exp(+i q phi_m) S(phi_m),  phi_m = 2 pi m / N.

Closed forms exist for the homogeneous chain; the dense-oracle cycling
path reproduces them exactly (up to the conserved total Tr[rho Z]/2^n,
which the analytic z-state series normalises to 1 at t = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec
from .errors import (
    AliasingError,
    InvalidConfigurationError,
    InvalidDimensionError,
    InvalidParameterError,
)
from .oracle import (
    OracleBudget,
    build_hamiltonian,
    collective_rotation_diag,
    deviation_to_dense,
    total_z,
    trace_overlap,
)
from .pauli import DeviationState

__all__ = [
    "PREPARED_KINDS",
    "MqcSpectrum",
    "prepare_state",
    "mqc_z_analytic",
    "mqc_y_analytic",
    "mqc_x_analytic",
    "mqc_analytic",
    "mqc_phase_cycled",
]

PREPARED_KINDS = ("z_ends", "y_logical", "x_logical", "full_z")


@dataclass(frozen=True)
class MqcSpectrum:
    """Coherence-order intensities J_q at one time."""

    time: float
    orders: tuple[int, ...]
    intensities: tuple[float, ...]

    def intensity(self, q: int) -> float:
        """J_q; raises for orders outside the computed window."""
        try:
            return self.intensities[self.orders.index(q)]
        except ValueError:
            raise InvalidParameterError(
                f"order {q} outside computed window {self.orders}"
            ) from None

    def total(self) -> float:
        """Sum of the computed intensities."""
        return float(sum(self.intensities))

    @property
    def normalization(self) -> float:
        """Conserved total; constant in time, so it equals the t=0 sum."""
        return self.total()


def prepare_state(n: int, kind: str) -> DeviationState:
    """Initial deviation state for the coherence protocol.

    ``z_ends`` is Z_1 + Z_n and ``full_z`` is the uniform sum of Z_j over
    every site. ``y_logical`` carries (Y X + X Y)/2 on both end pairs;
    ``x_logical`` is its collective pi/4 z rotation, i.e. -(X X - Y Y)/2
    on both end pairs, which the double-quantum filter cannot see.
    """
    if kind not in PREPARED_KINDS:
        raise InvalidConfigurationError(
            f"kind must be one of {PREPARED_KINDS}, got {kind!r}"
        )
    if kind in ("z_ends", "full_z"):
        if n < 2:
            raise InvalidDimensionError(f"{kind} needs n >= 2")
        if kind == "full_z":
            return DeviationState(
                n, tuple((1.0, ((j, "Z"),)) for j in range(1, n + 1))
            )
        return DeviationState(n, ((1.0, ((1, "Z"),)), (1.0, ((n, "Z"),))))
    if n < 4:
        raise InvalidDimensionError(f"{kind} needs n >= 4")
    m = n - 1
    y_state = DeviationState(
        n,
        (
            (0.5, ((1, "Y"), (2, "X"))),
            (0.5, ((1, "X"), (2, "Y"))),
            (0.5, ((m, "Y"), (n, "X"))),
            (0.5, ((m, "X"), (n, "Y"))),
        ),
    )
    if kind == "y_logical":
        return y_state
    return y_state.rotated_z(math.pi / 4)


def _homogeneous_modes(n: int, d: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1)
    kappa = np.pi * k / (n + 1)
    return kappa, 2.0 * d * np.cos(kappa)


def mqc_z_analytic(n: int, d: float, t: float) -> MqcSpectrum:
    """Coherence intensities for z_ends on the homogeneous dq chain.

    J_0    = 2/(n+1) sum_k sin^2(kappa_k) cos^2(2 w_k t)
    J_{+-2} = 1/(n+1) sum_k sin^2(kappa_k) sin^2(2 w_k t)

    normalised so the total is 1 (J_0(0) = 1). No other order appears.
    """
    if n < 2:
        raise InvalidDimensionError("z_ends needs n >= 2")
    kappa, w = _homogeneous_modes(n, d)
    s2 = np.sin(kappa) ** 2
    j0 = 2.0 / (n + 1) * float(np.sum(s2 * np.cos(2 * w * t) ** 2))
    j2 = 1.0 / (n + 1) * float(np.sum(s2 * np.sin(2 * w * t) ** 2))
    return MqcSpectrum(float(t), (-2, 0, 2), (j2, j0, j2))


def mqc_y_analytic(n: int, d: float, t: float) -> MqcSpectrum:
    """Coherence intensities for y_logical on the homogeneous dq chain.

    J_0    =  2/(n+1) sum_k sin(kappa_k) sin(2 kappa_k) sin(4 w_k t)
    J_{+-2} = -J_0 / 2

    in the raw (unnormalised) convention of the cycling protocol; the
    total vanishes because the prepared state is orthogonal to Z.
    """
    if n < 4:
        raise InvalidDimensionError("y_logical needs n >= 4")
    kappa, w = _homogeneous_modes(n, d)
    weight = np.sin(kappa) * np.sin(2 * kappa)
    j0 = 2.0 / (n + 1) * float(np.sum(weight * np.sin(4 * w * t)))
    j2 = 1.0 / (n + 1) * float(np.sum(weight * np.sin(4 * w * t + np.pi)))
    return MqcSpectrum(float(t), (-2, 0, 2), (j2, j0, j2))


def mqc_x_analytic(n: int, d: float, t: float) -> MqcSpectrum:
    """x_logical gives no signal: the protocol's readout is blind to it."""
    if n < 4:
        raise InvalidDimensionError("x_logical needs n >= 4")
    return MqcSpectrum(float(t), (-2, 0, 2), (0.0, 0.0, 0.0))


_ANALYTIC = {
    "z_ends": mqc_z_analytic,
    "y_logical": mqc_y_analytic,
    "x_logical": mqc_x_analytic,
}


def mqc_analytic(n: int, d: float, kind: str, t: float) -> MqcSpectrum:
    """Dispatch to the closed-form series for one prepared kind."""
    if kind not in _ANALYTIC:
        raise InvalidConfigurationError(
            f"no closed form for kind {kind!r}; choose from {tuple(_ANALYTIC)}"
        )
    return _ANALYTIC[kind](n, d, t)


def mqc_phase_cycled(
    spec: ChainSpec,
    initial: DeviationState,
    t: float,
    phase_steps: int = 8,
    max_order: int = 2,
    budget: OracleBudget | None = None,
) -> MqcSpectrum:
    """Full phase-cycling protocol on dense operators.

    Requires phase_steps > 2 * max_order so no populated order can
    alias onto a reported one. Returns raw intensities; their sum over
    all orders equals the conserved overlap Tr[initial Z] / 2^n.
    """
    if initial.n != spec.n:
        raise InvalidDimensionError(
            f"state on {initial.n} sites does not match chain n={spec.n}"
        )
    if max_order < 0:
        raise InvalidParameterError(f"max_order must be >= 0, got {max_order}")
    if phase_steps <= 2 * max_order:
        raise AliasingError(
            f"phase_steps={phase_steps} cannot resolve orders up to "
            f"{max_order}; need phase_steps > {2 * max_order}"
        )
    h = build_hamiltonian(spec, budget)
    rho0 = deviation_to_dense(initial, budget)
    z = total_z(spec.n, budget)
    energies, vectors = np.linalg.eigh(h)
    u = (vectors * np.exp(-1j * energies * float(t))) @ vectors.conj().T
    rho_t = u @ rho0 @ u.conj().T
    z_t = u @ z @ u.conj().T
    signals = np.empty(phase_steps, dtype=complex)
    for m in range(phase_steps):
        phi = 2.0 * np.pi * m / phase_steps
        r = collective_rotation_diag(spec.n, phi, budget)
        rotated = (r[:, None] * rho_t) * np.conj(r)[None, :]
        signals[m] = trace_overlap(rotated, z_t)
    phis = 2.0 * np.pi * np.arange(phase_steps) / phase_steps
    orders = tuple(range(-max_order, max_order + 1))
    intensities = tuple(
        float((np.exp(1j * q * phis) @ signals).real / phase_steps) for q in orders
    )
    return MqcSpectrum(float(t), orders, intensities)
