"""Single-input, three-output open differential gear train.

The train is built from three two-output differentials (stage 1) whose ring
gears all turn at ``ring_ratio * input_speed``, feeding three two-input
differentials (stage 2) through cyclically paired side gears.  Each open
differential averages speed and splits torque equally, which yields the two
defining conditions solved here:

* speed averaging:  mean(output_speeds) == ring_ratio * output_ratio * input_speed
* equal torque:     all three outputs carry the same torque

Stage-1 side gears are labelled L_i / R_i; side gear R_i meshes with side
gear L_{i+1} (indices mod 3), so the linear constraints are::

    L_i + R_i     = 2 * ring_ratio * input_speed         (stage-1 averaging)
    R_j + L_{j+1} = 2 * output_speed_j / output_ratio    (stage-2 averaging)

The system is rank 5 in 6 unknowns: a free internal circulation mode
(alternating +/-t on L/R) remains, and ``internal_state`` resolves it by
minimum-norm selection.

Under load the equilibrium is found by scalar root finding on the common
torque level: invert each (strictly monotone) load curve at a trial torque
and adjust the torque until the mean output speed meets the averaging
constraint.  Bracketed bisection keeps this robust for any monotone curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentOutputs, NoBracket, NonMonotoneLoad

_PAIRING = ((0, 1), (1, 2), (2, 0))  # stage-2 j couples R_j with L_{j+1}


@dataclass(frozen=True)
class TransmissionConfig:
    """Gear ratios of the three-output differential.

    ring_ratio:   input shaft -> stage-1 ring gears (speed multiplier).
    output_ratio: stage-2 carrier -> output shaft (speed multiplier).
    efficiency:   input->output power efficiency, in (0, 1].
    """

    ring_ratio: float = 1.0
    output_ratio: float = 1.0
    efficiency: float = 1.0

    def __post_init__(self):
        if self.ring_ratio <= 0.0:
            raise ValueError(f"ring_ratio must be > 0, got {self.ring_ratio}")
        if self.output_ratio <= 0.0:
            raise ValueError(f"output_ratio must be > 0, got {self.output_ratio}")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")

    @property
    def overall_ratio(self) -> float:
        """Speed multiplier from the input shaft to the mean of the outputs."""
        return self.ring_ratio * self.output_ratio


@dataclass(frozen=True)
class TransmissionState:
    """Every gear speed and torque of the train at one instant.

    Speeds in rad/s, torques in N*m.  ``side_speeds`` is ordered
    (L1, R1, L2, R2, L3, R3).
    """

    input_speed: float
    input_torque: float
    ring_speeds: tuple[float, float, float]
    side_speeds: tuple[float, float, float, float, float, float]
    output_speeds: tuple[float, float, float]
    output_torques: tuple[float, float, float]


@dataclass(frozen=True)
class LinearLoad:
    """Resistive torque growing linearly with output speed (slip law).

    torque(w) = stiffness * (w * wheel_radius - target_speed) + offset

    ``wheel_radius`` converts shaft speed to surface speed, ``target_speed``
    is the surface speed at which the slip term vanishes.  Strictly monotone
    increasing whenever stiffness * wheel_radius > 0, so the inverse is exact.
    """

    stiffness: float
    wheel_radius: float = 1.0
    target_speed: float = 0.0
    offset: float = 0.0

    @property
    def slope(self) -> float:
        return self.stiffness * self.wheel_radius

    def torque(self, speed: float) -> float:
        return self.stiffness * (speed * self.wheel_radius - self.target_speed) + self.offset

    def inverse(self, torque: float) -> float:
        if self.slope <= 0.0:
            raise NonMonotoneLoad(
                f"load slope {self.slope} is not positive; inverse undefined"
            )
        return ((torque - self.offset) / self.stiffness + self.target_speed) / self.wheel_radius


@dataclass(frozen=True)
class TorqueBalance:
    """Result of a load-balance solve: output speeds and the shared torque."""

    output_speeds: tuple[float, float, float]
    common_torque: float
    iterations: int


def solve_free(input_speed: float, config: TransmissionConfig) -> TransmissionState:
    """State of the unloaded train: all outputs at the overall-ratio speed."""
    ring = config.ring_ratio * input_speed
    out = config.overall_ratio * input_speed
    return TransmissionState(
        input_speed=input_speed,
        input_torque=0.0,
        ring_speeds=(ring, ring, ring),
        side_speeds=(ring,) * 6,
        output_speeds=(out, out, out),
        output_torques=(0.0, 0.0, 0.0),
    )


def solve_torque_balance(
    input_speed: float,
    loads,
    config: TransmissionConfig,
    tol: float = 1e-10,
    max_iter: int = 2000,
    bracket_growth: float = 2.0,
    max_expansions: int = 80,
) -> TorqueBalance:
    """Equilibrium of the train against three monotone load curves.

    Finds the torque level tau at which the load-curve inverses average to
    the constrained mean speed, i.e. the root of

        F(tau) = mean_j loads[j].inverse(tau) - overall_ratio * input_speed

    F is strictly increasing, so evaluating each load at the target mean
    speed brackets the root immediately; bisection then shrinks the bracket
    to float resolution, which keeps the result deterministic even when the
    equilibrium torque is tiny.  ``tol`` (relative on the mean-speed
    residual) is the guaranteed accuracy; the solve is verified against it
    and far exceeds it in practice.

    Raises NonMonotoneLoad for a non-increasing curve and NoBracket if the
    bracket cannot be established within ``max_expansions`` growth steps
    (only possible for inconsistent torque/inverse implementations).
    """
    if len(loads) != 3:
        raise ValueError(f"expected 3 load curves, got {len(loads)}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    for load in loads:
        if getattr(load, "slope", 1.0) <= 0.0:
            raise NonMonotoneLoad(f"load {load!r} is not strictly increasing")

    target = config.overall_ratio * input_speed

    def residual(tau: float) -> float:
        return sum(load.inverse(tau) for load in loads) / 3.0 - target

    lo = min(load.torque(target) for load in loads)
    hi = max(load.torque(target) for load in loads)
    f_lo = residual(lo)
    f_hi = residual(hi)

    # The [min, max] torque bracket is valid for exact monotone curves; grow
    # it geometrically if a user-supplied curve disagrees with its inverse.
    span = max(1.0, hi - lo, abs(lo), abs(hi))
    expansions = 0
    while f_lo > 0.0:
        if expansions >= max_expansions:
            raise NoBracket(f"no sign change below torque {lo}")
        lo -= span
        span *= bracket_growth
        f_lo = residual(lo)
        expansions += 1
    while f_hi < 0.0:
        if expansions >= max_expansions:
            raise NoBracket(f"no sign change above torque {hi}")
        hi += span
        span *= bracket_growth
        f_hi = residual(hi)
        expansions += 1

    iterations = 0
    if lo == hi or f_lo == 0.0:
        tau = lo
    elif f_hi == 0.0:
        tau = hi
    else:
        for iterations in range(1, max_iter + 1):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:  # bracket at float resolution
                break
            if residual(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        # Adjacent endpoints remain; keep the one with the smaller residual.
        tau = lo if abs(residual(lo)) < abs(residual(hi)) else hi

    speeds = tuple(load.inverse(tau) for load in loads)
    mean_residual = sum(speeds) / 3.0 - target
    if abs(mean_residual) > tol * max(1.0, abs(target)):
        raise NoBracket(
            f"bisection stalled with mean-speed residual {mean_residual}"
        )
    return TorqueBalance(output_speeds=speeds, common_torque=tau, iterations=iterations)


def torque_distribution(input_torque: float, config: TransmissionConfig) -> tuple[float, float, float]:
    """Equal three-way torque split seen at the outputs.

    Each output carries efficiency * input_torque / (3 * ring_ratio *
    output_ratio): torque transforms inversely to speed through both gear
    stages, which is the unique split that conserves power at equal speeds.
    """
    tau = config.efficiency * input_torque / (3.0 * config.overall_ratio)
    return (tau, tau, tau)


def input_torque_for(common_torque: float, config: TransmissionConfig) -> float:
    """Input torque that produces ``common_torque`` at each output."""
    return 3.0 * config.overall_ratio * common_torque / config.efficiency


def internal_state(
    output_speeds,
    input_speed: float,
    config: TransmissionConfig,
    tol: float = 1e-9,
) -> tuple[float, float, float, float, float, float]:
    """Side-gear speeds (L1, R1, L2, R2, L3, R3) consistent with the outputs.

    The six averaging constraints are rank 5; the leftover one-parameter
    internal circulation mode (alternating +/-t) is resolved by returning
    the minimum-norm solution, which is unique and testable.

    Raises InconsistentOutputs when mean(output_speeds) deviates from the
    constrained value by more than ``tol`` relative (no side-gear speeds can
    realise such outputs).
    """
    speeds = tuple(float(w) for w in output_speeds)
    if len(speeds) != 3:
        raise ValueError(f"expected 3 output speeds, got {len(speeds)}")
    target = config.overall_ratio * input_speed
    mean = sum(speeds) / 3.0
    if abs(mean - target) > tol * max(1.0, abs(target)):
        raise InconsistentOutputs(
            f"mean output speed {mean} != {target} required by the averaging law"
        )

    a = np.zeros((6, 6))
    b = np.zeros(6)
    ring = 2.0 * config.ring_ratio * input_speed
    for i in range(3):
        a[i, 2 * i] = 1.0  # L_i
        a[i, 2 * i + 1] = 1.0  # R_i
        b[i] = ring
    for j, (right_of, left_of) in enumerate(_PAIRING):
        a[3 + j, 2 * right_of + 1] = 1.0  # R_j
        a[3 + j, 2 * left_of] = 1.0  # L_{j+1}
        b[3 + j] = 2.0 * speeds[j] / config.output_ratio
    solution, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    return tuple(solution)


def balance_state(
    input_speed: float,
    loads,
    config: TransmissionConfig,
    tol: float = 1e-10,
) -> TransmissionState:
    """Full consistent train state at the load-balance equilibrium."""
    balance = solve_torque_balance(input_speed, loads, config, tol=tol)
    ring = config.ring_ratio * input_speed
    sides = internal_state(balance.output_speeds, input_speed, config, tol=1e-6)
    tau = balance.common_torque
    return TransmissionState(
        input_speed=input_speed,
        input_torque=input_torque_for(tau, config),
        ring_speeds=(ring, ring, ring),
        side_speeds=sides,
        output_speeds=balance.output_speeds,
        output_torques=(tau, tau, tau),
    )


def power_balance(state: TransmissionState, config: TransmissionConfig) -> float:
    """Power conservation residual, zero for the ideal train.

    residual = efficiency * input_speed * input_torque
               - sum_j output_speed_j * output_torque_j
    """
    p_out = sum(w * t for w, t in zip(state.output_speeds, state.output_torques))
    return config.efficiency * state.input_speed * state.input_torque - p_out
