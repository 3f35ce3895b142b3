"""Three-module climbing robot: bend kinematics, wall-press springs, traction.

The robot carries three track modules spaced 120 degrees around its axis,
pressed against the pipe wall by preloaded linear springs.  Module angles
are measured from the bend's outward direction, so a module at angle 0 rides
the outside of the bend.  Per-track quantities are ordered (A, B, C) for
modules at orientation, orientation+120, orientation+240 degrees.

Inside a bend of centerline radius R, the contact path of the module at
angle q turns about the bend axis at radius R + h*cos(q) (h = contact
radius), so matching a centerline speed v requires track speed
v * (R + h*cos(q)) / R.  The three cosines cancel, keeping the mean track
speed equal to v for every orientation.

Traction and climbing-effort formulas (n springs total, k in N/m, x in m):

    traction          f  = n * mu * k * x
    tractive effort   TE = m * g - n * mu * k * x
    sprocket torque   tau = TE * r_sprocket

TE as written is weight minus the friction-coupled spring force; it goes
negative for strong springs, so both f and TE are exposed and reported
rather than interpreted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetryLimit, CompressionLimit, DegenerateBend
from .geometry import CenterlinePose

GRAVITY = 9.81  # m/s^2

DEFAULT_MAX_COMPRESSION_MM = 16.0
DEFAULT_SPRINGS = 12  # 4 linkages x 3 modules
DEFAULT_MAX_ASYMMETRY_DEG = 10.0


@dataclass(frozen=True)
class RobotParams:
    """Geometry, spring, and traction parameters of the climbing robot.

    contact_radius_mm:  radial distance from robot axis to track contact line.
    sprocket_radius_mm: drive sprocket radius (track speed = shaft speed * r).
    orientation_deg:    roll of module A measured from the bend outward
                        direction.
    spring_n_per_m:     stiffness of one wall-press spring.
    springs:            total spring count entering the traction formulas.
    preload_mm:         compression of every spring in straight pipe.
    length_mm:          body length, used for travelled-distance bookkeeping
                        and the uneven-compression tilt check.
    """

    contact_radius_mm: float
    sprocket_radius_mm: float
    orientation_deg: float
    spring_n_per_m: float
    preload_mm: float
    mass_kg: float
    friction: float
    length_mm: float
    springs: int = DEFAULT_SPRINGS
    max_compression_mm: float = DEFAULT_MAX_COMPRESSION_MM
    max_asym_deg: float = DEFAULT_MAX_ASYMMETRY_DEG

    def validate(self) -> None:
        """Raise on invariant violations; CompressionLimit when the preload
        alone already exceeds the compression budget."""
        if self.contact_radius_mm <= 0.0:
            raise ValueError(f"contact radius must be > 0, got {self.contact_radius_mm}")
        if self.sprocket_radius_mm <= 0.0:
            raise ValueError(f"sprocket radius must be > 0, got {self.sprocket_radius_mm}")
        if self.spring_n_per_m <= 0.0:
            raise ValueError(f"spring constant must be > 0, got {self.spring_n_per_m}")
        if self.springs <= 0:
            raise ValueError(f"spring count must be > 0, got {self.springs}")
        if self.mass_kg <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass_kg}")
        if not 0.0 < self.friction < 2.0:
            raise ValueError(f"friction must be in (0, 2), got {self.friction}")
        if self.length_mm <= 0.0:
            raise ValueError(f"robot length must be > 0, got {self.length_mm}")
        if self.max_asym_deg <= 0.0:
            raise ValueError(f"max asymmetry must be > 0, got {self.max_asym_deg}")
        if self.preload_mm < 0.0:
            raise ValueError(f"preload must be >= 0, got {self.preload_mm}")
        if self.preload_mm > self.max_compression_mm:
            raise CompressionLimit(
                f"preload {self.preload_mm} mm exceeds the "
                f"{self.max_compression_mm} mm compression limit"
            )

    @property
    def module_angles_deg(self) -> tuple[float, float, float]:
        return (
            self.orientation_deg,
            self.orientation_deg + 120.0,
            self.orientation_deg + 240.0,
        )


@dataclass(frozen=True)
class ModuleState:
    """Per-module kinematic state at one centerline pose (A, B, C order)."""

    compressions: np.ndarray  # mm
    contact_path_radii: np.ndarray | None  # mm, None on straights
    required_speeds: np.ndarray  # mm/s


def track_path_radius(bend_radius: float, contact_radius: float, module_angle_deg: float) -> float:
    """Turning radius of one track's contact path about the bend axis (mm)."""
    if bend_radius <= contact_radius:
        raise DegenerateBend(
            f"bend radius {bend_radius} must exceed contact radius {contact_radius}"
        )
    return bend_radius + contact_radius * math.cos(math.radians(module_angle_deg))


def required_track_speeds(
    pose: CenterlinePose, center_speed: float, params: RobotParams
) -> np.ndarray:
    """Track surface speeds that follow the local geometry without slip.

    All equal to the centerline speed on straights; scaled by each track's
    path radius over the bend radius inside bends.  Their mean is the
    centerline speed in both cases.
    """
    if pose.curvature == 0.0:
        return np.full(3, center_speed)
    bend_radius = 1.0 / pose.curvature
    radii = np.array(
        [
            track_path_radius(bend_radius, params.contact_radius_mm, angle)
            for angle in params.module_angles_deg
        ]
    )
    return center_speed * radii / bend_radius


def spring_compression(
    pose: CenterlinePose, params: RobotParams, bend_extra_mm: float = 1.5
) -> np.ndarray:
    """Per-module spring compression (mm) at a pose.

    Straights sit at the preload.  In bends the modules nearest the bend
    plane take extra compression, scaled by |cos| of the module angle so the
    in-plane modules gain the full ``bend_extra_mm``.
    """
    compressions = np.full(3, params.preload_mm)
    if pose.curvature != 0.0:
        scale = np.abs(np.cos(np.radians(params.module_angles_deg)))
        compressions = compressions + bend_extra_mm * scale
    worst = int(np.argmax(compressions))
    if compressions[worst] > params.max_compression_mm:
        raise CompressionLimit(
            f"module {'ABC'[worst]} needs {compressions[worst]:.3f} mm, over the "
            f"{params.max_compression_mm} mm limit"
        )
    return compressions


def asymmetry_deg(
    front_compressions: np.ndarray, rear_compressions: np.ndarray, params: RobotParams
) -> np.ndarray:
    """Per-module tilt (degrees) from uneven front/rear compression.

    The tilt is the front-to-rear compression difference taken over the body
    length.  Raises AsymmetryLimit beyond the configured angle.
    """
    delta = np.abs(np.asarray(front_compressions) - np.asarray(rear_compressions))
    tilt = np.degrees(np.arctan2(delta, params.length_mm))
    worst = int(np.argmax(tilt))
    if tilt[worst] > params.max_asym_deg:
        raise AsymmetryLimit(
            f"module {'ABC'[worst]} tilts {tilt[worst]:.3f} deg, over the "
            f"{params.max_asym_deg} deg limit"
        )
    return tilt


def module_state(
    pose: CenterlinePose,
    center_speed: float,
    params: RobotParams,
    bend_extra_mm: float = 1.5,
) -> ModuleState:
    """Bundle compressions, contact radii, and required speeds at a pose."""
    radii = None
    if pose.curvature != 0.0:
        bend_radius = 1.0 / pose.curvature
        radii = np.array(
            [
                track_path_radius(bend_radius, params.contact_radius_mm, angle)
                for angle in params.module_angles_deg
            ]
        )
    return ModuleState(
        compressions=spring_compression(pose, params, bend_extra_mm),
        contact_path_radii=radii,
        required_speeds=required_track_speeds(pose, center_speed, params),
    )


def traction_force(params: RobotParams, compression_mm: float | None = None) -> float:
    """Wall traction (N) from the friction-coupled spring force."""
    x = (params.preload_mm if compression_mm is None else compression_mm) / 1000.0
    return params.springs * params.friction * params.spring_n_per_m * x


def tractive_effort_and_torque(
    params: RobotParams, compression_mm: float | None = None
) -> tuple[float, float]:
    """(tractive effort N, sprocket torque N*m) for vertical climbing."""
    x = (params.preload_mm if compression_mm is None else compression_mm) / 1000.0
    effort = params.mass_kg * GRAVITY - params.springs * params.friction * params.spring_n_per_m * x
    return effort, effort * (params.sprocket_radius_mm / 1000.0)
