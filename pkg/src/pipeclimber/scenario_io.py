"""Scenario files in, time series and summaries out.

Scenario files are JSON with four sections (pipe, robot, transmission, sim).
Every physical quantity carries its unit in the key name; values are
converted exactly once, here, at the boundary.  Unknown keys are rejected
and all validation errors name the offending key path.

Record output is CSV (fixed column order, 9 significant digits) or JSON
(same field names).
"""

from __future__ import annotations

import json
from dataclasses import asdict

from .differential import TransmissionConfig
from .dimensions import pipe_inner_radius
from .errors import IoError, ParseError, ValidationError
from .geometry import Bend, PipeNetwork, Straight, build_network
from .robot import (
    DEFAULT_MAX_ASYMMETRY_DEG,
    DEFAULT_MAX_COMPRESSION_MM,
    DEFAULT_SPRINGS,
    RobotParams,
)
from .simulator import Scenario, SimRecord

CSV_COLUMNS = (
    "t_s",
    "s_mm",
    "segment",
    "vA_mm_s",
    "vB_mm_s",
    "vC_mm_s",
    "vreqA_mm_s",
    "vreqB_mm_s",
    "vreqC_mm_s",
    "slipA_mm_s",
    "slipB_mm_s",
    "slipC_mm_s",
    "xA_mm",
    "xB_mm",
    "xC_mm",
    "torque_nm",
)

DEFAULT_BEND_EXTRA_MM = 1.5


def _expect_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"expected an object, got {type(value).__name__}", path)
    return value


def _check_keys(obj: dict, path: str, required: set, optional: set = frozenset()) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise ValidationError("unknown key", f"{path}.{key}" if path else key)
    for key in required:
        if key not in obj:
            raise ValidationError("missing required key", f"{path}.{key}" if path else key)


def _number(obj: dict, path: str, key: str, default=None) -> float:
    if key not in obj:
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(
            f"expected a number, got {type(value).__name__}", f"{path}.{key}"
        )
    return float(value)


def _positive(value: float, path: str) -> float:
    if value <= 0.0:
        raise ValidationError(f"must be > 0, got {value}", path)
    return value


def _segments_from(items, path: str, contact_radius: float):
    if not isinstance(items, list) or not items:
        raise ValidationError("expected a non-empty array of segments", path)
    segments = []
    for i, item in enumerate(items):
        spath = f"{path}[{i}]"
        seg = _expect_mapping(item, spath)
        kind = seg.get("kind")
        if kind == "straight":
            _check_keys(seg, spath, {"kind", "length_mm"})
            segments.append(Straight(_positive(_number(seg, spath, "length_mm"), f"{spath}.length_mm")))
        elif kind == "bend":
            _check_keys(seg, spath, {"kind", "bend_radius_mm", "sweep_deg"}, {"roll_deg"})
            radius = _positive(_number(seg, spath, "bend_radius_mm"), f"{spath}.bend_radius_mm")
            sweep = _number(seg, spath, "sweep_deg")
            if not 0.0 < sweep <= 180.0:
                raise ValidationError(
                    f"sweep must be in (0, 180], got {sweep}", f"{spath}.sweep_deg"
                )
            if radius <= contact_radius:
                raise ValidationError(
                    f"degenerate bend: radius {radius} mm does not exceed the "
                    f"robot contact radius {contact_radius} mm",
                    f"{spath}.bend_radius_mm",
                )
            roll = _number(seg, spath, "roll_deg", 0.0)
            segments.append(Bend(radius, sweep, roll))
        else:
            raise ValidationError(
                f"kind must be 'straight' or 'bend', got {kind!r}", f"{spath}.kind"
            )
    return segments


def scenario_from_dict(data: dict) -> Scenario:
    """Validate a parsed scenario document and build the Scenario."""
    root = _expect_mapping(data, "")
    _check_keys(root, "", {"pipe", "robot", "transmission", "sim"})

    robot_obj = _expect_mapping(root["robot"], "robot")
    _check_keys(
        robot_obj,
        "robot",
        {
            "h_mm",
            "sprocket_radius_mm",
            "orientation_deg",
            "spring_k_n_per_m",
            "preload_mm",
            "mass_kg",
            "mu",
            "robot_length_mm",
        },
        {"max_compression_mm", "springs", "max_asym_deg"},
    )
    contact_radius = _positive(_number(robot_obj, "robot", "h_mm"), "robot.h_mm")
    friction = _number(robot_obj, "robot", "mu")
    if not 0.0 < friction < 2.0:
        raise ValidationError(f"must be in (0, 2), got {friction}", "robot.mu")
    springs = _number(robot_obj, "robot", "springs", float(DEFAULT_SPRINGS))
    if springs != int(springs) or springs <= 0:
        raise ValidationError(f"must be a positive integer, got {springs}", "robot.springs")
    preload = _number(robot_obj, "robot", "preload_mm")
    if preload < 0.0:
        raise ValidationError(f"must be >= 0, got {preload}", "robot.preload_mm")
    robot = RobotParams(
        contact_radius_mm=contact_radius,
        sprocket_radius_mm=_positive(
            _number(robot_obj, "robot", "sprocket_radius_mm"), "robot.sprocket_radius_mm"
        ),
        orientation_deg=_number(robot_obj, "robot", "orientation_deg"),
        spring_n_per_m=_positive(
            _number(robot_obj, "robot", "spring_k_n_per_m"), "robot.spring_k_n_per_m"
        ),
        preload_mm=preload,
        mass_kg=_positive(_number(robot_obj, "robot", "mass_kg"), "robot.mass_kg"),
        friction=friction,
        length_mm=_positive(
            _number(robot_obj, "robot", "robot_length_mm"), "robot.robot_length_mm"
        ),
        springs=int(springs),
        max_compression_mm=_positive(
            _number(robot_obj, "robot", "max_compression_mm", DEFAULT_MAX_COMPRESSION_MM),
            "robot.max_compression_mm",
        ),
        max_asym_deg=_positive(
            _number(robot_obj, "robot", "max_asym_deg", DEFAULT_MAX_ASYMMETRY_DEG),
            "robot.max_asym_deg",
        ),
    )
    robot.validate()  # re-raises compression-budget violations as CompressionLimit

    pipe_obj = _expect_mapping(root["pipe"], "pipe")
    _check_keys(pipe_obj, "pipe", {"segments"}, {"inner_radius_mm", "nps", "schedule"})
    if "inner_radius_mm" in pipe_obj:
        if "nps" in pipe_obj or "schedule" in pipe_obj:
            raise ValidationError(
                "give either inner_radius_mm or nps+schedule, not both", "pipe"
            )
        inner_radius = _positive(
            _number(pipe_obj, "pipe", "inner_radius_mm"), "pipe.inner_radius_mm"
        )
    elif "nps" in pipe_obj and "schedule" in pipe_obj:
        inner_radius = pipe_inner_radius(pipe_obj["nps"], pipe_obj["schedule"])
    else:
        raise ValidationError(
            "needs inner_radius_mm or both nps and schedule", "pipe"
        )
    segments = _segments_from(pipe_obj["segments"], "pipe.segments", contact_radius)
    network = build_network(segments, inner_radius)

    trans_obj = _expect_mapping(root["transmission"], "transmission")
    _check_keys(trans_obj, "transmission", {"g1", "g2"}, {"efficiency"})
    efficiency = _number(trans_obj, "transmission", "efficiency", 1.0)
    if not 0.0 < efficiency <= 1.0:
        raise ValidationError(f"must be in (0, 1], got {efficiency}", "transmission.efficiency")
    transmission = TransmissionConfig(
        ring_ratio=_positive(_number(trans_obj, "transmission", "g1"), "transmission.g1"),
        output_ratio=_positive(_number(trans_obj, "transmission", "g2"), "transmission.g2"),
        efficiency=efficiency,
    )

    sim_obj = _expect_mapping(root["sim"], "sim")
    _check_keys(
        sim_obj,
        "sim",
        {"input_speed_rad_s", "slip_stiffness", "dt_s", "max_time_s"},
        {"bend_extra_compression_mm"},
    )
    input_speed = _number(sim_obj, "sim", "input_speed_rad_s")
    if input_speed < 0.0:
        raise ValidationError(f"must be >= 0, got {input_speed}", "sim.input_speed_rad_s")
    dt = _positive(_number(sim_obj, "sim", "dt_s"), "sim.dt_s")
    max_time = _number(sim_obj, "sim", "max_time_s")
    if max_time <= dt:
        raise ValidationError(
            f"must exceed dt_s ({dt}), got {max_time}", "sim.max_time_s"
        )
    bend_extra = _number(sim_obj, "sim", "bend_extra_compression_mm", DEFAULT_BEND_EXTRA_MM)
    if bend_extra < 0.0:
        raise ValidationError(f"must be >= 0, got {bend_extra}", "sim.bend_extra_compression_mm")

    return Scenario(
        network=network,
        robot=robot,
        transmission=transmission,
        input_speed_rad_s=input_speed,
        slip_stiffness=_positive(
            _number(sim_obj, "sim", "slip_stiffness"), "sim.slip_stiffness"
        ),
        dt_s=dt,
        max_time_s=max_time,
        bend_extra_compression_mm=bend_extra,
    )


def parse_scenario(path) -> Scenario:
    """Load and fully validate a scenario file."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise IoError(f"cannot read scenario {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed scenario {path}: {exc.msg}", line=exc.lineno) from exc
    return scenario_from_dict(data)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Canonical document for a Scenario; parsing it back is an identity."""
    segments = []
    for seg in scenario.network.segments:
        if isinstance(seg, Straight):
            segments.append({"kind": "straight", "length_mm": seg.length})
        else:
            segments.append(
                {
                    "kind": "bend",
                    "bend_radius_mm": seg.bend_radius,
                    "sweep_deg": seg.sweep_angle,
                    "roll_deg": seg.bend_plane_roll,
                }
            )
    robot = scenario.robot
    return {
        "pipe": {
            "inner_radius_mm": scenario.network.inner_radius,
            "segments": segments,
        },
        "robot": {
            "h_mm": robot.contact_radius_mm,
            "sprocket_radius_mm": robot.sprocket_radius_mm,
            "orientation_deg": robot.orientation_deg,
            "spring_k_n_per_m": robot.spring_n_per_m,
            "preload_mm": robot.preload_mm,
            "max_compression_mm": robot.max_compression_mm,
            "springs": robot.springs,
            "mass_kg": robot.mass_kg,
            "mu": robot.friction,
            "robot_length_mm": robot.length_mm,
            "max_asym_deg": robot.max_asym_deg,
        },
        "transmission": {
            "g1": scenario.transmission.ring_ratio,
            "g2": scenario.transmission.output_ratio,
            "efficiency": scenario.transmission.efficiency,
        },
        "sim": {
            "input_speed_rad_s": scenario.input_speed_rad_s,
            "slip_stiffness": scenario.slip_stiffness,
            "dt_s": scenario.dt_s,
            "max_time_s": scenario.max_time_s,
            "bend_extra_compression_mm": scenario.bend_extra_compression_mm,
        },
    }


def save_scenario(scenario: Scenario, path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(scenario_to_dict(scenario), handle, indent=2)
            handle.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write scenario {path}: {exc}") from exc


def _record_row(record: SimRecord) -> list:
    return [
        record.t,
        record.s,
        record.segment_index,
        *record.track_speeds,
        *record.required_speeds,
        *record.slip,
        *record.compressions,
        record.common_torque,
    ]


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".9g")


def emit_records(records, fmt: str = "csv", destination=None) -> None:
    """Write the record stream as CSV or JSON to a path or open file."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")

    def write(handle):
        if fmt == "csv":
            handle.write(",".join(CSV_COLUMNS) + "\n")
            for record in records:
                handle.write(",".join(_fmt(v) for v in _record_row(record)) + "\n")
        else:
            rows = [
                dict(zip(CSV_COLUMNS, _record_row(record))) for record in records
            ]
            json.dump(rows, handle, indent=1)
            handle.write("\n")

    if destination is None or hasattr(destination, "write"):
        import sys

        write(destination if destination is not None else sys.stdout)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as handle:
            write(handle)
    except OSError as exc:
        raise IoError(f"cannot write records to {destination}: {exc}") from exc


def summary_to_dict(summary) -> dict:
    """Plain-dict view of a SimSummary for JSON output."""
    return asdict(summary)
