import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles module

from pipeclimber import (
    Bend,
    RobotParams,
    Scenario,
    Straight,
    TransmissionConfig,
    build_network,
)


def make_robot(**overrides) -> RobotParams:
    params = dict(
        contact_radius_mm=50.0,
        sprocket_radius_mm=20.0,
        orientation_deg=0.0,
        spring_n_per_m=1000.0,
        preload_mm=8.0,
        mass_kg=3.0,
        friction=0.4,
        length_mm=200.0,
    )
    params.update(overrides)
    return RobotParams(**params)


def make_four_section_scenario(**overrides) -> Scenario:
    """Vertical run, elbow, horizontal run, U-bend: the reference network."""
    segments = [
        Straight(500.0),
        Bend(300.0, 90.0),
        Straight(350.0),
        Bend(300.0, 180.0),
    ]
    params = dict(
        network=build_network(segments, inner_radius=77.0),
        robot=make_robot(),
        transmission=TransmissionConfig(),
        input_speed_rad_s=2.5,  # 50 mm/s at the sprocket
        slip_stiffness=1.0,
        dt_s=0.01,
        max_time_s=120.0,
    )
    params.update(overrides)
    return Scenario(**params)


@pytest.fixture
def four_section_scenario() -> Scenario:
    return make_four_section_scenario()


@pytest.fixture
def robot_params() -> RobotParams:
    return make_robot()
