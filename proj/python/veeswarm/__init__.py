"""V-formation UAV swarm simulator (C++ core)."""

from ._core import (
    Circle,
    ConvexPolygon,
    FormationSpec,
    Gains,
    MetricsSample,
    RunResult,
    RunSummary,
    Scenario,
    ScenarioError,
    SimConfig,
    Termination,
    TrajectoryRow,
    Vec2,
    cli,
    closest_boundary_point,
    desired_position,
    load_scenario,
    make_rect,
    obstacle_distance,
    parse_scenario,
    recompute_metrics,
    run,
    serialize_scenario,
    write_logs,
)

__all__ = [name for name in dir() if not name.startswith("_")]
