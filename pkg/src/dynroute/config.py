"""Run configuration: road categories, model hyper-parameters, config files.

Config files are JSON key-value documents.  Everything has a sensible
default, so a config file only needs the keys it wants to override.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import InvalidThresholds, MalformedRow

# Additive floor applied to every next-edge choice weight so the
# distribution stays normalizable when all incident traffic is zero.
CHOICE_WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class RoadCategory:
    """Physical parameters shared by all edges of one road class."""

    thickness: float        # road width, meters
    free_flow_speed: float  # m/s
    jam_speed: float        # m/s

    def __post_init__(self):
        if self.thickness <= 0:
            raise MalformedRow(f"category thickness must be > 0, got {self.thickness}")
        if not 0 < self.jam_speed < self.free_flow_speed:
            raise MalformedRow(
                f"category speeds must satisfy 0 < jam < free-flow, "
                f"got jam={self.jam_speed}, free={self.free_flow_speed}"
            )


DEFAULT_CATEGORIES: dict[str, RoadCategory] = {
    "local": RoadCategory(thickness=4.0, free_flow_speed=8.3, jam_speed=1.4),
    "arterial": RoadCategory(thickness=7.0, free_flow_speed=16.7, jam_speed=2.8),
    "highway": RoadCategory(thickness=12.0, free_flow_speed=27.8, jam_speed=4.2),
}


@dataclass(frozen=True)
class SimParams:
    """Hyper-parameters of the traffic model.

    ``alpha`` and ``beta`` are the density thresholds separating the
    free-flow / normal / jam edge states.  ``inverse_choice`` switches the
    next-edge sampler from traffic-proportional weights to 1/(eps + r(x));
    ``monotone_speed`` extends the linear speed formula across the normal
    state instead of keeping the free-flow initialisation there.
    """

    dt: float = 1.0
    alpha: float = 0.4
    beta: float = 0.9
    vehicle_thickness: float = 2.0
    vehicle_max_speed: float = 33.0
    inverse_choice: bool = False
    monotone_speed: bool = False

    def __post_init__(self):
        if not 0 < self.alpha < self.beta:
            raise InvalidThresholds(
                f"thresholds must satisfy 0 < alpha < beta, "
                f"got alpha={self.alpha}, beta={self.beta}"
            )
        if self.dt <= 0:
            raise MalformedRow(f"dt must be > 0, got {self.dt}")


@dataclass(frozen=True)
class RunConfig:
    """Everything a harness run needs besides the graph itself."""

    params: SimParams = field(default_factory=SimParams)
    vehicles: int = 250
    horizon: int = 300
    categories: dict[str, RoadCategory] = field(default_factory=lambda: dict(DEFAULT_CATEGORIES))


def _parse_categories(raw: dict) -> dict[str, RoadCategory]:
    cats = {}
    for name, spec in raw.items():
        try:
            cats[name] = RoadCategory(
                thickness=float(spec["thickness"]),
                free_flow_speed=float(spec["free_flow_speed"]),
                jam_speed=float(spec["jam_speed"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedRow(f"bad category entry {name!r}: {exc}") from exc
    return cats


def load_categories(path: str | Path) -> dict[str, RoadCategory]:
    """Load a category table from a JSON document."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedRow(f"{path}: {exc}") from exc
    return _parse_categories(raw)


def load_config(path: str | Path) -> RunConfig:
    """Load a run config from a JSON document, filling defaults."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedRow(f"{path}: {exc}") from exc

    choice = raw.get("choice_weighting", "proportional")
    if choice not in ("proportional", "inverse"):
        raise MalformedRow(f"choice_weighting must be proportional|inverse, got {choice!r}")
    speed = raw.get("speed_model", "faithful")
    if speed not in ("faithful", "monotone"):
        raise MalformedRow(f"speed_model must be faithful|monotone, got {speed!r}")

    defaults = SimParams()
    params = SimParams(
        dt=float(raw.get("dt", defaults.dt)),
        alpha=float(raw.get("alpha", defaults.alpha)),
        beta=float(raw.get("beta", defaults.beta)),
        vehicle_thickness=float(raw.get("vehicle_thickness", defaults.vehicle_thickness)),
        vehicle_max_speed=float(raw.get("vehicle_max_speed", defaults.vehicle_max_speed)),
        inverse_choice=choice == "inverse",
        monotone_speed=speed == "monotone",
    )
    categories = dict(DEFAULT_CATEGORIES)
    if "categories" in raw:
        categories.update(_parse_categories(raw["categories"]))
    return RunConfig(
        params=params,
        vehicles=int(raw.get("vehicles", 250)),
        horizon=int(raw.get("horizon", 300)),
        categories=categories,
    )


def with_thresholds(params: SimParams, alpha: float, beta: float) -> SimParams:
    """Copy ``params`` with new alpha/beta (validated)."""
    return replace(params, alpha=alpha, beta=beta)
