"""Python access to the wdl core: schedules, orbits and the six examples."""

import json

from . import _wdl
from ._wdl import (
    DomainError,
    InfeasibleError,
    InsufficientDataError,
    RegionError,
    blaschke_eval,
    boundary_gap_series,
    contraction_factor,
    ell,
    fit_power_law,
    hyp_dist_unit,
    multiplier_at_one,
)

__all__ = [
    "DomainError",
    "InfeasibleError",
    "InsufficientDataError",
    "RegionError",
    "blaschke_eval",
    "boundary_gap_series",
    "contraction_factor",
    "cross_ratio_sweep",
    "ell",
    "fit_power_law",
    "hyp_dist_unit",
    "multiplier_at_one",
    "orbit",
    "run_example",
    "schedule",
]


def schedule(family, depth, samples=1024):
    return json.loads(_wdl.schedule_json(family, depth, samples))


def orbit(family, depth, start=4.0, perturbation="random", seed=0, envelope=0.9):
    """Header followed by one record per step."""
    lines = _wdl.orbit_jsonl(family, depth, complex(start), perturbation, seed, envelope).splitlines()
    return [json.loads(line) for line in lines]


def run_example(example_id, depth=12, perturbation="random", seed=0, envelope=0.9):
    return json.loads(_wdl.example_json(example_id, depth, perturbation, seed, envelope))


def cross_ratio_sweep(nr=99, nx=999):
    return json.loads(_wdl.cross_ratio_sweep_json(nr, nx))
