"""Cognitive radar spectrum-sharing simulator (C++ core)."""

import json

from ._core import (
    NumericError,
    bellman_actions,
    catalog_size,
    collision_count,
    enumerate_waveforms,
    first_order_dominates,
    loss,
    missed_opportunity_count,
    saa_average_cost,
    second_order_dominates,
    sinr_db,
    stationary_distribution,
    widest_vacancy_candidates,
    widest_vacancy_width,
)
from . import _core

EXPERIMENTS = ("run", "sweep-p12", "sweep-joint", "sweep-miss", "short-horizon")


def run(kind="run", **config):
    """Run an experiment; keyword arguments use the config-file field names.

    Returns the result rows as a list of dicts.
    """
    return json.loads(_core._run_experiment(kind, json.dumps(config)))["rows"]


def dominance(policy_1="ts", policy_2="saa", statistic="loss", **config):
    return json.loads(_core._dominance(json.dumps(config), policy_1, policy_2, statistic))


__all__ = [
    "EXPERIMENTS",
    "NumericError",
    "bellman_actions",
    "catalog_size",
    "collision_count",
    "dominance",
    "enumerate_waveforms",
    "first_order_dominates",
    "loss",
    "missed_opportunity_count",
    "run",
    "saa_average_cost",
    "second_order_dominates",
    "sinr_db",
    "stationary_distribution",
    "widest_vacancy_candidates",
    "widest_vacancy_width",
]
