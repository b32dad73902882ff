"""Shared fixtures: the four reference simulation scenarios at seed 42.

Session-scoped so the acceptance gate and unit tests reuse one run of each
10000-experiment batch instead of re-simulating.
"""

import pytest

from replikit import ContaminationSpec, SimulationConfig, run_simulation

MASTER_SEED = 42
DEFAULT_CONTAMINATION = ContaminationSpec(epsilon=0.1, scale_mult=10.0)


def scenario_config(true_effect_d: float = 0.0, contaminated: bool = False) -> SimulationConfig:
    return SimulationConfig(
        runs=10000,
        n_per_arm=30,
        mu=100.0,
        sigma=20.0,
        true_effect_d=true_effect_d,
        contamination=DEFAULT_CONTAMINATION if contaminated else None,
        master_seed=MASTER_SEED,
    )


@pytest.fixture(scope="session")
def batch_null():
    return run_simulation(scenario_config(0.0))


@pytest.fixture(scope="session")
def batch_small():
    return run_simulation(scenario_config(0.2))


@pytest.fixture(scope="session")
def batch_null_star():
    return run_simulation(scenario_config(0.0, contaminated=True))


@pytest.fixture(scope="session")
def batch_small_star():
    return run_simulation(scenario_config(0.2, contaminated=True))
