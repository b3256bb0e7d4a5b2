"""Shared fixtures.

Every scenario preset is solved exactly once per test session; the property
and acceptance suites both iterate over the same runs.
"""

import pytest

from ebovax import scenarios


@pytest.fixture(scope="session")
def preset_runs():
    """Map preset name -> (Trajectory or OcpSolution, ScenarioSummary)."""
    return {name: scenarios.run_scenario(name) for name in scenarios.preset_names()}
