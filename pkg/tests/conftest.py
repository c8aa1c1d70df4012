import random
from pathlib import Path

import pytest

from symworld.core import TASKS
from symworld.engine import reset, step

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(params=TASKS)
def task(request):
    return request.param


def random_rollout(task, seed, rng_seed=0, **reset_options):
    """Yield (state, action, world_hash_before, result) along a random walk."""
    rng = random.Random(rng_seed)
    state, obs, _, actions = reset(task, seed, **reset_options)
    while not state.done:
        action = rng.choice(list(actions))
        before = state.world_hash()
        result = step(state, action)
        yield state, action, before, result
        actions = result.valid_actions


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
