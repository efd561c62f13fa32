import random
import sys

import pytest

from greenskel import Transformation, TransformationSemigroup
from greenskel import catalog


@pytest.fixture(scope="session")
def fixtures():
    return catalog.all_fixtures()


def random_semigroup(rng, max_states=4, max_gens=3, cap=200):
    """A random generated semigroup; None when the closure is too large."""
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_gens)
    gens = [
        Transformation(tuple(rng.randrange(n) for _ in range(n))) for _ in range(k)
    ]
    try:
        return TransformationSemigroup.generate(n, gens, max_elements=cap)
    except Exception:
        return None


def sample_semigroups(seed, count, max_states=4, max_gens=3, monoid_cap=60):
    """Deterministic corpus of semigroups with |S^1| below the cap."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ts = random_semigroup(rng, max_states, max_gens, cap=monoid_cap + 1)
        if ts is None:
            continue
        if len(ts.adjoin_identity()) <= monoid_cap:
            out.append(ts)
    return out


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # repeat the acceptance scoreboard where captured stdout cannot hide it
    mod = sys.modules.get("test_acceptance")
    if mod is not None and getattr(mod, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
