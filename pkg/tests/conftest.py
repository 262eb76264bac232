import os
import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import qapswarm as qs

warnings.filterwarnings("ignore", module="numba")

# Message shown when a criterion needs QAPLIB data that cannot be shipped.
BUR26A_MISSING = (
    "bur26a.dat is not available: the QAPLIB archive is unreachable from "
    "this build environment and the instance (two dense 26x26 matrices of "
    "measured values) cannot be reconstructed offline.  Place the QAPLIB "
    "bur26a.dat under $QAPSWARM_DATA or next to the bundled data files to "
    "run this benchmark as stated (see src/qapswarm/data/README.md); an "
    "equivalent capability check runs on the synthetic rand26 instance."
)


def _find_external(name: str):
    candidates = []
    env = os.environ.get("QAPSWARM_DATA")
    if env:
        candidates.append(Path(env) / name)
    candidates.append(Path(qs.data_path("chr12a.dat")).parent / name)
    for c in candidates:
        if c.is_file():
            return c
    return None


@pytest.fixture(scope="session")
def chr12a():
    return qs.load_bundled("chr12a")


@pytest.fixture(scope="session")
def chr12a_sln():
    return qs.load_bundled_solution("chr12a")


@pytest.fixture(scope="session")
def esc32e():
    return qs.load_bundled("esc32e")


@pytest.fixture(scope="session")
def rand26():
    return qs.load_bundled("rand26")


@pytest.fixture(scope="session")
def bur26a_path():
    """Path to the real bur26a.dat if the user supplied one, else None."""
    return _find_external("bur26a.dat")


@pytest.fixture(scope="session")
def tiny():
    """The smallest well-formed instance, cost structure known by hand."""
    return qs.parse_instance("2  0 1  1 0   0 3  3 0", name="tiny")


@pytest.fixture(scope="session")
def stand_in_26_run(rand26):
    """One full-size (250 x 50, 200 iterations) run on the synthetic 26
    instance, shared by the statistics-shape and capability checks."""
    cfg = qs.SolverConfig(
        swarms=250, swarm_size=50, max_iterations=200, seed=1, workers=2,
        coefficients=qs.PsoCoefficients(0.8, 0.5, 0.5, sv_mode="raw",
                                        sx_mode="second-target", depth=2),
    )
    return qs.run(cfg, rand26)


@pytest.fixture(scope="session")
def migration_26_run(rand26):
    """A migration-enabled multi-swarm run on the 26-size instance."""
    cfg = qs.SolverConfig(
        swarms=50, swarm_size=20, max_iterations=80, seed=3, workers=2,
        migration_factor=0.33,
        coefficients=qs.PsoCoefficients(0.8, 0.5, 0.5, sv_mode="raw",
                                        sx_mode="second-target", depth=2),
    )
    return qs.run(cfg, rand26)
