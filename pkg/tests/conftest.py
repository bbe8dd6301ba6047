import pytest

from frpkit import (
    MaterialDb,
    ingest_fibers,
    ingest_polymers,
    laminate_spec_from_json,
    requirement_from_json,
)
from frpkit.cli import data_path

# tau_c that puts the bundled fiber requirement (sigma=3450, d=0.636) at a
# critical length of exactly 0.25 mm, forcing the Long class.
FORCED_TAU_C = 4388.4


@pytest.fixture(scope="session")
def seed_polymers():
    with open(data_path("seed_polymers.csv"), newline="") as fh:
        return ingest_polymers(fh)


@pytest.fixture(scope="session")
def seed_fibers():
    with open(data_path("seed_fibers.csv"), newline="") as fh:
        return ingest_fibers(fh)


@pytest.fixture(scope="session")
def seed_db(seed_polymers, seed_fibers):
    return MaterialDb(polymers=tuple(seed_polymers), fibers=tuple(seed_fibers))


@pytest.fixture(scope="session")
def polymer_requirement():
    return requirement_from_json(data_path("requirements_polymer.json").read_text())


@pytest.fixture(scope="session")
def fiber_requirement():
    return requirement_from_json(data_path("requirements_fiber.json").read_text())


@pytest.fixture(scope="session")
def table7_spec():
    return laminate_spec_from_json(data_path("table7.json").read_text())


@pytest.fixture(scope="session")
def table6_spec():
    return laminate_spec_from_json(data_path("table6.json").read_text())
