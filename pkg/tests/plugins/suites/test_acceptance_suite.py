import pytest

import plugins.suites.acceptance_suite  # noqa: F401  registers the checks
from plugins.check_registry import CheckContext, CheckRegistry
from resources.config import get_settings

SUITE_CHECKS = [
    "pontryagin-iso",
    "bar-duality",
    "disk-bridging",
    "suspension-laws",
    "z4-facts",
    "gp-w-intersection",
    "dimension-shifting",
    "oracle-equivalence",
    "cotorsion-consequences",
    "graded-correspondence",
    "filtration-purity",
]


def test_suite_registers_every_check():
    names = [c.name for c in CheckRegistry.get_instance().checks_for("paper-suite")]
    assert names == SUITE_CHECKS


@pytest.mark.slow
@pytest.mark.parametrize("name", SUITE_CHECKS)
def test_check_passes(name):
    check = CheckRegistry.get_instance().get_check(name)
    outcome = check.run(CheckContext(seed=get_settings().seed, oracle=True))
    assert outcome.passed, outcome.detail
    assert outcome.cases >= 1
