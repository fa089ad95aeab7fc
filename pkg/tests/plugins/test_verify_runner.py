import time

import pytest

from plugins.check_registry import Check, CheckContext, CheckOutcome
from plugins.verify_runner import VerifyRunner
from shared.errors import InvariantViolationError
from shared.event_bus import EventBus, EventType


def _sleepy(name: str, delay: float, passed: bool = True) -> Check:
    def run(context: CheckContext) -> CheckOutcome:
        time.sleep(delay)
        return CheckOutcome(passed, f"seed {context.seed}", 3)

    return Check(name, name, "unit", run)


def _raising(context: CheckContext) -> CheckOutcome:
    raise InvariantViolationError("broken", degree=2)


@pytest.fixture
def events():
    seen = []
    bus = EventBus()

    def record(result):
        seen.append(result.name)

    bus.subscribe(EventType.CHECK_PASSED, record)
    bus.subscribe(EventType.CHECK_FAILED, record)
    yield seen
    bus.unsubscribe(EventType.CHECK_PASSED, record)
    bus.unsubscribe(EventType.CHECK_FAILED, record)


def test_results_keep_registration_order(events):
    checks = [_sleepy("slow", 0.2), _sleepy("fast", 0.0), _sleepy("failing", 0.05, passed=False)]
    result = VerifyRunner(workers=3, progress=False).run("unit", checks, CheckContext(seed=7))
    assert [r.name for r in result.results] == ["slow", "fast", "failing"]
    assert result.results[0].detail == "seed 7"
    assert not result.passed
    assert [r.name for r in result.failures] == ["failing"]
    assert sorted(events) == ["failing", "fast", "slow"]


def test_workbench_errors_become_failures(events):
    check = Check("raises", "raises", "unit", _raising)
    result = VerifyRunner(workers=1, progress=False).run("unit", [check], CheckContext(seed=1))
    [failure] = result.failures
    assert failure.cases == 0
    assert failure.detail.startswith("InvariantViolationError: broken (at degree 2)")
    assert events == ["raises"]
