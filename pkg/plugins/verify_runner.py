from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import List, Optional, Sequence

from tqdm import tqdm

from plugins.check_registry import Check, CheckContext, CheckOutcome
from resources.config import get_settings
from shared.errors import GorhomError
from shared.event_bus import EventBus, EventType
from shared.logging_mixin import LoggingMixin


@dataclass(frozen=True)
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str
    cases: int


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]


class VerifyRunner(LoggingMixin):
    """
    Runs independent checks on a thread pool. Results come back in registration
    order whatever the completion order was; progress goes to stderr.
    """

    def __init__(self, workers: Optional[int] = None, progress: bool = True):
        self.workers = workers or get_settings().verify_workers
        self.progress = progress
        self.event_bus = EventBus()

    def run(self, suite: str, checks: Sequence[Check], context: CheckContext) -> SuiteResult:
        self.logger.info("Running %d checks of suite '%s'", len(checks), suite)
        results: List[Optional[CheckResult]] = [None] * len(checks)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = {pool.submit(self._run_one, c, context): i for i, c in enumerate(checks)}
            with tqdm(total=len(checks), desc=suite, disable=not self.progress, leave=False) as bar:
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update(1)
        outcome = SuiteResult(suite, [r for r in results if r is not None])
        self.event_bus.publish(EventType.SUITE_COMPLETED, outcome)
        return outcome

    def _run_one(self, check: Check, context: CheckContext) -> CheckResult:
        self.event_bus.publish(EventType.CHECK_STARTED, check.name)
        try:
            outcome = check.run(context)
        except GorhomError as e:
            self.logger.warning("Check '%s' raised %s: %s", check.name, type(e).__name__, e)
            outcome = CheckOutcome(False, f"{type(e).__name__}: {e}", 0)
        result = CheckResult(check.name, check.description, outcome.passed, outcome.detail, outcome.cases)
        event = EventType.CHECK_PASSED if result.passed else EventType.CHECK_FAILED
        self.event_bus.publish(event, result)
        return result
