from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from shared.logging_mixin import LoggingMixin
from shared.singleton_meta_class import SingletonMetaClass


@dataclass(frozen=True)
class CheckContext:
    """What a check may depend on besides the mathematics: the seed and the oracle switch."""

    seed: int
    oracle: bool = False


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    detail: str
    cases: int = 1


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    suite: str
    run: Callable[[CheckContext], CheckOutcome]


class CheckRegistry(LoggingMixin, metaclass=SingletonMetaClass):
    """
    Registry of named verification checks, grouped into suites.
    """

    def __init__(self):
        self._checks: Dict[str, Check] = {}

    def register_check(self, check: Check) -> None:
        """
        Registers a single check.

        Args:
            check: The check to register; its name must be unused
        """
        if check.name in self._checks:
            raise ValueError(f"A check with the name '{check.name}' is already registered.")
        self._checks[check.name] = check
        self.logger.info("Check '%s' registered for suite '%s'.", check.name, check.suite)

    def unregister_check(self, name: str) -> bool:
        if name in self._checks:
            del self._checks[name]
            self.logger.info("Check '%s' removed from registry.", name)
            return True
        self.logger.warning(
            "Check '%s' could not be removed because it is not in the registry.", name
        )
        return False

    def get_check(self, name: str) -> Optional[Check]:
        return self._checks.get(name)

    def list_checks(self) -> List[str]:
        return list(self._checks.keys())

    def checks_for(self, suite: str) -> List[Check]:
        """Checks of one suite, in registration order."""
        return [c for c in self._checks.values() if c.suite == suite]

    def suites(self) -> List[str]:
        return sorted({c.suite for c in self._checks.values()})


def check(name: str, description: str, suite: str):
    """Decorator registering the function as a check when its module is imported."""

    def decorate(run: Callable[[CheckContext], CheckOutcome]):
        CheckRegistry.get_instance().register_check(Check(name, description, suite, run))
        return run

    return decorate
