import pytest

from plugins.check_registry import Check, CheckContext, CheckOutcome, CheckRegistry
from shared.singleton_meta_class import SingletonMetaClass


@pytest.fixture
def registry():
    """A fresh registry; the process-wide one, with the suite checks, comes back afterwards."""
    saved = SingletonMetaClass._instances.pop(CheckRegistry, None)
    yield CheckRegistry.get_instance()
    CheckRegistry.reset_instance()
    if saved is not None:
        SingletonMetaClass._instances[CheckRegistry] = saved


def _check(name: str, suite: str = "unit") -> Check:
    return Check(name, f"{name} check", suite, lambda context: CheckOutcome(True, "ok"))


def test_registry_is_a_singleton(registry):
    assert CheckRegistry() is registry


def test_register_and_group_by_suite(registry):
    registry.register_check(_check("b"))
    registry.register_check(_check("a"))
    registry.register_check(_check("c", suite="other"))
    assert registry.list_checks() == ["b", "a", "c"]
    assert [c.name for c in registry.checks_for("unit")] == ["b", "a"]
    assert registry.suites() == ["other", "unit"]
    assert registry.get_check("a").run(CheckContext(seed=1)).passed


def test_duplicate_names_are_rejected(registry):
    registry.register_check(_check("a"))
    with pytest.raises(ValueError):
        registry.register_check(_check("a"))


def test_unregister(registry):
    registry.register_check(_check("a"))
    assert registry.unregister_check("a")
    assert not registry.unregister_check("a")
    assert registry.get_check("a") is None
