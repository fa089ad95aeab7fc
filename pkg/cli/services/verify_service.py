import importlib
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from cli.models.report_models import CheckResultModel, CommandReport, ExpectationModel, SuiteReport
from cli.parser.literal_parser import Expectation, LiteralParser, ParsedDocument, is_name
from cli.services.workbench_service import WorkbenchService
from plugins.check_registry import CheckContext, CheckRegistry
from plugins.verify_runner import CheckResult, VerifyRunner
from shared.errors import GorhomError, LiteralParseError, PreconditionError
from shared.event_bus import EventBus, EventType
from shared.logging_mixin import LoggingMixin

ACCEPTANCE_SUITE = "paper-suite"

_SUITE_MODULES = {ACCEPTANCE_SUITE: "plugins.suites.acceptance_suite"}

# argument kinds per command: a declared object name, an integer, a matrix literal or a bare word
SIGNATURES: Dict[str, Tuple[str, ...]] = {
    "canon": ("obj",),
    "ext": ("int", "obj", "obj"),
    "tor": ("int", "obj", "obj"),
    "extch": ("int", "obj", "obj"),
    "barext": ("int", "obj", "obj"),
    "bartor": ("int", "obj", "obj"),
    "pd": ("obj",),
    "gpd": ("obj",),
    "gid": ("obj",),
    "gfd": ("obj",),
    "dual": ("obj",),
    "tensor": ("obj", "obj"),
    "bartensor": ("obj", "obj"),
    "homprime": ("obj", "obj"),
    "barhom": ("obj", "obj"),
    "susp": ("int", "obj"),
    "phi": ("obj",),
    "psi": ("obj",),
    "exta": ("int", "obj", "obj"),
    "tora": ("int", "obj", "obj"),
    "wpure": ("obj", "matrix"),
    "filtration": ("obj",),
    "witness": ("word", "obj", "int"),
    "cogen": ("word", "int"),
}

_DIMENSIONS = {"pd": "pd", "gpd": "Gpd", "gid": "Gid", "gfd": "Gfd"}


def dispatch(service: WorkbenchService, command: str, args: Sequence) -> CommandReport:
    if command in _DIMENSIONS:
        return service.dimension(_DIMENSIONS[command], *args)
    return getattr(service, command)(*args)


class SuiteReporter:
    """Collects check results from the event bus while a suite runs."""

    def __init__(self):
        self.results: Dict[str, CheckResult] = {}

    def on_result(self, result: CheckResult) -> None:
        self.results[result.name] = result

    def __enter__(self) -> "SuiteReporter":
        bus = EventBus()
        bus.subscribe(EventType.CHECK_PASSED, self.on_result)
        bus.subscribe(EventType.CHECK_FAILED, self.on_result)
        return self

    def __exit__(self, *exc) -> None:
        bus = EventBus()
        bus.unsubscribe(EventType.CHECK_PASSED, self.on_result)
        bus.unsubscribe(EventType.CHECK_FAILED, self.on_result)


class VerifyService(LoggingMixin):
    def __init__(self, seed: int, oracle: bool = False, bound: Optional[int] = None, progress: bool = True):
        self.seed = seed
        self.oracle = oracle
        self.bound = bound
        self.progress = progress

    def run(self, suite: str) -> SuiteReport:
        if suite in _SUITE_MODULES:
            return self.run_registered(suite)
        path = Path(suite)
        if not path.is_file():
            raise PreconditionError(f"'{suite}' is neither a registered suite nor a readable file")
        return self.run_file(str(path), path.read_text(encoding="utf-8"))

    def run_registered(self, suite: str) -> SuiteReport:
        importlib.import_module(_SUITE_MODULES[suite])
        checks = CheckRegistry.get_instance().checks_for(suite)
        context = CheckContext(seed=self.seed, oracle=self.oracle)
        with SuiteReporter() as reporter:
            VerifyRunner(progress=self.progress).run(suite, checks, context)
        results = [
            CheckResultModel(
                name=r.name, description=r.description, passed=r.passed, detail=r.detail, cases=r.cases
            )
            for r in (reporter.results[c.name] for c in checks)
        ]
        return SuiteReport(
            suite=suite, seed=self.seed, passed=all(r.passed for r in results), checks=results
        )

    def run_file(self, name: str, text: str) -> SuiteReport:
        parser = LiteralParser()
        document = parser.parse_document(text)
        if document.ring is None:
            raise LiteralParseError("suite file declares no ring", 1, 1)
        service = WorkbenchService(document.ring, self.oracle, self.bound)
        outcomes = [self._evaluate(service, parser, document, e) for e in document.expectations]
        self.logger.info(
            "Suite file %s: %d of %d expectations hold",
            name,
            sum(o.passed for o in outcomes),
            len(outcomes),
        )
        return SuiteReport(
            suite=name, seed=self.seed, passed=all(o.passed for o in outcomes), expectations=outcomes
        )

    def _evaluate(
        self, service: WorkbenchService, parser: LiteralParser, document: ParsedDocument, e: Expectation
    ) -> ExpectationModel:
        call = " ".join((e.command,) + e.args)
        try:
            args = self._resolve(parser, document, e)
            report = dispatch(service, e.command, args)
            actual = report.lines[0]
            passed = actual == e.expected and not report.failed
        except LiteralParseError:
            raise
        except GorhomError as error:
            actual, passed = f"{type(error).__name__}: {error}", False
        return ExpectationModel(line=e.line, command=call, expected=e.expected, actual=actual, passed=passed)

    @staticmethod
    def _resolve(parser: LiteralParser, document: ParsedDocument, e: Expectation) -> List:
        kinds = SIGNATURES.get(e.command)
        if kinds is None:
            raise LiteralParseError(f"unknown command '{e.command}'", e.line, 1)
        if len(kinds) != len(e.args):
            raise LiteralParseError(
                f"'{e.command}' takes {len(kinds)} arguments, got {len(e.args)}", e.line, 1
            )
        resolved = []
        for kind, token in zip(kinds, e.args):
            if kind == "obj":
                if not is_name(token):
                    raise LiteralParseError(f"expected a declared object name, got '{token}'", e.line, 1)
                resolved.append(document.resolve(token, e.line))
            elif kind == "int":
                try:
                    resolved.append(int(token))
                except ValueError:
                    raise LiteralParseError(f"expected an integer, got '{token}'", e.line, 1)
            elif kind == "matrix":
                resolved.append(parser.parse_matrix(token, e.line))
            else:
                resolved.append(token)
        return resolved


def render_suite(report: SuiteReport) -> str:
    lines = [f"suite {report.suite} (seed {report.seed})"]
    for c in report.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    for e in report.expectations:
        mark = "PASS" if e.passed else "FAIL"
        detail = "" if e.passed else f" (expected '{e.expected}', got '{e.actual}')"
        lines.append(f"{mark} line {e.line}: {e.command}{detail}")
    total = len(report.checks) + len(report.expectations)
    failed = sum(not c.passed for c in report.checks) + sum(not e.passed for e in report.expectations)
    lines.append(f"{total - failed}/{total} passed")
    return "\n".join(lines)
