"""Tree auditor: evaluates the best-practice check table against a file tree.

Checks are either presence checks (a path or path pattern must exist) or
content checks (a named rule over the parsed CI pipeline configuration).
Every check is evaluated exactly once per audit; degenerate trees yield
findings, never errors. Content checks whose target file is absent are
reported as advisory "not evaluated" entries, since the matching presence
check already covers the absence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fnmatch import fnmatchcase

from .catalog import list_practices
from .payload import PIPELINE_CONFIG_FILE, TRAVIS_CONFIG_FILE
from .pipeline import Pipeline, PipelineError, parse_pipeline
from .tree import FileTree

REQUIRED_STAGES = ("build", "tests", "quality", "deploy")


@dataclass(frozen=True)
class AuditCheck:
    id: str
    kind: str  # "presence" | "content"
    targets: tuple[str, ...]  # alternative paths or patterns; first is canonical
    practice_id: str
    description: str
    predicate: str | None = None  # content checks only


CHECK_TABLE: tuple[AuditCheck, ...] = (
    AuditCheck("DOC-README", "presence", ("README.md",),
               "documentation.big-picture", "big-picture documentation: README"),
    AuditCheck("DOC-CHANGELOG", "presence", ("CHANGELOG.md",),
               "documentation.big-picture", "big-picture documentation: changelog"),
    AuditCheck("DOC-CONTRIBUTING", "presence", ("CONTRIBUTING.md",),
               "documentation.big-picture", "big-picture documentation: contributor guide"),
    AuditCheck("DOC-CODE-OF-CONDUCT", "presence", ("CODE_OF_CONDUCT.md",),
               "documentation.big-picture", "big-picture documentation: code of conduct"),
    AuditCheck("DOC-TUTORIAL", "presence", ("TUTORIAL.md",),
               "documentation.big-picture", "big-picture documentation: user tutorial"),
    AuditCheck("DOC-APIREF-CONFIG", "presence", ("Doxyfile",),
               "documentation.function-reference", "function-reference generator configuration"),
    AuditCheck("LIC-FILE", "presence", ("LICENSE",),
               "project-management.project-management-tool", "license file"),
    AuditCheck("FMT-CONFIG", "presence", (".clang-format",),
               "coding-style.formatting-tool", "formatting-rules file"),
    AuditCheck("BUILD-TOPLEVEL", "presence", ("CMakeLists.txt",),
               "automation.build-automation", "top-level build configuration"),
    AuditCheck("BUILD-BINDINGS", "presence", ("swig/*.i",),
               "automation.build-automation", "bindings interface file"),
    AuditCheck("TEST-DIR-PRESENT", "presence", ("test/*",),
               "testing.unit-test-framework", "unit test directory"),
    AuditCheck("CI-CONFIG-PRESENT", "presence", (PIPELINE_CONFIG_FILE, TRAVIS_CONFIG_FILE),
               "automation.continuous-integration", "continuous-integration configuration"),
    AuditCheck("CI-FOUR-STAGES", "content", (PIPELINE_CONFIG_FILE,),
               "automation.continuous-integration", "pipeline declares the four canonical stages",
               predicate="stage-order"),
    AuditCheck("CI-TEST-JOB", "content", (PIPELINE_CONFIG_FILE,),
               "testing.unit-test-framework", "pipeline runs the tests",
               predicate="tests-stage-job"),
    AuditCheck("CI-COVERAGE-JOB", "content", (PIPELINE_CONFIG_FILE,),
               "testing.coverage-report", "pipeline collects a coverage report",
               predicate="quality-coverage-job"),
    AuditCheck("CI-DOCS-DEPLOY", "content", (PIPELINE_CONFIG_FILE,),
               "deployment.online-documentation", "pipeline deploys the documentation",
               predicate="deploy-stage-job"),
    AuditCheck("PKG-RECIPE-STUB", "presence", ("conda/recipe-stub.yaml",),
               "deployment.package-binaries", "binary packaging recipe stub"),
)


def _stage_order(pipeline: Pipeline) -> tuple[bool, str]:
    if pipeline.stages == REQUIRED_STAGES:
        return True, ""
    return False, (
        f"stages are {list(pipeline.stages)}, expected {list(REQUIRED_STAGES)}"
    )


def _tests_stage_job(pipeline: Pipeline) -> tuple[bool, str]:
    if any(job.stage == "tests" for job in pipeline.jobs):
        return True, ""
    return False, "no job in stage 'tests'"


def _quality_coverage_job(pipeline: Pipeline) -> tuple[bool, str]:
    for job in pipeline.jobs:
        if job.stage == "quality" and any("coverage" in line for line in job.script):
            return True, ""
    return False, "no job in stage 'quality' mentions the coverage target"


def _deploy_stage_job(pipeline: Pipeline) -> tuple[bool, str]:
    if any(job.stage == "deploy" for job in pipeline.jobs):
        return True, ""
    return False, "no job in stage 'deploy'"


PREDICATES = {
    "stage-order": _stage_order,
    "tests-stage-job": _tests_stage_job,
    "quality-coverage-job": _quality_coverage_job,
    "deploy-stage-job": _deploy_stage_job,
}


@dataclass(frozen=True)
class AuditFinding:
    check_id: str
    severity: str  # "fail" | "advisory"
    message: str
    path: str = "-"

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "severity": self.severity,
            "message": self.message,
            "path": self.path,
        }


@dataclass(frozen=True)
class AuditReport:
    findings: tuple[AuditFinding, ...]  # fail findings, in check-table order
    advisories: tuple[AuditFinding, ...]
    checks_run: int

    @property
    def checks_failed(self) -> int:
        return len(self.findings)

    @property
    def score(self) -> float:
        return score(self)

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "checks_run": self.checks_run,
            "checks_failed": self.checks_failed,
            "findings": [finding.to_dict() for finding in self.findings],
            "advisories": [advisory.to_dict() for advisory in self.advisories],
        }


def score(report: AuditReport) -> float:
    """Uniform-weight compliance score: 1 - failed/run."""
    if report.checks_run <= 0:
        raise ValueError("score is undefined when no checks were run")
    return 1.0 - report.checks_failed / report.checks_run


def _present(tree: FileTree, targets: tuple[str, ...]) -> bool:
    return any(
        fnmatchcase(path, target) for target in targets for path in tree.paths()
    )


def audit(tree: FileTree) -> AuditReport:
    """Evaluate every check in the table against the tree."""
    pipeline: Pipeline | None = None
    parse_error: PipelineError | None = None
    config_present = PIPELINE_CONFIG_FILE in tree
    if config_present:
        try:
            pipeline = parse_pipeline(tree.get(PIPELINE_CONFIG_FILE))
        except PipelineError as exc:
            parse_error = exc

    findings: list[AuditFinding] = []
    advisories: list[AuditFinding] = []
    for check in CHECK_TABLE:
        if check.kind == "presence":
            if not _present(tree, check.targets):
                wanted = " or ".join(check.targets)
                findings.append(
                    AuditFinding(check.id, "fail", f"missing {check.description} ({wanted})",
                                 check.targets[0])
                )
        else:
            if not config_present:
                advisories.append(
                    AuditFinding(check.id, "advisory",
                                 "pipeline configuration absent, content rule not evaluated",
                                 check.targets[0])
                )
            elif parse_error is not None:
                findings.append(
                    AuditFinding(check.id, "fail",
                                 f"pipeline configuration does not parse: {parse_error}",
                                 check.targets[0])
                )
            else:
                ok, detail = PREDICATES[check.predicate](pipeline)
                if not ok:
                    findings.append(AuditFinding(check.id, "fail", detail, check.targets[0]))

    for practice in list_practices():
        if not practice.checks:
            advisories.append(
                AuditFinding(practice.id, "advisory",
                             f"advisory practice, verify by review: {practice.name}")
            )
    return AuditReport(tuple(findings), tuple(advisories), len(CHECK_TABLE))
