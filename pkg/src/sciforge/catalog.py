"""Machine-readable catalog of software-engineering best practices.

Sixteen practices in seven groups, each carrying its implementation
candidates, the selections made by this toolchain, and the audit checks
that verify it structurally. Practices without a structural footprint in
a repository tree carry an empty check list and are reported as advisory.
"""

from __future__ import annotations

from dataclasses import dataclass

GROUPS = (
    "Project management",
    "Coding style",
    "Independence",
    "Automation",
    "Documentation",
    "Testing",
    "Deployment",
)


class PracticeNotFound(KeyError):
    """Raised when a practice id is not in the catalog."""


@dataclass(frozen=True)
class BestPractice:
    id: str
    group: str
    name: str
    candidates: tuple[str, ...]
    selected: tuple[str, ...] = ()
    checks: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "group": self.group,
            "name": self.name,
            "candidates": list(self.candidates),
            "selected": list(self.selected),
            "checks": list(self.checks),
        }


CATALOG: tuple[BestPractice, ...] = (
    BestPractice(
        id="project-management.version-control-system",
        group="Project management",
        name="Version control system",
        candidates=("git", "mercurial", "svn"),
        selected=("git",),
    ),
    BestPractice(
        id="project-management.project-management-tool",
        group="Project management",
        name="Project management tool",
        candidates=("GitLab", "GitHub", "Bitbucket", "JIRA"),
        selected=("GitLab", "GitHub"),
        checks=("LIC-FILE",),
    ),
    BestPractice(
        id="project-management.workflow",
        group="Project management",
        name="Workflow",
        candidates=("GitLab Flow", "GitHub Flow", "git flow"),
        selected=("GitLab Flow",),
    ),
    BestPractice(
        id="coding-style.formatting-style",
        group="Coding style",
        name="Code formatting style",
        candidates=("Mozilla", "LLVM", "Google", "Chromium"),
        selected=("Mozilla",),
        checks=("FMT-CONFIG",),
    ),
    BestPractice(
        id="coding-style.formatting-tool",
        group="Coding style",
        name="Code formatting tool",
        candidates=("clang-format",),
        selected=("clang-format",),
        checks=("FMT-CONFIG",),
    ),
    BestPractice(
        id="coding-style.static-analysis",
        group="Coding style",
        name="Static code analysis",
        candidates=("clang-tidy", "cppcheck", "cpplint"),
    ),
    BestPractice(
        id="independence.open-file-formats",
        group="Independence",
        name="Use open file formats",
        candidates=("JSON", "CSV", "HDF5"),
    ),
    BestPractice(
        id="independence.open-source-libraries",
        group="Independence",
        name="Use open-source libraries",
        candidates=("Eigen", "FFTW", "GNU Scientific Library"),
    ),
    BestPractice(
        id="automation.continuous-integration",
        group="Automation",
        name="Continuous integration",
        candidates=("gitlab-ci", "Travis CI", "AppVeyor", "Microsoft Azure"),
        selected=("gitlab-ci", "Travis CI"),
        checks=("CI-CONFIG-PRESENT", "CI-FOUR-STAGES"),
    ),
    BestPractice(
        id="automation.build-automation",
        group="Automation",
        name="Build automation",
        candidates=("CMake", "GNU make", "Bazel", "Ninja", "MS Build"),
        selected=("CMake",),
        checks=("BUILD-TOPLEVEL", "BUILD-BINDINGS"),
    ),
    BestPractice(
        id="documentation.function-reference",
        group="Documentation",
        name="Function reference",
        candidates=("Doxygen", "Sphinx (with Breathe)"),
        selected=("Doxygen",),
        checks=("DOC-APIREF-CONFIG",),
    ),
    BestPractice(
        id="documentation.big-picture",
        group="Documentation",
        name='"Big picture" documentation',
        candidates=("Markdown", "reStructuredText"),
        selected=("Markdown",),
        checks=(
            "DOC-README",
            "DOC-CHANGELOG",
            "DOC-CONTRIBUTING",
            "DOC-CODE-OF-CONDUCT",
            "DOC-TUTORIAL",
        ),
    ),
    BestPractice(
        id="testing.unit-test-framework",
        group="Testing",
        name="Unit test framework",
        candidates=("Catch2", "Google Test", "Boost Test Library"),
        selected=("Catch2",),
        checks=("TEST-DIR-PRESENT", "CI-TEST-JOB"),
    ),
    BestPractice(
        id="testing.coverage-report",
        group="Testing",
        name="Code coverage report",
        candidates=("gcov", "various commercial tools"),
        selected=("gcov",),
        checks=("CI-COVERAGE-JOB",),
    ),
    BestPractice(
        id="deployment.package-binaries",
        group="Deployment",
        name="Package binaries",
        candidates=("conda", "Conan", "Debian apt"),
        selected=("conda",),
        checks=("PKG-RECIPE-STUB",),
    ),
    BestPractice(
        id="deployment.online-documentation",
        group="Deployment",
        name="Online documentation",
        candidates=("GitLab Pages", "GitHub Pages", "readthedocs.io"),
        selected=("GitLab Pages", "GitHub Pages"),
        checks=("CI-DOCS-DEPLOY",),
    ),
)

_BY_ID = {practice.id: practice for practice in CATALOG}


def list_practices(group: str | None = None) -> list[BestPractice]:
    """Return the catalog in table order, optionally filtered by group.

    An unknown group name yields an empty list rather than an error.
    """
    if group is None:
        return list(CATALOG)
    return [practice for practice in CATALOG if practice.group == group]


def get_practice(practice_id: str) -> BestPractice:
    try:
        return _BY_ID[practice_id]
    except KeyError:
        raise PracticeNotFound(practice_id) from None


def checks_for(practice_id: str) -> tuple[str, ...]:
    """Check ids verifying a practice; empty for advisory-only practices."""
    return get_practice(practice_id).checks
