"""Skeleton instantiation: config validation, tree generation, checklists."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .audit import audit
from .payload import (
    PAYLOAD_TOKEN,
    PIPELINE_CONFIG_FILE,
    TRAVIS_CONFIG_FILE,
    payload_tree,
)
from .rename import RenameSpec, rename_tree
from .tree import FileTree

NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
NAME_MIN, NAME_MAX = 2, 64
LICENSE_IDS = ("MIT", "BSD-3-Clause", "Apache-2.0", "GPL-3.0")
CI_PROVIDERS = ("gitlab", "travis", "both")

NAME_ADVISORY = (
    "name not checked against public registries: before publishing, verify the "
    "project name is not already taken on package indexes and hosting platforms"
)

# The tool does not talk to any VCS binary; it prints the commands instead.
VCS_NEXT_STEPS = (
    "git init",
    "git add .",
    'git commit -m "Start from project skeleton"',
)


class ScaffoldError(Exception):
    """Generation rejected or aborted; carries a stable error code."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


@dataclass(frozen=True)
class ConfigIssue:
    code: str
    severity: str  # "error" | "warning"
    message: str


@dataclass(frozen=True)
class ProjectConfig:
    name: str
    description: str = ""
    license_id: str = "MIT"
    ci_provider: str = "both"


def validate_config(cfg: ProjectConfig) -> list[ConfigIssue]:
    """Collect every violation at once rather than stopping at the first.

    A valid config yields only the registry-collision warning; name
    collisions with public registries are out of scope for this tool.
    """
    issues: list[ConfigIssue] = []
    name = cfg.name or ""
    if not NAME_RE.fullmatch(name) or not NAME_MIN <= len(name) <= NAME_MAX:
        issues.append(ConfigIssue(
            "INVALID_NAME", "error",
            f"project name {name!r} must match [a-z][a-z0-9_]* "
            f"and be {NAME_MIN}-{NAME_MAX} characters long",
        ))
    elif name == PAYLOAD_TOKEN:
        issues.append(ConfigIssue(
            "RESERVED_NAME", "error",
            f"{PAYLOAD_TOKEN!r} is reserved as the skeleton's rename token",
        ))
    if cfg.license_id not in LICENSE_IDS:
        issues.append(ConfigIssue(
            "UNKNOWN_LICENSE", "error",
            f"unknown license {cfg.license_id!r}, expected one of {', '.join(LICENSE_IDS)}",
        ))
    if cfg.ci_provider not in CI_PROVIDERS:
        issues.append(ConfigIssue(
            "UNKNOWN_CI_PROVIDER", "error",
            f"unknown CI provider {cfg.ci_provider!r}, expected one of {', '.join(CI_PROVIDERS)}",
        ))
    if not any(issue.severity == "error" for issue in issues):
        issues.append(ConfigIssue("NAME_COLLISION_UNCHECKED", "warning", NAME_ADVISORY))
    return issues


def license_text(license_id: str, holder: str) -> str:
    """Full license text with the copyright holder filled in where the
    license template carries one."""
    if license_id not in LICENSE_IDS:
        raise ScaffoldError("UNKNOWN_LICENSE", f"unknown license {license_id!r}")
    raw = (resources.files(__package__) / "licenses" / f"{license_id}.txt").read_text(
        encoding="utf-8"
    )
    return raw.replace("<copyright holder>", holder)


def build_tree(cfg: ProjectConfig) -> FileTree:
    """Render the payload for a validated config, entirely in memory."""
    errors = [issue for issue in validate_config(cfg) if issue.severity == "error"]
    if errors:
        raise ScaffoldError(
            "INVALID_CONFIG",
            "; ".join(f"{issue.code}: {issue.message}" for issue in errors),
        )
    entries = dict(payload_tree().items())
    if cfg.ci_provider == "gitlab":
        del entries[TRAVIS_CONFIG_FILE]
    elif cfg.ci_provider == "travis":
        del entries[PIPELINE_CONFIG_FILE]
    renamed = rename_tree(FileTree(entries), RenameSpec(PAYLOAD_TOKEN, cfg.name))
    entries = dict(renamed.items())
    description = cfg.description.strip()
    if description:
        # line 3 of the README is the subtitle slot, the single injection point
        lines = entries["README.md"].split("\n")
        lines[2] = description
        entries["README.md"] = "\n".join(lines)
    entries["LICENSE"] = license_text(cfg.license_id, f"the {cfg.name} developers")
    return FileTree(entries)


@dataclass(frozen=True)
class ChecklistItem:
    id: str
    text: str

    def to_dict(self) -> dict:
        return {"id": self.id, "text": self.text}


_CHECKLISTS = {
    "setup": (
        "Choose a short, meaningful project name and verify it is not already "
        "taken where you plan to publish.",
        "Decide where to host the repository (internally or on a public platform).",
        "Agree on the project license.",
        "Agree on the version-control workflow (branching, review, merging).",
        "Agree on the coding style, formatting rules included.",
        "Write the workflow and style decisions down in the repository docs.",
    ),
    "implementation": (
        "Write the documentation for each unit first and treat it as the contract.",
        "Implement the functionality against that contract.",
        "Write unit tests at the same time as the implementation, not afterwards.",
        "Extend the build configuration whenever dependencies or modules are added.",
    ),
    "publication": (
        "Distribute and announce the software as soon as it has its first useful "
        "functionality.",
        "Create the binary packaging recipe, starting from the emitted recipe stub.",
    ),
}

CHECKLIST_STAGES = tuple(_CHECKLISTS)


def stage_checklist(stage: str) -> tuple[ChecklistItem, ...]:
    """Actionable items for one lifecycle stage, in recommended order."""
    if stage not in _CHECKLISTS:
        raise ValueError(
            f"unknown stage {stage!r}, expected one of {', '.join(_CHECKLISTS)}"
        )
    return tuple(
        ChecklistItem(f"{stage}-{index}", text)
        for index, text in enumerate(_CHECKLISTS[stage], start=1)
    )


@dataclass(frozen=True)
class GenerationReport:
    files_written: int
    tree_root: str
    audit_score: float
    checklist_next: tuple[ChecklistItem, ...]

    def to_dict(self) -> dict:
        return {
            "files_written": self.files_written,
            "tree_root": self.tree_root,
            "audit_score": self.audit_score,
            "checklist_next": [item.to_dict() for item in self.checklist_next],
            "vcs_commands": list(VCS_NEXT_STEPS),
        }


def generate(cfg: ProjectConfig, dest: str | Path) -> GenerationReport:
    """Instantiate the skeleton into an empty (or new) directory.

    The rendered tree is audited before anything is written and re-audited
    from disk afterwards; any failed check aborts, so a silently broken
    instance is never handed to the user.
    """
    tree = build_tree(cfg)
    dest = Path(dest)
    if dest.exists():
        if not dest.is_dir():
            raise ScaffoldError("DEST_NOT_EMPTY", f"destination {dest} is not a directory")
        if any(dest.iterdir()):
            raise ScaffoldError("DEST_NOT_EMPTY", f"destination {dest} is not empty")
    pre = audit(tree)
    if pre.checks_failed:
        failed = ", ".join(finding.check_id for finding in pre.findings)
        raise ScaffoldError(
            "PAYLOAD_CORRUPT", f"embedded payload failed its own audit ({failed})"
        )
    dest.mkdir(parents=True, exist_ok=True)
    files_written = tree.write_to(dest)
    post = audit(FileTree.from_dir(dest))
    if post.checks_failed:
        failed = ", ".join(finding.check_id for finding in post.findings)
        raise ScaffoldError(
            "PAYLOAD_CORRUPT", f"generated tree failed its re-audit in {dest} ({failed})"
        )
    return GenerationReport(
        files_written=files_written,
        tree_root=str(dest),
        audit_score=post.score,
        checklist_next=stage_checklist("setup"),
    )
