"""CI pipeline model: parser, planner, and local fail-fast executor.

The accepted configuration grammar is a strict, hand-parsed subset of the
common CI-config format: a top-level ``stages:`` block list plus job
mappings carrying ``stage:``, ``script:`` and an optional
``artifacts:``/``paths:`` block list. Anchors, includes, rules, images,
and variables are out of scope on purpose; errors carry the offending
line number.
"""

from __future__ import annotations

import glob
import re
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")
_KEY_RE = re.compile(r"([^\s:][^:]*):(?:\s+(.*))?\Z")

ARTIFACTS_DIR = ".forge-artifacts"


class PipelineError(Exception):
    """Pipeline configuration rejected; carries an error code and line."""

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        prefix = f"line {self.line}: " if self.line is not None else ""
        return f"{prefix}{base} [{self.code}]"


def _check_scalar(value: str, what: str) -> None:
    if not value or value != value.strip() or "\n" in value:
        raise PipelineError("SYNTAX", f"unrepresentable {what}: {value!r}")


@dataclass(frozen=True)
class Job:
    name: str
    stage: str
    script: tuple[str, ...]
    artifacts: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "script", tuple(self.script))
        object.__setattr__(self, "artifacts", tuple(self.artifacts))
        if not NAME_RE.fullmatch(self.name):
            raise PipelineError("SYNTAX", f"invalid job name {self.name!r}")
        if not NAME_RE.fullmatch(self.stage):
            raise PipelineError("SYNTAX", f"invalid stage name {self.stage!r}")
        if not self.script:
            raise PipelineError("EMPTY_SCRIPT", f"job {self.name!r} has no script lines")
        for command in self.script:
            _check_scalar(command, "script line")
        for pattern in self.artifacts:
            _check_scalar(pattern, "artifact path")


@dataclass(frozen=True)
class Pipeline:
    stages: tuple[str, ...]
    jobs: tuple[Job, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "jobs", tuple(self.jobs))
        seen_stages: set[str] = set()
        for stage in self.stages:
            if not NAME_RE.fullmatch(stage):
                raise PipelineError("SYNTAX", f"invalid stage name {stage!r}")
            if stage in seen_stages:
                raise PipelineError("SYNTAX", f"duplicate stage {stage!r}")
            seen_stages.add(stage)
        seen_jobs: set[str] = set()
        for job in self.jobs:
            if job.name in seen_jobs:
                raise PipelineError("DUPLICATE_JOB", f"duplicate job {job.name!r}")
            seen_jobs.add(job.name)
            if job.stage not in seen_stages:
                raise PipelineError(
                    "UNDECLARED_STAGE",
                    f"job {job.name!r} references undeclared stage {job.stage!r}",
                )


# ---------------------------------------------------------------------------
# parsing


def _is_noise(raw: str) -> bool:
    stripped = raw.strip()
    return not stripped or stripped.startswith("#")


def _indent_of(raw: str, lineno: int) -> int:
    stripped = raw.lstrip(" ")
    if stripped.startswith("\t") or "\t" in raw[: len(raw) - len(stripped)]:
        raise PipelineError("SYNTAX", "tab characters in indentation", lineno)
    return len(raw) - len(stripped)


def _split_key(raw: str) -> tuple[str, str] | None:
    """Split "key:" or "key: value" lines; returns None if neither."""
    match = _KEY_RE.fullmatch(raw.strip())
    if not match:
        return None
    return match.group(1), match.group(2) or ""


def _parse_block_list(
    lines: list[str], start: int, parent_indent: int, what: str
) -> tuple[list[tuple[str, int]], int]:
    items: list[tuple[str, int]] = []
    item_indent: int | None = None
    i = start
    while i < len(lines):
        raw = lines[i]
        if _is_noise(raw):
            i += 1
            continue
        indent = _indent_of(raw, i + 1)
        if indent <= parent_indent:
            break
        stripped = raw.strip()
        if not stripped.startswith("- "):
            raise PipelineError("SYNTAX", f"expected a '- ' list item, got {stripped!r}", i + 1)
        if item_indent is None:
            item_indent = indent
        elif indent != item_indent:
            raise PipelineError("SYNTAX", "inconsistent list indentation", i + 1)
        scalar = stripped[2:].strip()
        if not scalar:
            raise PipelineError("SYNTAX", f"empty {what}", i + 1)
        items.append((scalar, i + 1))
        i += 1
    return items, i


def _parse_artifacts(
    lines: list[str], start: int, field_indent: int, artifacts_line: int
) -> tuple[list[tuple[str, int]], int]:
    i = start
    while i < len(lines) and _is_noise(lines[i]):
        i += 1
    if i >= len(lines) or _indent_of(lines[i], i + 1) <= field_indent:
        raise PipelineError("SYNTAX", "artifacts requires a paths: block", artifacts_line)
    split = _split_key(lines[i])
    if split is None or split[0] != "paths" or split[1]:
        raise PipelineError("SYNTAX", "artifacts supports only a paths: block list", i + 1)
    paths_indent = _indent_of(lines[i], i + 1)
    items, i = _parse_block_list(lines, i + 1, paths_indent, "artifact path")
    if not items:
        raise PipelineError("SYNTAX", "paths requires at least one entry", artifacts_line)
    return items, i


def _parse_job(lines: list[str], start: int, name: str) -> tuple[dict, int]:
    job_line = start + 1
    if not NAME_RE.fullmatch(name):
        raise PipelineError("SYNTAX", f"invalid job name {name!r}", job_line)
    stage: tuple[str, int] | None = None
    script: list[tuple[str, int]] | None = None
    artifacts: list[tuple[str, int]] | None = None
    field_indent: int | None = None
    i = start + 1
    while i < len(lines):
        raw = lines[i]
        if _is_noise(raw):
            i += 1
            continue
        indent = _indent_of(raw, i + 1)
        if indent == 0:
            break
        if field_indent is None:
            field_indent = indent
        elif indent != field_indent:
            raise PipelineError("SYNTAX", "inconsistent job field indentation", i + 1)
        split = _split_key(raw)
        if split is None:
            raise PipelineError("SYNTAX", f"expected a job field, got {raw.strip()!r}", i + 1)
        key, value = split
        if key == "stage":
            if stage is not None:
                raise PipelineError("SYNTAX", f"job {name!r} declares stage twice", i + 1)
            if not value:
                raise PipelineError("SYNTAX", "stage requires an inline value", i + 1)
            stage = (value, i + 1)
            i += 1
        elif key == "script":
            if script is not None:
                raise PipelineError("SYNTAX", f"job {name!r} declares script twice", i + 1)
            if value:
                raise PipelineError("SYNTAX", "script must be a block list", i + 1)
            script, i = _parse_block_list(lines, i + 1, field_indent, "script line")
        elif key == "artifacts":
            if artifacts is not None:
                raise PipelineError("SYNTAX", f"job {name!r} declares artifacts twice", i + 1)
            if value:
                raise PipelineError("SYNTAX", "artifacts must be a block", i + 1)
            artifacts, i = _parse_artifacts(lines, i + 1, field_indent, i + 1)
        else:
            raise PipelineError("SYNTAX", f"unsupported job field {key!r}", i + 1)
    if stage is None:
        raise PipelineError("SYNTAX", f"job {name!r} is missing its stage", job_line)
    if not script:
        raise PipelineError("EMPTY_SCRIPT", f"job {name!r} has no script lines", job_line)
    record = {
        "name": name,
        "line": job_line,
        "stage": stage,
        "script": script,
        "artifacts": artifacts or [],
    }
    return record, i


def parse_pipeline(config_text: str) -> Pipeline:
    """Parse CI-config text into a Pipeline, preserving declaration order."""
    lines = config_text.split("\n")
    stages: list[tuple[str, int]] | None = None
    records: list[dict] = []
    i = 0
    while i < len(lines):
        raw = lines[i]
        if _is_noise(raw):
            i += 1
            continue
        if _indent_of(raw, i + 1) != 0:
            raise PipelineError("SYNTAX", "unexpected indentation at top level", i + 1)
        split = _split_key(raw)
        if split is None:
            raise PipelineError(
                "SYNTAX", f"expected 'stages:' or a job mapping, got {raw.strip()!r}", i + 1
            )
        key, value = split
        if key == "stages":
            if stages is not None:
                raise PipelineError("SYNTAX", "stages declared twice", i + 1)
            if value:
                raise PipelineError("SYNTAX", "stages must be a block list", i + 1)
            stages, i = _parse_block_list(lines, i + 1, 0, "stage name")
        else:
            record, i = _parse_job(lines, i, key)
            records.append(record)

    stage_names: list[str] = []
    for stage, lineno in stages or []:
        if not NAME_RE.fullmatch(stage):
            raise PipelineError("SYNTAX", f"invalid stage name {stage!r}", lineno)
        if stage in stage_names:
            raise PipelineError("SYNTAX", f"duplicate stage {stage!r}", lineno)
        stage_names.append(stage)

    jobs: list[Job] = []
    seen_jobs: set[str] = set()
    for record in records:
        name = record["name"]
        if name in seen_jobs:
            raise PipelineError("DUPLICATE_JOB", f"duplicate job {name!r}", record["line"])
        seen_jobs.add(name)
        stage, stage_line = record["stage"]
        if not NAME_RE.fullmatch(stage):
            raise PipelineError("SYNTAX", f"invalid stage name {stage!r}", stage_line)
        if stage not in stage_names:
            raise PipelineError(
                "UNDECLARED_STAGE",
                f"job {name!r} references undeclared stage {stage!r}",
                stage_line,
            )
        jobs.append(
            Job(
                name=name,
                stage=stage,
                script=tuple(text for text, _ in record["script"]),
                artifacts=tuple(text for text, _ in record["artifacts"]),
            )
        )
    return Pipeline(stages=tuple(stage_names), jobs=tuple(jobs))


def serialize_pipeline(pipeline: Pipeline) -> str:
    """Canonical text form; parse(serialize(p)) reproduces p exactly."""
    out = ["stages:"]
    out.extend(f"  - {stage}" for stage in pipeline.stages)
    for job in pipeline.jobs:
        out.append("")
        out.append(f"{job.name}:")
        out.append(f"  stage: {job.stage}")
        out.append("  script:")
        out.extend(f"    - {command}" for command in job.script)
        if job.artifacts:
            out.append("  artifacts:")
            out.append("    paths:")
            out.extend(f"      - {pattern}" for pattern in job.artifacts)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# planning and execution


def plan(pipeline: Pipeline) -> list[tuple[str, list[str]]]:
    """Jobs grouped per declared stage, both in declaration order."""
    return [
        (stage, [job.name for job in pipeline.jobs if job.stage == stage])
        for stage in pipeline.stages
    ]


@dataclass(frozen=True)
class JobResult:
    name: str
    stage: str
    status: str  # passed | failed | skipped
    exit_code: int | None  # None for skipped jobs and dry runs
    output: tuple[str, ...] = ()


@dataclass(frozen=True)
class PipelineResult:
    job_results: tuple[JobResult, ...]

    @property
    def overall(self) -> str:
        return "failed" if any(r.status == "failed" for r in self.job_results) else "passed"

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "jobs": [
                {
                    "name": r.name,
                    "stage": r.stage,
                    "status": r.status,
                    "exit_code": "-" if r.exit_code is None else r.exit_code,
                }
                for r in self.job_results
            ],
        }


def _collect_artifacts(job: Job, workdir: Path, output: list[str]) -> None:
    dest_root = workdir / ARTIFACTS_DIR / job.name
    for pattern in job.artifacts:
        matches = sorted(glob.glob(str(workdir / pattern), recursive=True))
        kept = []
        for match in matches:
            try:
                rel = Path(match).resolve().relative_to(workdir.resolve())
            except ValueError:
                continue
            if ARTIFACTS_DIR in rel.parts:
                continue
            kept.append((match, rel))
        if not kept:
            output.append(f"warning: no artifacts matched {pattern!r}")
            continue
        for match, rel in kept:
            target = dest_root / rel
            if Path(match).is_dir():
                shutil.copytree(match, target, dirs_exist_ok=True)
            else:
                target.parent.mkdir(parents=True, exist_ok=True)
                shutil.copy2(match, target)
        output.append(f"archived {len(kept)} path(s) for {pattern!r}")


def _run_job(job: Job, workdir: Path) -> JobResult:
    output: list[str] = []
    for command in job.script:
        output.append(f"$ {command}")
        try:
            proc = subprocess.run(
                command,
                shell=True,
                cwd=workdir,
                stdout=subprocess.PIPE,
                stderr=subprocess.STDOUT,
                text=True,
            )
        except OSError as exc:
            output.append(f"failed to spawn command: {exc}")
            return JobResult(job.name, job.stage, "failed", 127, tuple(output))
        if proc.stdout:
            output.extend(proc.stdout.splitlines())
        if proc.returncode != 0:
            output.append(f"command exited with code {proc.returncode}")
            return JobResult(job.name, job.stage, "failed", proc.returncode, tuple(output))
    _collect_artifacts(job, workdir, output)
    return JobResult(job.name, job.stage, "passed", 0, tuple(output))


def execute(pipeline: Pipeline, mode: str = "dry-run", workdir: str | Path | None = None) -> PipelineResult:
    """Run the pipeline stage by stage with fail-fast semantics.

    Stages run strictly in declared order and jobs within a stage in
    declared order. A job fails as soon as one script line exits non-zero;
    once any job of a stage has failed, every job of every later stage is
    marked skipped. Dry runs execute nothing and record each command line.
    """
    if mode not in ("dry-run", "local"):
        raise ValueError(f"unknown execution mode {mode!r}")
    if mode == "local":
        if workdir is None:
            raise ValueError("local execution requires a workdir")
        workdir = Path(workdir)
        if not workdir.is_dir():
            raise FileNotFoundError(f"workdir does not exist: {workdir}")

    results: list[JobResult] = []
    earlier_stage_failed = False
    for stage, _names in plan(pipeline):
        stage_jobs = [job for job in pipeline.jobs if job.stage == stage]
        if earlier_stage_failed:
            results.extend(
                JobResult(job.name, job.stage, "skipped", None) for job in stage_jobs
            )
            continue
        stage_failed = False
        for job in stage_jobs:
            if mode == "dry-run":
                echoed = tuple(f"$ {command}" for command in job.script)
                results.append(JobResult(job.name, job.stage, "passed", None, echoed))
                continue
            result = _run_job(job, workdir)
            stage_failed = stage_failed or result.status == "failed"
            results.append(result)
        earlier_stage_failed = stage_failed
    return PipelineResult(tuple(results))
