"""Command-line entry point with stable exit codes and dual output.

Exit codes: 0 means success or a compliant result, 1 means the tool ran and
the answer is negative (audit findings, failed pipeline, impossible rename,
unparseable pipeline config), 2 means the invocation itself was unusable
(bad flags, bad config values, missing inputs). With ``--format json``
exactly one JSON document goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from .audit import audit
from .catalog import list_practices
from .pipeline import PipelineError, execute, parse_pipeline, plan
from .rename import PathCollision, RenameError, RenameSpec, rename_tree
from .scaffold import (
    CHECKLIST_STAGES,
    ProjectConfig,
    ScaffoldError,
    VCS_NEXT_STEPS,
    generate,
    stage_checklist,
    validate_config,
)
from .tree import FileTree, TreeError


def _emit_json(document, out) -> None:
    print(json.dumps(document, indent=2), file=out)


def _print_audit_report(report, out) -> None:
    for finding in report.findings:
        print(f"FAIL      {finding.check_id:<20} {finding.message}", file=out)
    for advisory in report.advisories:
        print(f"advisory  {advisory.check_id:<20} {advisory.message}", file=out)
    passed = report.checks_run - report.checks_failed
    print(f"score {report.score:.3f} ({passed} of {report.checks_run} checks passed)", file=out)


def cmd_new(args, out, err) -> int:
    cfg = ProjectConfig(
        name=args.name,
        description=args.description,
        license_id=args.license_id,
        ci_provider=args.ci_provider,
    )
    issues = validate_config(cfg)
    errors = [issue for issue in issues if issue.severity == "error"]
    for issue in issues:
        stream = err
        label = "error" if issue.severity == "error" else "warning"
        print(f"{label} {issue.code}: {issue.message}", file=stream)
    if errors:
        return 2
    try:
        report = generate(cfg, args.dest)
    except ScaffoldError as exc:
        print(f"error {exc.code}: {exc}", file=err)
        return 2
    if args.format == "json":
        _emit_json(report.to_dict(), out)
    else:
        print(
            f"generated {report.files_written} files in {report.tree_root} "
            f"(audit score {report.audit_score:.2f})",
            file=out,
        )
        print("\nsuggested next steps:", file=out)
        for command in VCS_NEXT_STEPS:
            print(f"  {command}", file=out)
        print("\nsetup checklist:", file=out)
        for index, item in enumerate(report.checklist_next, start=1):
            print(f"  {index}. {item.text}", file=out)
    return 0


def cmd_audit(args, out, err) -> int:
    try:
        tree = FileTree.from_dir(args.path, on_binary="skip")
    except TreeError as exc:
        print(f"error: {exc}", file=err)
        return 2
    report = audit(tree)
    if args.format == "json":
        _emit_json(report.to_dict(), out)
    else:
        _print_audit_report(report, out)
    return 0 if report.checks_failed == 0 else 1


def cmd_rename(args, out, err) -> int:
    try:
        spec = RenameSpec(args.from_token, args.to_token)
    except RenameError as exc:
        print(f"error: {exc}", file=err)
        return 2
    root = Path(args.path)
    if not root.is_dir():
        print(f"error: not a directory: {root}", file=err)
        return 2
    try:
        tree = FileTree.from_dir(root, on_binary="error")
        renamed = rename_tree(tree, spec)
    except (TreeError, PathCollision) as exc:
        print(f"error: {exc}", file=err)
        return 1
    stale = [path for path in tree.paths() if path not in renamed]
    renamed.write_to(root)
    for rel in stale:
        (root / rel).unlink(missing_ok=True)
    _prune_empty_dirs(root)
    moved = len(stale)
    if args.format == "json":
        _emit_json(
            {
                "from": spec.old_token,
                "to": spec.new_token,
                "entries": len(renamed),
                "paths_renamed": moved,
            },
            out,
        )
    else:
        print(f"renamed {spec.old_token!r} to {spec.new_token!r} in {len(renamed)} files "
              f"({moved} paths moved)", file=out)
    return 0


def _prune_empty_dirs(root: Path) -> None:
    for directory in sorted(
        (p for p in root.rglob("*") if p.is_dir()), key=lambda p: len(p.parts), reverse=True
    ):
        try:
            directory.rmdir()
        except OSError:
            pass  # not empty


def _load_pipeline(config_path: str, err):
    path = Path(config_path)
    if not path.is_file():
        print(f"error: no such file: {path}", file=err)
        return None, 2
    try:
        return parse_pipeline(path.read_text(encoding="utf-8")), 0
    except PipelineError as exc:
        print(f"error: {exc}", file=err)
        return None, 1


def cmd_pipeline_plan(args, out, err) -> int:
    pipeline, status = _load_pipeline(args.config, err)
    if pipeline is None:
        return status
    groups = plan(pipeline)
    if args.format == "json":
        _emit_json({"stages": [{"stage": s, "jobs": names} for s, names in groups]}, out)
    else:
        for stage, names in groups:
            print(f"{stage}: {', '.join(names) if names else '(no jobs)'}", file=out)
    return 0


def cmd_pipeline_run(args, out, err) -> int:
    pipeline, status = _load_pipeline(args.config, err)
    if pipeline is None:
        return status
    mode = "dry-run" if args.dry_run else "local"
    workdir = args.workdir if args.workdir else str(Path(args.config).parent)
    try:
        result = execute(pipeline, mode=mode, workdir=workdir)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.format == "json":
        _emit_json(result.to_dict(), out)
    else:
        for job in result.job_results:
            code = "-" if job.exit_code is None else job.exit_code
            print(f"{job.status:>7}  {job.name} (stage {job.stage}, exit {code})", file=out)
            for line in job.output:
                print(f"    {line}", file=out)
        print(f"pipeline {result.overall}", file=out)
    return 0 if result.overall == "passed" else 1


def cmd_practices_list(args, out, err) -> int:
    practices = list_practices(args.group)
    if args.format == "json":
        _emit_json([practice.to_dict() for practice in practices], out)
    else:
        current_group = None
        for practice in practices:
            if practice.group != current_group:
                current_group = practice.group
                print(f"{current_group}:", file=out)
            selected = ", ".join(practice.selected) if practice.selected else "(no selection)"
            print(f"  {practice.name} [{practice.id}]", file=out)
            print(f"      candidates: {', '.join(practice.candidates)}", file=out)
            print(f"      selected:   {selected}", file=out)
    return 0


def cmd_checklist(args, out, err) -> int:
    items = stage_checklist(args.stage)
    if args.format == "json":
        _emit_json({"stage": args.stage, "items": [item.to_dict() for item in items]}, out)
    else:
        for index, item in enumerate(items, start=1):
            print(f"{index}. {item.text}", file=out)
    return 0


def _add_format_flag(parser) -> None:
    parser.add_argument("--format", choices=("human", "json"), default="human",
                        help="output format (default: human)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sciforge",
        description="Scaffold scientific software projects, audit repositories "
                    "against engineering best practices, and run CI pipelines locally.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_new = sub.add_parser("new", help="instantiate the project skeleton")
    p_new.add_argument("--name", required=True, help="lowercase project name")
    p_new.add_argument("--description", default="", help="one-line project description")
    p_new.add_argument("--license", dest="license_id", default="MIT",
                       help="license id (default: MIT)")
    p_new.add_argument("--ci", dest="ci_provider", default="both",
                       help="CI provider: gitlab, travis, or both (default: both)")
    p_new.add_argument("--dest", required=True, help="destination directory")
    _add_format_flag(p_new)
    p_new.set_defaults(func=cmd_new)

    p_audit = sub.add_parser("audit", help="audit a repository tree")
    p_audit.add_argument("path", help="directory to audit")
    _add_format_flag(p_audit)
    p_audit.set_defaults(func=cmd_audit)

    p_rename = sub.add_parser("rename", help="rename a project token in a tree")
    p_rename.add_argument("path", help="directory to rename in place")
    p_rename.add_argument("--from", dest="from_token", required=True, help="current token")
    p_rename.add_argument("--to", dest="to_token", required=True, help="replacement token")
    _add_format_flag(p_rename)
    p_rename.set_defaults(func=cmd_rename)

    p_pipeline = sub.add_parser("pipeline", help="work with CI pipeline configs")
    pipeline_sub = p_pipeline.add_subparsers(dest="pipeline_command", metavar="action")
    p_plan = pipeline_sub.add_parser("plan", help="show the stage/job execution plan")
    p_plan.add_argument("config", help="pipeline configuration file")
    _add_format_flag(p_plan)
    p_plan.set_defaults(func=cmd_pipeline_plan)
    p_run = pipeline_sub.add_parser("run", help="execute the pipeline locally")
    p_run.add_argument("config", help="pipeline configuration file")
    p_run.add_argument("--workdir", default=None,
                       help="working directory (default: the config file's directory)")
    p_run.add_argument("--dry-run", action="store_true",
                       help="echo commands without executing anything")
    _add_format_flag(p_run)
    p_run.set_defaults(func=cmd_pipeline_run)

    p_practices = sub.add_parser("practices", help="query the best-practice catalog")
    practices_sub = p_practices.add_subparsers(dest="practices_command", metavar="action")
    p_list = practices_sub.add_parser("list", help="list cataloged practices")
    p_list.add_argument("--group", default=None, help="filter by group name")
    _add_format_flag(p_list)
    p_list.set_defaults(func=cmd_practices_list)

    p_checklist = sub.add_parser("checklist", help="print a lifecycle-stage checklist")
    p_checklist.add_argument("stage", choices=CHECKLIST_STAGES)
    _add_format_flag(p_checklist)
    p_checklist.set_defaults(func=cmd_checklist)

    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    """Dispatch one invocation; never raises on user input."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code) if exc.code else 0
        func = getattr(args, "func", None)
        if func is None:
            parser.print_usage(err)
            return 2
        try:
            return func(args, out, err)
        except (ScaffoldError, PipelineError, RenameError, TreeError, ValueError) as exc:
            print(f"error: {exc}", file=err)
            return 2
        except OSError as exc:
            print(f"error: {exc}", file=err)
            return 2
        except Exception as exc:  # defensive: exit-code contract over stack traces
            print(f"internal error: {exc!r}", file=err)
            return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
