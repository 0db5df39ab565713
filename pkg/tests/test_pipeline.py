import random
import subprocess

import pytest

from sciforge.pipeline import (
    Job,
    Pipeline,
    PipelineError,
    execute,
    parse_pipeline,
    plan,
    serialize_pipeline,
)

MINIMAL = """\
stages:
  - build

compile:
  stage: build
  script:
    - echo compiling
"""


def _err(text):
    with pytest.raises(PipelineError) as excinfo:
        parse_pipeline(text)
    return excinfo.value


class TestParser:
    def test_minimal_config(self):
        pipeline = parse_pipeline(MINIMAL)
        assert pipeline.stages == ("build",)
        assert pipeline.jobs == (
            Job(name="compile", stage="build", script=("echo compiling",)),
        )

    def test_declaration_order_preserved(self):
        text = (
            "stages:\n  - one\n  - two\n\n"
            "zeta:\n  stage: two\n  script:\n    - z\n\n"
            "alpha:\n  stage: one\n  script:\n    - a\n"
        )
        pipeline = parse_pipeline(text)
        assert pipeline.stages == ("one", "two")
        assert [job.name for job in pipeline.jobs] == ["zeta", "alpha"]

    def test_comments_and_blank_lines_ignored(self):
        text = "# header\n\nstages:\n  # stage list\n  - build\n\ncompile:\n  stage: build\n  script:\n    - echo ok\n"
        assert parse_pipeline(text).stages == ("build",)

    def test_artifacts_block(self):
        text = MINIMAL + "  artifacts:\n    paths:\n      - out/\n      - report.xml\n"
        job = parse_pipeline(text).jobs[0]
        assert job.artifacts == ("out/", "report.xml")

    def test_scalars_keep_inner_punctuation(self):
        text = "stages:\n  - build\n\nj:\n  stage: build\n  script:\n    - echo 'a: b' # not a comment\n"
        job = parse_pipeline(text).jobs[0]
        assert job.script == ("echo 'a: b' # not a comment",)

    def test_empty_config_is_an_empty_pipeline(self):
        assert parse_pipeline("") == Pipeline((), ())
        assert parse_pipeline("# only a comment\n") == Pipeline((), ())

    def test_undeclared_stage(self):
        text = "stages:\n  - build\n\nrelease:\n  stage: deploy\n  script:\n    - echo x\n"
        error = _err(text)
        assert error.code == "UNDECLARED_STAGE"
        assert error.line == 5

    def test_duplicate_job(self):
        text = (
            "stages:\n  - build\n\n"
            "unit-tests:\n  stage: build\n  script:\n    - a\n\n"
            "unit-tests:\n  stage: build\n  script:\n    - b\n"
        )
        error = _err(text)
        assert error.code == "DUPLICATE_JOB"

    def test_empty_script_block(self):
        error = _err("stages:\n  - build\n\nj:\n  stage: build\n  script:\n")
        assert error.code == "EMPTY_SCRIPT"

    def test_missing_script_field(self):
        error = _err("stages:\n  - build\n\nj:\n  stage: build\n")
        assert error.code == "EMPTY_SCRIPT"

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("stages: [a, b]\n", "block list"),
            ("stages:\n  - build\nstages:\n  - build\n", "twice"),
            ("stages:\n  - build\n  - build\n", "duplicate stage"),
            ("stages:\n  - build\n\nj:\n  stage: build\n  image: gcc\n  script:\n    - a\n", "unsupported"),
            ("stages:\n  - build\n\nj:\n  stage: build\n  script:\n    - a\n  artifacts:\n    expire: soon\n", "paths"),
            ("just some text\n", "expected"),
            ("  indented: oops\n", "indentation"),
            ("\tstages:\n", "tab"),
            ("stages:\n  - build\n\nj:\n  stage:\n  script:\n    - a\n", "inline value"),
            ("stages:\n  - bad stage name\n", "invalid stage name"),
            ("stages:\n  - build\n\nj:\n  stage: build\n  script:\n    -\n", "list item"),
            ("stages:\n  - build\n\n9bad:\n  stage: build\n  script:\n    - a\n", "invalid job name"),
            ("stages:\n  - build\n\nj:\n  stage: build\n  script:\n    - a\n      - b\n", "inconsistent"),
        ],
    )
    def test_syntax_errors(self, text, fragment):
        error = _err(text)
        assert error.code == "SYNTAX"
        assert fragment in str(error)
        assert error.line is not None

    def test_error_reports_line_number(self):
        error = _err("stages:\n  - build\n\nweird line\n")
        assert error.line == 4


class TestModelValidation:
    def test_duplicate_stage_rejected(self):
        with pytest.raises(PipelineError):
            Pipeline(("build", "build"), ())

    def test_job_requires_known_stage(self):
        job = Job("j", "deploy", ("x",))
        with pytest.raises(PipelineError) as excinfo:
            Pipeline(("build",), (job,))
        assert excinfo.value.code == "UNDECLARED_STAGE"

    def test_job_requires_script(self):
        with pytest.raises(PipelineError) as excinfo:
            Job("j", "build", ())
        assert excinfo.value.code == "EMPTY_SCRIPT"


class TestSerializer:
    def test_round_trip_on_payload(self, payload):
        pipeline = parse_pipeline(payload.get(".gitlab-ci.yml"))
        assert parse_pipeline(serialize_pipeline(pipeline)) == pipeline

    def test_round_trip_empty(self):
        empty = Pipeline((), ())
        assert parse_pipeline(serialize_pipeline(empty)) == empty


class TestPlan:
    def test_groups_follow_declaration_order(self):
        pipeline = Pipeline(
            ("a", "b", "c"),
            (Job("j2", "b", ("x",)), Job("j1", "a", ("x",)), Job("j3", "b", ("x",))),
        )
        assert plan(pipeline) == [("a", ["j1"]), ("b", ["j2", "j3"]), ("c", [])]

    def test_group_sizes_sum_to_job_count(self):
        rng = random.Random(99)
        for _ in range(50):
            pipeline = _random_pipeline(rng)
            groups = plan(pipeline)
            assert sum(len(names) for _, names in groups) == len(pipeline.jobs)


def _random_pipeline(rng):
    stages = rng.sample([f"stage_{i}" for i in range(8)], k=rng.randint(1, 5))
    commands = (
        "echo hello",
        "echo 'a: b'",
        "run --flag -- value",
        "true # trailing hash stays",
        "make -j2 all",
        "exit 0",
    )
    artifact_pool = ("out/", "build/*.log", "report.xml")
    jobs = tuple(
        Job(
            name=f"job-{i}-{rng.randrange(10_000)}",
            stage=rng.choice(stages),
            script=tuple(rng.choice(commands) for _ in range(rng.randint(1, 4))),
            artifacts=tuple(rng.sample(artifact_pool, k=rng.randint(0, 2))),
        )
        for i in range(rng.randint(0, 6))
    )
    return Pipeline(tuple(stages), jobs)


class TestExecute:
    def test_dry_run_echoes_commands_and_passes(self, payload):
        pipeline = parse_pipeline(payload.get(".gitlab-ci.yml"))
        result = execute(pipeline, mode="dry-run")
        assert result.overall == "passed"
        assert len(result.job_results) == 6
        for job, job_result in zip(pipeline.jobs, result.job_results):
            assert job_result.status == "passed"
            assert job_result.exit_code is None
            assert job_result.output == tuple(f"$ {line}" for line in job.script)

    def test_local_all_passing(self, tmp_path):
        pipeline = Pipeline(
            ("build",),
            (Job("ok", "build", ("true", "echo done")),),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        assert result.overall == "passed"
        assert result.job_results[0].exit_code == 0
        assert "done" in result.job_results[0].output

    def test_failing_line_skips_rest_of_job(self, tmp_path):
        pipeline = Pipeline(
            ("build",),
            (Job("bad", "build", ("false", "echo never")),),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        job = result.job_results[0]
        assert job.status == "failed"
        assert job.exit_code == 1
        assert "never" not in " ".join(job.output)

    def test_fail_fast_skips_later_stages_but_not_same_stage(self, tmp_path):
        pipeline = Pipeline(
            ("build", "tests"),
            (
                Job("broken", "build", ("exit 1",)),
                Job("sibling", "build", ("echo sibling-ran",)),
                Job("later", "tests", ("echo later",)),
            ),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        by_name = {r.name: r for r in result.job_results}
        assert by_name["broken"].status == "failed"
        assert by_name["sibling"].status == "passed"
        assert by_name["later"].status == "skipped"
        assert by_name["later"].exit_code is None
        assert result.overall == "failed"

    def test_result_order_follows_plan_not_declaration(self, tmp_path):
        pipeline = Pipeline(
            ("a", "b"),
            (Job("late", "b", ("true",)), Job("early", "a", ("true",))),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        assert [r.name for r in result.job_results] == ["early", "late"]

    def test_status_partition(self, tmp_path):
        pipeline = Pipeline(
            ("a", "b", "c"),
            (
                Job("one", "a", ("true",)),
                Job("two", "b", ("exit 3",)),
                Job("three", "c", ("true",)),
            ),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        statuses = [r.status for r in result.job_results]
        assert sorted(statuses) == ["failed", "passed", "skipped"]
        assert result.job_results[1].exit_code == 3

    def test_artifacts_are_archived(self, tmp_path):
        pipeline = Pipeline(
            ("build",),
            (Job("maker", "build", ("mkdir -p out", "echo data > out/a.txt"), ("out/",)),),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        assert result.overall == "passed"
        archived = tmp_path / ".forge-artifacts" / "maker" / "out" / "a.txt"
        assert archived.read_text() == "data\n"

    def test_missing_artifacts_warn_but_pass(self, tmp_path):
        pipeline = Pipeline(
            ("build",),
            (Job("quiet", "build", ("true",), ("nonexistent/",)),),
        )
        result = execute(pipeline, mode="local", workdir=tmp_path)
        job = result.job_results[0]
        assert job.status == "passed"
        assert any("no artifacts matched" in line for line in job.output)

    def test_spawn_failure_fails_the_job_not_the_tool(self, tmp_path, monkeypatch):
        def boom(*args, **kwargs):
            raise OSError("spawn refused")

        monkeypatch.setattr(subprocess, "run", boom)
        pipeline = Pipeline(("build",), (Job("j", "build", ("true",)),))
        result = execute(pipeline, mode="local", workdir=tmp_path)
        assert result.job_results[0].status == "failed"
        assert result.job_results[0].exit_code == 127

    def test_local_mode_requires_existing_workdir(self, tmp_path):
        pipeline = Pipeline(("build",), (Job("j", "build", ("true",)),))
        with pytest.raises(FileNotFoundError):
            execute(pipeline, mode="local", workdir=tmp_path / "missing")

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            execute(Pipeline((), ()), mode="remote")

    def test_result_json_shape(self, tmp_path):
        pipeline = Pipeline(("build",), (Job("j", "build", ("true",)),))
        document = execute(pipeline, mode="local", workdir=tmp_path).to_dict()
        assert document == {
            "overall": "passed",
            "jobs": [{"name": "j", "stage": "build", "status": "passed", "exit_code": 0}],
        }
