import io

import pytest

from sciforge.cli import run_command
from sciforge.payload import payload_tree
from sciforge.scaffold import ProjectConfig, build_tree


@pytest.fixture(scope="session")
def payload():
    return payload_tree()


@pytest.fixture(scope="session")
def alpha_tree():
    """Rendered skeleton instance for the name "alpha", both CI configs."""
    return build_tree(ProjectConfig(name="alpha"))


@pytest.fixture
def run_cli():
    def run(argv):
        out, err = io.StringIO(), io.StringIO()
        code = run_command(argv, stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    return run
