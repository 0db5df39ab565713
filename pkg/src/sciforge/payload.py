"""Loader for the embedded skeleton payload.

The payload is a complete, working sample project keyed to a reserved
rename token. It ships as package data and is the source tree that the
scaffolder instantiates.
"""

from __future__ import annotations

from importlib import resources

from .tree import FileTree, TreeError

PAYLOAD_TOKEN = "bertha"

PIPELINE_CONFIG_FILE = ".gitlab-ci.yml"
TRAVIS_CONFIG_FILE = ".travis.yml"

# Canonical payload layout; the auditor's check targets rely on it.
PAYLOAD_MANIFEST = (
    ".clang-format",
    ".gitlab-ci.yml",
    ".travis.yml",
    "CHANGELOG.md",
    "CMakeLists.txt",
    "CODE_OF_CONDUCT.md",
    "CONTRIBUTING.md",
    "Doxyfile",
    "LICENSE",
    "README.md",
    "TUTORIAL.md",
    "conda/recipe-stub.yaml",
    "include/bertha/device.hpp",
    "src/device.cpp",
    "swig/bertha.i",
    "test/test_device.cpp",
)


def _walk(node, prefix: str, out: dict[str, str]) -> None:
    for child in node.iterdir():
        rel = f"{prefix}{child.name}"
        if child.is_dir():
            _walk(child, rel + "/", out)
        else:
            out[rel] = child.read_text(encoding="utf-8").replace("\r\n", "\n")


def payload_tree() -> FileTree:
    """Load the embedded skeleton as a FileTree and verify its manifest."""
    entries: dict[str, str] = {}
    _walk(resources.files(__package__) / "payload", "", entries)
    found, expected = set(entries), set(PAYLOAD_MANIFEST)
    if found != expected:
        missing = sorted(expected - found)
        extra = sorted(found - expected)
        raise TreeError(
            f"embedded payload does not match its manifest "
            f"(missing: {missing}, unexpected: {extra})"
        )
    return FileTree(entries)
