"""Rename engine: three-case token substitution over file contents and paths."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .tree import FileTree

TOKEN_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class RenameError(Exception):
    """A rename specification or its application is invalid."""


class PathCollision(RenameError):
    """Two distinct paths map to the same renamed path."""


def _case_variants(token: str) -> tuple[str, str, str]:
    return token, token[0].upper() + token[1:], token.upper()


@dataclass(frozen=True)
class RenameSpec:
    """Replace ``old_token`` with ``new_token`` in three case variants.

    Both tokens are lowercase identifiers. Occurrences are replaced all-lower
    ("name"), capitalized ("Name"), and all-upper ("NAME"); any other case
    mixture is left untouched on purpose, so behavior stays explainable.
    """

    old_token: str
    new_token: str

    def __post_init__(self) -> None:
        for token in (self.old_token, self.new_token):
            if not isinstance(token, str) or not TOKEN_RE.fullmatch(token):
                raise RenameError(f"token {token!r} must match [a-z][a-z0-9_]*")

    def mapping(self) -> dict[str, str]:
        return dict(zip(_case_variants(self.old_token), _case_variants(self.new_token)))


def apply_rename(content: str, spec: RenameSpec) -> str:
    """Substitute every case-variant occurrence; all other text is unchanged."""
    mapping = spec.mapping()
    pattern = re.compile("|".join(re.escape(v) for v in dict.fromkeys(mapping)))
    return pattern.sub(lambda match: mapping[match.group(0)], content)


def rename_tree(tree: FileTree, spec: RenameSpec) -> FileTree:
    """Apply the rename to every path and every file body of a tree.

    The entry count is preserved; if two entries would land on the same
    renamed path, PathCollision is raised and nothing is returned.
    """
    renamed: dict[str, str] = {}
    for path, content in tree.items():
        new_path = apply_rename(path, spec)
        if new_path in renamed:
            raise PathCollision(f"rename maps two entries onto {new_path!r}")
        renamed[new_path] = apply_rename(content, spec)
    return FileTree(renamed)
