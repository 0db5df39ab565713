"""In-memory file trees: the unit of rendering, renaming, and auditing.

A tree is an ordered mapping from normalized relative paths to UTF-8 text
content. Trees are immutable once constructed; loaders and writers translate
between a tree and a directory on disk.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Mapping

# Directories never loaded from disk (VCS metadata, caches, our own artifacts).
SKIP_DIRS = {".git", ".hg", ".svn", "__pycache__", ".forge-artifacts"}


class TreeError(Exception):
    """A tree could not be assembled or loaded."""


def normalize_path(path: str) -> str:
    """Validate a tree path: relative, "/"-separated, no dot segments."""
    if not path or path.startswith("/") or "\\" in path:
        raise TreeError(f"invalid tree path {path!r}")
    if any(ch in path for ch in ("\t", "\n", "\r")):
        raise TreeError(f"invalid tree path {path!r}")
    if any(segment in ("", ".", "..") for segment in path.split("/")):
        raise TreeError(f"invalid tree path {path!r}")
    return path


class FileTree:
    """Ordered, immutable mapping of relative paths to text content."""

    def __init__(self, entries: Mapping[str, str] | Iterable[tuple[str, str]]):
        items = entries.items() if isinstance(entries, Mapping) else entries
        collected: dict[str, str] = {}
        for path, content in items:
            path = normalize_path(path)
            if path in collected:
                raise TreeError(f"duplicate tree path {path!r}")
            if not isinstance(content, str):
                raise TreeError(f"content of {path!r} is not text")
            collected[path] = content
        # A path may not double as a directory of another entry.
        prefixes: set[str] = set()
        for path in collected:
            parts = path.split("/")
            for i in range(1, len(parts)):
                prefixes.add("/".join(parts[:i]))
        clashes = prefixes & set(collected)
        if clashes:
            raise TreeError(f"paths used both as file and directory: {sorted(clashes)}")
        self._entries = dict(sorted(collected.items()))

    @classmethod
    def from_dir(cls, root: str | Path, on_binary: str = "error") -> "FileTree":
        """Load a directory as a tree, skipping VCS and artifact directories.

        ``on_binary`` selects what happens with files that do not decode as
        UTF-8: ``"error"`` raises TreeError, ``"skip"`` leaves them out
        (useful when auditing pre-existing repositories).
        """
        if on_binary not in ("error", "skip"):
            raise ValueError(f"unknown on_binary policy {on_binary!r}")
        root = Path(root)
        if not root.is_dir():
            raise TreeError(f"not a directory: {root}")
        entries: dict[str, str] = {}
        for dirpath, dirnames, filenames in os.walk(root):
            dirnames[:] = sorted(d for d in dirnames if d not in SKIP_DIRS)
            for name in sorted(filenames):
                full = Path(dirpath) / name
                rel = full.relative_to(root).as_posix()
                try:
                    text = full.read_text(encoding="utf-8")
                except UnicodeDecodeError:
                    if on_binary == "skip":
                        continue
                    raise TreeError(f"{rel}: not valid UTF-8 text") from None
                entries[rel] = text.replace("\r\n", "\n")
        return cls(entries)

    def write_to(self, dest: str | Path) -> int:
        """Materialize the tree under ``dest`` and return the file count."""
        dest = Path(dest)
        for path, content in self._entries.items():
            target = dest / path
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8", newline="") as handle:
                handle.write(content)
        return len(self._entries)

    def get(self, path: str) -> str:
        return self._entries[path]

    def paths(self) -> list[str]:
        return list(self._entries)

    def items(self):
        return self._entries.items()

    def __contains__(self, path: str) -> bool:
        return path in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FileTree):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return f"FileTree({len(self._entries)} entries)"


def scan_token(tree: FileTree, token: str) -> list[tuple[str, int, str]]:
    """Case-insensitive full-text search for ``token`` over paths and contents.

    Returns (path, line_number, text) hits, where line number 0 marks a hit
    in the path itself. Deliberately kept independent of the rename engine
    so it can serve as its oracle.
    """
    needle = token.lower()
    hits: list[tuple[str, int, str]] = []
    for path, content in tree.items():
        if needle in path.lower():
            hits.append((path, 0, path))
        for lineno, line in enumerate(content.split("\n"), start=1):
            if needle in line.lower():
                hits.append((path, lineno, line))
    return hits
