"""Project scaffolding, best-practice auditing, and local CI pipeline tooling."""

__version__ = "0.1.0"
