"""Exception types shared across the package."""

from __future__ import annotations


class GudieError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GudieError):
    """A run configuration or interest spec failed validation."""


class IngestionError(GudieError):
    """A graph input file or record could not be ingested.

    Carries enough position information (file, line, column) to point an
    operator at the offending cell.
    """

    def __init__(self, message: str, *, file: str | None = None,
                 line: int | None = None, column: str | None = None):
        self.file = file
        self.line = line
        self.column = column
        parts = []
        if file is not None:
            parts.append(str(file))
        if line is not None:
            parts.append(f"line {line}")
        if column is not None:
            parts.append(f"column {column!r}")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UnknownNodeError(GudieError, KeyError):
    """A node id was referenced that does not exist in the graph."""

    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"unknown node id {node_id!r}")

    def __str__(self) -> str:  # KeyError quotes its arg; keep the message readable
        return self.args[0]


class ExpansionBudgetError(GudieError):
    """The expansion search exceeded the configured safety budget."""

    def __init__(self, seed_id: str, budget: int):
        self.seed_id = seed_id
        self.budget = budget
        super().__init__(
            f"expansion budget of {budget} stored expansions exceeded "
            f"while expanding seed {seed_id!r}"
        )
