"""
Exception hierarchy for the conflict-free coloring lab.
Every error serialises to a JSON-ready dict so the CLI can emit it on stderr.
"""

from typing import Any

from conf.config import JSON_SCHEMA_VERSION


class CFLabError(Exception):
    """Base class; `details` holds the structured diagnostics."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": JSON_SCHEMA_VERSION,
            "error": type(self).__name__,
            "message": self.message,
            **self.details,
        }


class ParameterError(CFLabError):
    def __init__(self, field: str, message: str):
        super().__init__(f"invalid parameter '{field}': {message}", field=field)
        self.field = field


class ParseError(CFLabError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}", line=line)
        self.line = line


class IsolatedVertexError(CFLabError):
    def __init__(self, vertex: int):
        super().__init__(
            f"vertex {vertex} is isolated; open neighborhoods must be nonempty",
            vertex=vertex,
        )
        self.vertex = vertex


class PreconditionError(CFLabError):
    def __init__(self, failures: list[str], **details: Any):
        super().__init__("preconditions violated: " + "; ".join(failures), failures=failures, **details)
        self.failures = failures


class RetryExhaustedError(CFLabError):
    def __init__(self, what: str, rounds: int, **details: Any):
        super().__init__(f"{what}: round cap hit after {rounds} rounds", rounds=rounds, **details)
        self.rounds = rounds


class UnsatisfiedVerticesError(CFLabError):
    def __init__(self, vertices: list[int]):
        super().__init__(
            f"{len(vertices)} vertices have no uniquely colored neighbor",
            vertices=vertices,
        )
        self.vertices = vertices


class InvariantError(CFLabError):
    """A runtime check of an algorithm invariant failed."""
