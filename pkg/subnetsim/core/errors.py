from dataclasses import dataclass


class SubnetsimError(Exception):
    """Base class for all simulator errors."""


@dataclass(frozen=True)
class ConfigIssue:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


class ConfigValidationError(SubnetsimError):
    """Raised when a scenario configuration violates one or more invariants."""

    def __init__(self, issues: list[ConfigIssue]) -> None:
        self.issues = issues
        super().__init__("; ".join(str(issue) for issue in issues))

    @property
    def fields(self) -> list[str]:
        return [issue.field for issue in self.issues]


class PosteriorFitError(SubnetsimError):
    """Raised when the regularized normal equations cannot be factorized."""


class AoiInvariantError(SubnetsimError):
    """Raised when a delivered packet carries a generation time in the future."""


class MetricsError(SubnetsimError):
    """Raised when metrics are requested from a trace that cannot provide them."""


class ExperimentError(SubnetsimError):
    """Raised for malformed experiment or sweep specifications."""
