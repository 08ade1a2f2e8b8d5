class HoodhashBaseException(Exception):
    pass


class HoodhashError(HoodhashBaseException):
    pass


class ConfigError(HoodhashError):
    pass


class ContractViolation(HoodhashError, ValueError):
    """A precondition of a public operation was not met by the caller."""


class CapacityError(HoodhashError):
    """A K-CAS descriptor would hold more than ``MAX_ENTRIES`` entries."""

    def __init__(self, requested: int, limit: int) -> None:
        self.requested = requested
        self.limit = limit
        super().__init__(f"descriptor needs {requested} entries, limit is {limit}")


class SaturatedError(HoodhashError):
    """The table is too dense to complete an operation and would need resizing."""

    def __init__(self, key: int, reason: str) -> None:
        self.key = key
        self.reason = reason
        super().__init__(f"table saturated while handling key {key}: {reason}")


class MalformedHistoryError(HoodhashError, ValueError):
    pass


class UnknownScenarioError(HoodhashError, KeyError):
    def __init__(self, scenario: str) -> None:
        self.scenario = scenario
        super().__init__(scenario)

    def __str__(self) -> str:
        return f"Unknown race scenario: {self.scenario!r}"


class RaceTimeout(HoodhashError):
    """A directed race did not reach, or leave, its pause point in time."""
