"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a formula."""


class ConfigurationError(ValueError):
    """A command, sweep or scenario is configured inconsistently."""


class ScenarioError(ConfigurationError):
    """A scenario file failed to parse or validate.

    ``field`` names the offending key (``None`` for file-level problems).
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ScenarioWarning(UserWarning):
    """A scenario is valid but outside the regime the formulas are meant for."""
