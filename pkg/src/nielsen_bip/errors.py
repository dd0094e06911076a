class NielsenError(Exception):
    """Base class. ``code`` is the stable name reported by the CLI."""

    code = "nielsen-error"


class SpecError(NielsenError, ValueError):
    code = "invalid-spec"


class SpecParseError(SpecError):
    code = "spec-parse-error"

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


class DegenerateSpecError(NielsenError):
    code = "nielsen-undefined-degenerate"


class MultipleClassesError(NielsenError):
    code = "multiple-classes-index-not-aggregated"


class BudgetExceededError(NielsenError):
    code = "budget-exceeded"
