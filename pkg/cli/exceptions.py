from django.core.exceptions import ValidationError

SESSION_ERROR_CODES = ("syntax", "undeclared", "arity", "exponent", "duplicate")


class SessionError(ValidationError):
    """A diagnostic for session text, pinned to a line and column"""

    def __init__(self, message, code="syntax", line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(
            "line %(line)s, column %(column)s: " + message.replace("%", "%%"),
            code=code,
            params={"line": line, "column": column},
        )

    def __str__(self):
        return self.messages[0]
