from __future__ import annotations


class CentraError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidPermutation(CentraError, ValueError):
    pass


class OrderCapExceeded(CentraError, RuntimeError):
    def __init__(self, name: str, order_cap: int) -> None:
        super().__init__(f"group {name} exceeds the order cap of {order_cap} elements")
        self.name = name
        self.order_cap = order_cap

    def __reduce__(self):
        return type(self), (self.name, self.order_cap)


class InvalidFamily(CentraError, ValueError):
    pass


class GroupSpecError(CentraError, ValueError):
    pass


class CorpusFormatError(CentraError, ValueError):
    def __init__(self, line_number: int, reason: str) -> None:
        super().__init__(f"corpus line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason

    def __reduce__(self):
        return type(self), (self.line_number, self.reason)


class IsomorphismCapExceeded(CentraError, RuntimeError):
    pass
