"""Exception hierarchy shared by every module."""

from __future__ import annotations

#: Largest algebra the generic machinery will materialize or search.
DOMAIN_CAP = 4096
#: Largest configuration space that is walked exhaustively.
CONFIG_CAP = 65536


class AlgCAError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(AlgCAError, ValueError):
    """Input text does not follow one of the line-oriented file formats."""


class ValidationError(AlgCAError, ValueError):
    """A parsed object violates a structural invariant (associativity, table length, ...)."""


class CapExceeded(AlgCAError):
    """An exhaustive computation would exceed the configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class SignatureMismatch(AlgCAError, ValueError):
    pass


class NotEntropicError(AlgCAError):
    def __init__(self, algebra_name: str, witness):
        super().__init__(f"algebra {algebra_name!r} is not entropic: {witness}")
        self.witness = witness


class NotModuleLike(AlgCAError):
    pass


class NotBooleanError(AlgCAError):
    pass


class NotEndomorphicError(AlgCAError):
    pass


class NotACellularAutomaton(AlgCAError):
    pass


def check_cap(what: str, size: int, cap: int | None, default: int = DOMAIN_CAP) -> None:
    limit = default if cap is None else cap
    if size > limit:
        raise CapExceeded(what, size, limit)
