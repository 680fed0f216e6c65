"""Exception hierarchy shared by every module."""


class OrdRepError(Exception):
    """Base class; the CLI maps it to exit status 2."""


class MalformedInput(OrdRepError, ValueError):
    pass


class UnknownElement(OrdRepError, KeyError):
    def __str__(self):
        return f"unknown element label {self.args[0]!r}"


class NotAPreorder(OrdRepError):
    pass


class NotAPartialOrder(OrdRepError):
    pass


class NotASemiorder(OrdRepError):
    """Raised with the failing axiom instance in ``witness``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CyclicStrictPart(OrdRepError):
    pass


class CapExceeded(OrdRepError):
    pass


class PreconditionFailed(OrdRepError):
    def __init__(self, hypothesis, detail=""):
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)
        self.hypothesis = hypothesis


class PartialFunctionInTotalKind(OrdRepError):
    pass


class PartialUtilityForSS(OrdRepError):
    pass


class NonPositiveAlpha(OrdRepError, ValueError):
    pass


class UnknownExample(OrdRepError, KeyError):
    def __str__(self):
        return f"unknown example {self.args[0]!r}"


class NotATopology(OrdRepError):
    pass


class DanglingReceive(OrdRepError):
    pass


class DuplicateMessageId(OrdRepError):
    pass


class CausalCycle(OrdRepError):
    pass
