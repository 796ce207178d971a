"""Exception hierarchy.

Every error raised for bad input or an unrecoverable computation derives from
:class:`ModCartanError` so the CLI can map it to an exit code without a stack
trace.
"""


class ModCartanError(Exception):
    """Base class for all package errors."""


class UsageError(ModCartanError):
    """Malformed user input (specs, files, flags)."""


class ComputationError(ModCartanError):
    """A computation could not be completed."""


# exactla
class NonSquare(UsageError):
    pass


class ZeroPolynomial(UsageError):
    pass


class NotInvertible(ComputationError):
    pass


# groups
class SpecSyntaxError(UsageError):
    pass


class UnsupportedGroup(UsageError):
    pass


class OrderLimitExceeded(UsageError):
    pass


class NotAGroup(UsageError):
    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        msg = f"not a group: {reason}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)


class NotNormal(UsageError):
    pass


# groupalg / modrep
class ParentMismatch(UsageError):
    pass


class NotApproxIdempotent(UsageError):
    pass


class ChopFailure(ComputationError):
    pass


class IrreducibilityUndecided(ChopFailure):
    def __init__(self, module, message="irreducibility undecided"):
        self.module = module
        super().__init__(f"{message} (stuck module of dim {module.dim})")


class NotProjective(UsageError):
    pass


class InvalidModule(UsageError):
    pass


# artinring / verify
class SylowNotNormal(UsageError):
    pass


class UnknownSuite(UsageError):
    pass


class IncompatibleInput(UsageError):
    pass


class ConfigError(UsageError):
    pass
