"""Exception hierarchy.

Errors split in two families that the CLI maps to exit codes: validation
problems (bad parameters, bad specs, bad config) exit with 2, everything
that goes wrong while reading files or running exit with 1.
"""


class SubspaceKitError(Exception):
    pass


class ValidationError(SubspaceKitError, ValueError):
    """Caller supplied an invalid value; maps to exit code 2."""


class InvalidCluster(ValidationError):
    pass


class InvalidParams(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class RuntimeFailure(SubspaceKitError):
    """Failure while reading input or executing; maps to exit code 1."""


class InsufficientData(RuntimeFailure):
    pass


class DimensionMismatch(RuntimeFailure):
    pass


class EmptyReference(RuntimeFailure):
    pass


# -- file formats ---------------------------------------------------------


class FormatError(RuntimeFailure):
    pass


class MalformedArff(FormatError):
    pass


class UnsupportedAttribute(FormatError):
    pass


class MissingValue(FormatError):
    pass


class MalformedCsv(FormatError):
    pass


class NonNumericCell(MalformedCsv):
    pass


class RaggedRows(MalformedCsv):
    pass


class IdOutOfRange(FormatError):
    pass


class DanglingClusterId(FormatError):
    pass
