"""Exception hierarchy and resource limits."""

import os


class OperadError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(OperadError, ValueError):
    pass


class InvalidOrderError(OperadError, ValueError):
    pass


class InvalidMapError(OperadError, ValueError):
    pass


class NotAnOrdinalError(OperadError, ValueError):
    pass


class NotASurjectionError(OperadError, ValueError):
    pass


class NotDominatedError(OperadError, ValueError):
    pass


class ArityMismatchError(OperadError, ValueError):
    pass


class TableError(OperadError, ValueError):
    """An explicit composition table is missing an entry or is incoherent."""


class CycleDetectedError(OperadError, RuntimeError):
    """A generated category that should be a poset contains a cycle."""


class ResourceLimitError(OperadError, RuntimeError):
    """An enumeration would exceed the configured size bounds."""


# Largest number of tips accepted by the enumerators.
MAX_K = int(os.environ.get("OPERAD_WB_MAX_K", "8"))
# Largest number of objects (poset elements, diagram elements) built in one go.
MAX_OBJECTS = int(os.environ.get("OPERAD_WB_MAX_OBJECTS", "2000000"))


def check_k(k, what="enumeration"):
    if k < 0:
        raise ValueError(f"{what}: negative size {k}")
    if k > MAX_K:
        raise ResourceLimitError(f"{what}: k={k} exceeds the configured bound {MAX_K}")


def check_objects(count, what="build"):
    if count > MAX_OBJECTS:
        raise ResourceLimitError(
            f"{what}: {count} objects exceeds OPERAD_WB_MAX_OBJECTS={MAX_OBJECTS}"
        )
