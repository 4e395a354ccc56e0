"""Exception hierarchy shared across the package."""


class DvbnError(Exception):
    """Base class for all package errors."""


class DataError(DvbnError):
    """Malformed or inconsistent input data (CSV cells, schema mismatches)."""


class ConfigError(DvbnError):
    """Invalid run configuration (bad paths, bad flag combinations)."""


class CycleError(DvbnError):
    """Edge insertion would create a directed cycle."""


class ValidationError(DvbnError):
    """A precondition on a library call was violated."""
