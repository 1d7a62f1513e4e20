"""Shared exception types. The CLI maps these onto its exit-code contract."""


class SupergridError(Exception):
    """Base class for all package errors."""


class DataError(SupergridError):
    """Bad input data or a data/spec mismatch (CLI exit code 3)."""


class ConfigError(SupergridError):
    """Invalid configuration; message starts with the offending field path (CLI exit code 2)."""
