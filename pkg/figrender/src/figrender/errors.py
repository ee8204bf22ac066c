class FigrenderError(Exception):
    """Base class for renderer errors."""


class MissingFile(FigrenderError):
    """A referenced input file does not exist."""


class SchemaMismatch(FigrenderError):
    """An input file does not parse under the expected schema."""
