"""Figure renderer for the dephnet CLI's CSV/JSON outputs."""

from .errors import FigrenderError, MissingFile, SchemaMismatch
from .render import render
from .spec import FigureSpec, load_spec

__version__ = "0.1.0"
