"""Exception hierarchy shared by all workbench modules."""


class WorkbenchError(Exception):
    """Base class for all user-facing errors."""


class LoadError(WorkbenchError):
    """A document or corpus could not be loaded."""


class StoreError(WorkbenchError):
    """Workspace persistence failure or misuse."""


class QueryError(WorkbenchError):
    """Invalid tag/field/filter combination in a show query."""


class CommandError(WorkbenchError):
    """Command line could not be parsed or executed."""
