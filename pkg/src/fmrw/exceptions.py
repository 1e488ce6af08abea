"""Exception types shared across the workbench."""


class FmrwError(Exception):
    """Base class for all workbench errors."""


class ProgramSyntaxError(FmrwError):
    """Program document is not well-formed (position-reported where possible)."""


class UnknownBlockError(FmrwError):
    """Block type outside the fixed semantics catalog."""


class DuplicateDriverError(FmrwError):
    """A net is driven by more than one source."""


class ProgramStructureError(FmrwError):
    """Structural precondition violated (cycle, missing net, bad arity)."""


class DnfSizeError(FmrwError):
    """DNF expansion exceeded the configured conjunct cap."""


class MissingFailureDataError(FmrwError):
    """A quantified event has no entry in the failure database."""


class ModelError(FmrwError):
    """System failure-logic model is malformed or inconsistent."""


class OracleError(FmrwError):
    """Fault-injection oracle precondition violated (e.g. channel cap)."""
