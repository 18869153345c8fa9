"""Exception types shared by all arrangealex modules.

Every exception carries a machine-readable ``code`` which the command line
interface puts into its JSON error object.
"""


class ArrangealexError(Exception):
    """Base class of all errors raised by arrangealex."""

    #: Machine-readable error code.
    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InputError(ArrangealexError):
    """The input (files, numbers, matrices) is invalid."""

    code = "input_error"


class ParseError(InputError):
    """A textual or JSON value could not be parsed."""

    code = "parse_error"


class ShapeError(InputError):
    """Matrix or vector shapes do not fit together."""

    code = "shape_error"


class NonEssentialArrangementError(InputError):
    """The arrangement has no singular point."""

    code = "non_essential"


class RepresentationError(InputError):
    """The twist specification is not a valid representation.

    If the failure is caused by a relation that is not respected, ``witness``
    holds a description of that relation.
    """

    code = "invalid_representation"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class FrameError(ArrangealexError):
    """Problems with the generic frame used to trace the marked 2-graph."""

    code = "frame_error"


class FrameSearchError(FrameError):
    """No generic frame was found within the retry cap."""

    code = "frame_search_exhausted"


class StaleFrameError(FrameError):
    """A frame does not satisfy the genericity assumptions.

    ``report`` holds the failing
    :class:`~arrangealex.marked_graph.AssumptionReport`.
    """

    code = "stale_frame"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InapplicableError(ArrangealexError):
    """The hypotheses of a closed formula are not satisfied."""

    code = "inapplicable"


class SearchExhaustedError(ArrangealexError):
    """A bounded search (e.g. for a distinguishing twist) found nothing."""

    code = "no_certificate"
