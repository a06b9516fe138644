"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: input problems (missing, unreadable or
semantically invalid files) are distinguished from internal failures.
"""


class PipelineError(Exception):
    """Base class for all errors raised by this package."""


class InputDataError(PipelineError):
    """The input exists but cannot be used (e.g. fully transparent image)."""


class MalformedImageError(InputDataError):
    """A file that should be an image cannot be decoded."""


class InvariantError(PipelineError):
    """An internal consistency check failed; indicates a bug, not bad input."""
