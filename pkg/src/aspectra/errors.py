"""Exception types shared across the pipeline."""


class AspectraError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AspectraError):
    """Invalid input data or configuration (CLI exit code 2)."""


class PipelineError(AspectraError):
    """Runtime failure inside a pipeline stage (CLI exit code 1)."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
