"""Graph-based semi-supervised aspect term extraction and opinion summary."""

from .errors import AspectraError, PipelineError, ValidationError

__version__ = "0.1.0"

__all__ = ["AspectraError", "PipelineError", "ValidationError", "__version__"]
