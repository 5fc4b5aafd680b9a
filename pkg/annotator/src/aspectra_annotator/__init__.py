"""Rule-based corpus annotator producing the aspectra JSONL schema."""

from .pipeline import PIPELINE_NAME, PIPELINE_VERSION

__all__ = ["PIPELINE_NAME", "PIPELINE_VERSION"]
