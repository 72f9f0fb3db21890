"""Python bindings for the mediagraph C++ core."""

from ._mediagraph import (
    Corpus,
    Gazetteer,
    MediagraphError,
    ccdf,
    commenter_projection,
    extract_interviewees,
    extraction_prompt,
    generate_synthetic,
    load_corpus,
    overlap_matrix,
    parse_invited,
    pearson,
    run_pipeline,
    summarize_channel,
    taxonomy,
    write_corpus,
)

__all__ = [
    "Corpus",
    "Gazetteer",
    "MediagraphError",
    "ccdf",
    "commenter_projection",
    "extract_interviewees",
    "extraction_prompt",
    "generate_synthetic",
    "load_corpus",
    "overlap_matrix",
    "parse_invited",
    "pearson",
    "run_pipeline",
    "summarize_channel",
    "taxonomy",
    "write_corpus",
]
