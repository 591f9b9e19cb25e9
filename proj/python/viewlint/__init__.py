"""Static detection of dangling string views and string buffer pointers."""

from ._viewlint import (
    FrontendError,
    analyze,
    analyze_json,
    analyze_text,
    dump_cfg,
    dump_egraph,
    leaf_states,
    list_checkers,
    verify,
)

__all__ = [
    "FrontendError",
    "analyze",
    "analyze_file",
    "analyze_json",
    "analyze_text",
    "dump_cfg",
    "dump_egraph",
    "leaf_states",
    "list_checkers",
    "verify",
]


def analyze_file(path, **options):
    """Read ``path`` and analyze it; ``options`` are those of :func:`analyze`."""
    with open(path, encoding="utf-8") as f:
        return analyze(f.read(), str(path), **options)
