from ._genesys import (
    SpecError,
    conform,
    explore,
    export_po,
    generate,
    refine,
    wp,
)

__all__ = [
    "SpecError",
    "conform",
    "explore",
    "export_po",
    "generate",
    "refine",
    "wp",
]
