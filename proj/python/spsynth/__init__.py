"""Structural descriptions of forbidden-suborder ideals of series-parallel orders."""

import json

from ._core import (
    DescriptionError,
    ParseError,
    ResourceLimitError,
    SynthError,
    canonical,
    diamond_free_shape,
    enumerate,
    forb_upto,
    generate,
    ideal_key,
    is_suborder,
    member,
    size,
    synthesize,
    validate,
)
from ._core import verify as _verify

__all__ = [
    "DescriptionError",
    "ParseError",
    "ResourceLimitError",
    "SynthError",
    "canonical",
    "describe",
    "diamond_free_shape",
    "enumerate",
    "forb_upto",
    "generate",
    "ideal_key",
    "is_suborder",
    "member",
    "size",
    "synthesize",
    "validate",
    "verify",
]


def describe(forbidden, prune=False):
    """Synthesized description as a parsed JSON object."""
    return json.loads(synthesize(list(forbidden), prune))


def verify(forbidden, max_size=7, prune=False):
    """Equivalence report against brute-force enumeration, as a dict."""
    return json.loads(_verify(list(forbidden), max_size, prune))
