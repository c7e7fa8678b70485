"""Embeddings of planar graphs into a universal recursive host graph.

The guest is given by its rotation system (cyclic neighbor order at each
vertex); `embed` returns the vertex images, one host path per guest edge,
and the verdict of an independent verifier.
"""

from ._planarhost import (
    StructuralError,
    build_host,
    build_mesh,
    embed,
    embedding_text,
    host_adjacent,
    route_linkage,
    route_permutation,
    verify_embedding,
)

__all__ = [
    "StructuralError",
    "build_host",
    "build_mesh",
    "embed",
    "embedding_text",
    "host_adjacent",
    "route_linkage",
    "route_permutation",
    "verify_embedding",
]
