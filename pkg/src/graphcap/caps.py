"""Resource caps with safe desk-scale defaults.

The materialization cap bounds how many vertices an explicit power graph may
have; it can be overridden through the GRAPHCAP_MAX_VERTICES environment
variable. The automorphism cap bounds brute-force symmetry searches.
"""

import os

ENV_MAX_VERTICES = "GRAPHCAP_MAX_VERTICES"

DEFAULT_MAX_VERTICES = 20_000
AUTOMORPHISM_VERTEX_CAP = 12
HOMOMORPHISM_NODE_CAP = 2_000_000
MAXIMAL_SET_ENUMERATION_CAP = 200_000
SPECTRUM_VERTEX_CAP = 512


def materialization_cap() -> int:
    """Vertex budget for explicit graph materialization (env-overridable)."""
    raw = os.environ.get(ENV_MAX_VERTICES)
    if raw is None:
        return DEFAULT_MAX_VERTICES
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_MAX_VERTICES} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ENV_MAX_VERTICES} must be positive, got {value}")
    return value
