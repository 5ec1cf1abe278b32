"""kofbg: exact rationalized topological K-theory of classifying spaces.

The core packages are pure, deterministic, exact-arithmetic calculators;
`kofbg.service` wraps them in a FastAPI application and `kofbg.cli` is a
thin client over the same handlers.
"""

__version__ = "0.1.0"
