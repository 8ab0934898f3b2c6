"""Self-hostable service for crowdsourced mapping of a community's social graph."""

from .graph_core import (SYSTEM, AtlasError, AuthorizationError,
                         DuplicateLinkError, EgoView, GlobalGraph, Link,
                         LinkStatus, NotFoundError, OfficeLocation, Person,
                         ValidationError, link_status)
from .graphs import Graph

__version__ = "0.1.0"

__all__ = [
    "SYSTEM", "AtlasError", "AuthorizationError", "DuplicateLinkError",
    "EgoView", "GlobalGraph", "Graph", "Link", "LinkStatus", "NotFoundError",
    "OfficeLocation", "Person", "ValidationError", "link_status",
    "__version__",
]
