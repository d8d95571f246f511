"""Exception hierarchy shared across the package."""


class DynRouteError(Exception):
    """Base class for all dynroute errors."""


# -- file loading / graph construction --------------------------------------

class MalformedRow(DynRouteError):
    """A data file row (or config entry) could not be parsed or violates a
    field constraint."""


class DuplicateNodeId(DynRouteError):
    """Two node rows share the same id."""


class UnknownCategory(DynRouteError):
    """An edge row names a category missing from the category table."""


class DanglingEndpoint(DynRouteError):
    """An edge references a node id outside the node set."""


class InvalidGraph(DynRouteError):
    """Node/edge sets cannot form a valid road graph (non-contiguous ids,
    self-loops, parallel edges)."""


class EmptyTimeline(DynRouteError):
    """A weight timeline holds no timestamps."""


class Unsatisfiable(DynRouteError):
    """A requested subgraph cannot be extracted (too large, or connectivity
    cannot be preserved)."""


# -- simulation --------------------------------------------------------------

class EmptyGraph(DynRouteError):
    """Vehicles were requested on a graph without edges."""


class DeadEnd(DynRouteError):
    """A closed node has no incident edges to continue on."""


class InvalidThresholds(DynRouteError):
    """Density thresholds must satisfy 0 < alpha < beta."""


class InconsistentMembership(DynRouteError):
    """A vehicle listed on an edge does not reference that edge/direction."""


class ZeroSpeed(DynRouteError):
    """Travel time requested for a non-positive mean speed."""


# -- routing -----------------------------------------------------------------

class Unreachable(DynRouteError):
    """No route exists between the requested pair."""


class NonPositiveWeight(DynRouteError):
    """Routing inputs must carry strictly positive travel times."""


class MissingEdge(DynRouteError):
    """A path references an arc absent from the timeline."""


# -- harness -----------------------------------------------------------------

class EmptyInput(DynRouteError):
    """An aggregate was requested over zero records."""
