"""Exception types shared across pipeline stages.

Every error carries a ``stage`` string so the CLI and the HTTP service can
name the failing stage in their diagnostics.
"""


class TrustPipelineError(Exception):
    stage = "pipeline"

    def __init__(self, message: str, *, stage: str | None = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class UsageError(TrustPipelineError):
    """Caller passed something invalid: unknown format tag, k=0, bad id, ..."""

    stage = "usage"


class NodeNotFoundError(TrustPipelineError):
    """An address or node id is absent from the registry/graph at hand."""

    stage = "lookup"


class NoSuspectsPresentError(TrustPipelineError):
    """None of the suspects resolve to a node of the searched graph.

    Distinct from a successful search whose merged network happens to be
    empty (e.g. every ego subnetwork was dropped as degenerate).
    """

    stage = "search"

    def __init__(self, absent: tuple[str, ...]):
        super().__init__(f"none of the {len(absent)} suspects are present in the graph")
        self.absent = absent
