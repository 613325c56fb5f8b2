"""Exception hierarchy shared across the package."""


class DetourError(Exception):
    """Base class for all package errors."""


class DegenerateInput(DetourError):
    """A geometric primitive was handed a degenerate configuration."""


class SingularStart(DetourError):
    """The construction cannot be started at the requested time."""


class DegenerateOp(DetourError):
    def __init__(self, node, cause=None):
        self.node = node
        self.cause = cause
        super().__init__(f"node {node} degenerated: {cause}")


class AmbiguousStep(DetourError):
    def __init__(self, node, margin):
        self.node = node
        self.margin = margin
        super().__init__(f"proximity cannot separate candidates at node {node} (margin {margin:.3g})")


class RefinementExhausted(DetourError):
    """Step halving ran out of depth; likely a singularity on the detour path."""


class NonTerminating(DetourError):
    def __init__(self, max_detours, locus=None):
        self.max_detours = max_detours
        self.locus = locus
        super().__init__(f"trace did not close within {max_detours} detours")


class DegenerateConfiguration(DetourError):
    """Point data does not determine the requested object uniquely."""


class EmptyLocus(DetourError):
    """Nothing to render."""
