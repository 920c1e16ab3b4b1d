"""Exception hierarchy.

``PreconditionError`` subclasses signal invalid mathematical input (CLI exit
code 3); ``ConsistencyError`` subclasses signal that two independent
computations disagreed, which points at a bug (exit code 4).
"""


class TropMirrorError(Exception):
    exit_code = 1


class SchemaError(TropMirrorError):
    exit_code = 2


class PreconditionError(TropMirrorError):
    exit_code = 3


class ConsistencyError(TropMirrorError):
    exit_code = 4


class DimensionMismatch(PreconditionError):
    pass


class NotFullDimensional(PreconditionError):
    pass


class OriginNotInterior(PreconditionError):
    pass


class Unbounded(PreconditionError):
    pass


class NotFano(PreconditionError):
    pass


class NotCartier(PreconditionError):
    pass


class InvalidNefPartition(PreconditionError):
    pass


class NotReduced(PreconditionError):
    pass


class NotEquidimensional(PreconditionError):
    pass


class SphereCheckFailed(PreconditionError):
    pass


class UnboundedCandidatePolytope(PreconditionError):
    pass


class EmptySupport(PreconditionError):
    pass


class UnboundedSlice(PreconditionError):
    pass


class NoCartierMultiple(PreconditionError):
    pass


class NotFaceOfDelta(ConsistencyError):
    pass


class FormsDisagree(ConsistencyError):
    pass


class TropicalTestsDisagree(ConsistencyError):
    pass


class PipelineError(TropMirrorError):
    """Wraps a failure with the pipeline step it occurred in."""

    def __init__(self, step: str, cause: TropMirrorError):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause
        self.exit_code = cause.exit_code
