"""Exception hierarchy shared by every module."""


class CausalFairError(Exception):
    """Base class for all library errors."""

    code = "error"

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        context = getattr(self, "context", None)
        if context:
            out["context"] = context
        return out


class GraphError(CausalFairError):
    code = "graph_error"


class CyclicGraph(GraphError):
    code = "cyclic_graph"


class NotExtendable(GraphError):
    code = "not_extendable"


class LimitExceeded(GraphError):
    code = "limit_exceeded"

    def __init__(self, limit, found):
        super().__init__(f"more than {limit} consistent extensions (found {found} before stopping)")
        self.limit = limit
        self.found = found


class StatsError(CausalFairError):
    code = "stats_error"


class SingularCovariance(StatsError):
    code = "singular_covariance"


class SingularDesign(StatsError):
    code = "singular_design"


class InsufficientSamples(StatsError):
    code = "insufficient_samples"


class ZeroVariance(StatsError):
    code = "zero_variance"


class MixedFamily(StatsError):
    code = "mixed_family"


class DataError(CausalFairError):
    code = "data_error"


class SchemaMismatch(DataError):
    code = "schema_mismatch"


class MissingValue(DataError):
    code = "missing_value"

    def __init__(self, row, column):
        super().__init__(f"missing value at row {row}, column {column!r}")
        self.row = row
        self.column = column


class EmptyDataset(DataError):
    code = "empty_dataset"


class MissingVariable(DataError):
    code = "missing_variable"


class NotApplicable(CausalFairError):
    """Algorithm cannot run on the given data kinds."""

    code = "not_applicable"


class FairnessError(CausalFairError):
    code = "fairness_error"


class EmptyGroup(FairnessError):
    code = "empty_group"


class EmptyClass(FairnessError):
    code = "empty_class"
