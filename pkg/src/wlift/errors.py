"""Exception types shared across the library."""


class ValidationError(ValueError):
    """Invalid user input: bad parameter ranges, malformed measures, etc."""


class SpaceMismatchError(ValidationError):
    """Operands live on different metric spaces."""


class BudgetExceededError(RuntimeError):
    """A product-support LP would exceed the configured size budget."""

    def __init__(self, product_size, budget):
        self.product_size = product_size
        self.budget = budget
        super().__init__(
            f"product support size {product_size} exceeds budget {budget}"
        )


class IncompatibleCurveError(RuntimeError):
    """No multi-coupling with the required optimal 2-D marginals exists."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            "compatibility LP infeasible; "
            f"minimal total excess over pairwise optima = {report.max_pair_gap:.3e}"
        )


class NoContinuousLiftError(RuntimeError):
    """The requested family has no lift concentrated on continuous paths."""
