"""
Exception hierarchy shared by every pricer, the report harness and the CLI
"""


class PricingError(Exception):
    """Base exception for the pricing library"""
    pass


class ValidationError(PricingError, ValueError):
    """Invalid user input or violated type invariant"""
    pass


class UnsupportedCombinationError(ValidationError):
    """Method/contract combination without a pricing formula"""
    pass


class NeedsAssumptionError(ValidationError):
    """A table reproduction needs inputs the source tables do not state"""

    def __init__(self, table_id: str, missing: list[str]):
        self.table_id = table_id
        self.missing = list(missing)
        super().__init__(
            f"Table {table_id} needs assumptions that are not in the fixture: "
            f"{', '.join(self.missing)}"
        )


class FixtureError(ValidationError):
    """Missing, corrupt or checksum-mismatched fixture data"""
    pass


class NumericalError(PricingError, ArithmeticError):
    """Numerically undefined pricing problem"""
    pass


class DomainError(NumericalError):
    """Argument outside the domain of a numeric routine"""
    pass


class SingularityError(NumericalError):
    """Dividend adjustment would divide by zero or produce a non-positive spot"""
    pass


class AlreadyKnockedOutError(NumericalError):
    """Barrier terms requested for a spot at or above the barrier"""

    def __init__(self, spot: float, barrier_level: float):
        self.spot = spot
        self.barrier_level = barrier_level
        super().__init__(
            f"spot {spot} is at or above barrier {barrier_level}: option already knocked out"
        )
