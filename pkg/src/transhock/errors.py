"""Exception types shared across the package."""


class TranshockError(Exception):
    """Base class for every error this package raises deliberately."""


class SpeedOutOfRange(TranshockError, ValueError):
    """Speed is negative or at/above the vacuum limit sqrt(2*c0**2/(gamma-1))."""


class OutOfDomain(TranshockError, ValueError):
    """Coordinate lies outside the geometry's domain [x_lo, x_hi]."""


class NotSupersonic(TranshockError, ValueError):
    """Upstream state handed to the shock jump is not strictly supersonic."""


class SonicSingularity(TranshockError, ArithmeticError):
    """The reduced ODE right-hand side is singular at the sonic speed."""


class SonicApproach(SonicSingularity):
    """Integration drove the speed into the sonic guard band (choking signal)."""


class Choked(TranshockError):
    """The flow cannot pass some width: the branch constant exceeds its sonic
    maximum there.  ``x`` carries the first offending coordinate when known."""

    def __init__(self, x=None, message=None):
        self.x = x
        if message is None:
            if x is None:
                message = "flow is choked: no real speed carries this flux"
            else:
                message = f"flow is choked at x = {x:.12g}"
        super().__init__(message)


class NoSubsonicRoot(TranshockError):
    """No strictly subsonic exit speed carries the required mass flux."""


class InvariantViolation(TranshockError):
    """An internal consistency check failed; a defect, not bad input."""


class ValidationError(TranshockError):
    """One or more configuration or problem fields violate their preconditions.

    Collects every violation so a caller sees the full report at once.
    """

    def __init__(self, messages):
        self.messages = [str(m) for m in messages]
        super().__init__("; ".join(self.messages))
