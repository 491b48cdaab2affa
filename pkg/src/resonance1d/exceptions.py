"""Exception hierarchy shared by the solver modules."""


class Resonance1DError(Exception):
    """Base class for all errors raised by this package."""


class TruncationError(Resonance1DError, ValueError):
    """A truncated power series was evaluated outside its validated radius."""


class NoBarrierError(Resonance1DError, ValueError):
    """The potential has no interior maximum."""


class NonConvergenceError(Resonance1DError, ArithmeticError):
    """Newton iteration hit ``max_iter``; ``last`` holds the final iterate."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class SingularDerivativeError(Resonance1DError, ArithmeticError):
    """The derivative of the quantization function vanished."""


class SequenceLostError(Resonance1DError, ArithmeticError):
    """A root sequence stopped converging as the determinant dimension grew."""

    def __init__(self, message, history=()):
        super().__init__(message)
        self.history = tuple(history)


class ClosedChannelError(Resonance1DError, ValueError):
    """Energy at or below the asymptotic value of the potential."""


class IntegrationError(Resonance1DError, RuntimeError):
    """The ODE integrator failed (step-size underflow or stiffness)."""


class UnitarityError(Resonance1DError, RuntimeError):
    """|T + R - 1| exceeded the hard limit."""


class BracketError(Resonance1DError, ValueError):
    """No interior maximum of T inside the requested bracket."""


class DegenerateStateError(Resonance1DError, ArithmeticError):
    """Norm integral of a wavefunction vanished."""
