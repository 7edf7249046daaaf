"""Exception types shared across the simulator."""


class AmphisimError(Exception):
    pass


class DomainError(AmphisimError, ValueError):
    """An input is outside the physically valid range."""


class GeometryError(AmphisimError, ValueError):
    """A linkage configuration is geometrically impossible."""


class ModeError(AmphisimError, ValueError):
    """A gait mode was requested on an incompatible terrain."""


class OverloadError(AmphisimError, ValueError):
    """Requested current exceeds the battery's discharge rating."""


class IntegrationFault(AmphisimError, RuntimeError):
    """The integrator produced a non-finite state."""


class CalibrationError(AmphisimError, RuntimeError):
    """The calibration target is outside the achievable range."""

    def __init__(self, message, achievable_range=None):
        super().__init__(message)
        self.achievable_range = achievable_range


class ParseError(AmphisimError, ValueError):
    """A data file is malformed; line_no is 1-based when known."""

    def __init__(self, message, line_no=None):
        super().__init__(message)
        self.line_no = line_no
