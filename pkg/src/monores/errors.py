class MonoresError(Exception):
    pass


class ReducibleModulus(MonoresError):
    pass


class DivisionByZero(MonoresError, ZeroDivisionError):
    pass


class NotAPower(MonoresError, ValueError):
    pass


class DivisionFailure(MonoresError, ArithmeticError):
    """A monomial did not divide a series on its visible terms."""


class PrecisionExhausted(MonoresError):
    """A quantity needed by the engine sits at or above the known precision."""


class OutsideSetting(MonoresError):
    """Cleaning produced coordinates in which a middle coefficient is no longer controlled."""


class InvalidState(MonoresError, ValueError):
    def __init__(self, report):
        self.report = report
        bad = ", ".join(c.name for c in report.failures)
        super().__init__(f"state violates: {bad}")


class NoBoundary(MonoresError):
    pass


class CharacterizationMismatch(MonoresError):
    pass


class SpecViolation(MonoresError, ValueError):
    def __init__(self, failed):
        self.failed = tuple(failed)
        super().__init__("jump spec fails: " + ", ".join(self.failed))


class SchemaError(MonoresError, ValueError):
    pass


class EmbeddingInvalid(MonoresError):
    pass


class JumpAbsent(MonoresError):
    pass
