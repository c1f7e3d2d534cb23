"""Exception hierarchy shared by every layer of the package."""


class FFSchinzelError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-readable tag used by the CLI error object
    code = "error"


class FieldError(FFSchinzelError, ValueError):
    code = "field"


class FieldMismatch(FFSchinzelError, ValueError):
    code = "field_mismatch"


class NotPrime(FieldError):
    code = "not_prime"


class FieldTooLarge(FieldError):
    code = "field_too_large"


class NegativeValuation(FFSchinzelError, ValueError):
    """The function has a pole at the place, so it has no residue there."""

    code = "negative_valuation"


class SingularCurve(FFSchinzelError, ValueError):
    code = "singular_curve"


class BadCharacteristic(FFSchinzelError, ValueError):
    code = "bad_characteristic"


class NotOnCurve(FFSchinzelError, ValueError):
    code = "not_on_curve"


class BadPlace(FFSchinzelError, ValueError):
    """The place is excluded from reduction (pole of the model or bad reduction)."""

    code = "bad_place"


class BudgetExceeded(FFSchinzelError, RuntimeError):
    """A coordinate-degree or enumeration budget was exhausted."""

    code = "budget_exceeded"


class PDividesN(FFSchinzelError, ValueError):
    code = "p_divides_n"


class TorsionPoint(FFSchinzelError, ValueError):
    code = "torsion_point"


class SupersingularCurve(FFSchinzelError, ValueError):
    code = "supersingular_curve"


class NotEnoughPlaces(FFSchinzelError, RuntimeError):
    code = "not_enough_places"


class ParseError(FFSchinzelError, ValueError):
    """Syntax error in a textual expression; ``pos`` is a 0-based column."""

    code = "parse"

    def __init__(self, message: str, pos: int = 0, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")
