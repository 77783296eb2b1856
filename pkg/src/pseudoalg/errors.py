"""Exception types shared across the package."""


class PseudoalgError(Exception):
    """Base class. ``code`` is the machine-readable name used in reports."""

    code = "error"

    def __init__(self, message="", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def as_dict(self):
        out = {"code": self.code, "message": str(self)}
        for key, val in self.detail.items():
            out[key] = val if isinstance(val, (int, str, list, dict, bool, type(None))) else repr(val)
        return out


class InputError(PseudoalgError):
    code = "InputError"


class JacobiViolation(InputError):
    code = "JacobiViolation"


class CocycleViolation(InputError):
    code = "CocycleViolation"


class ZeroElement(PseudoalgError):
    code = "ZeroElement"


class MixedAlgebra(PseudoalgError):
    code = "MixedAlgebra"


class AxiomFailure(PseudoalgError):
    code = "AxiomFailure"


class NotIdempotent(PseudoalgError):
    code = "NotIdempotent"


class NotFound(PseudoalgError):
    code = "NotFound"


class AnnihilatorHit(PseudoalgError):
    code = "AnnihilatorHit"


class NotClosed(PseudoalgError):
    code = "NotClosed"


class NotSubalgebra(InputError):
    code = "NotSubalgebra"


class InvalidBase(InputError):
    code = "InvalidBase"


class WrongBase(InputError):
    code = "WrongBase"


class NotIdempotentAction(PseudoalgError):
    code = "NotIdempotentAction"


class ZeroComponentHit(PseudoalgError):
    code = "ZeroComponentHit"


class DimTooLarge(PseudoalgError):
    code = "DimTooLarge"


class NotSplit(PseudoalgError):
    """Raised when an exact rational computation would need a field extension."""

    code = "NotSplit"


class OutOfScope(PseudoalgError):
    code = "OutOfScope"


class NotSmall(OutOfScope):
    code = "NotSmall"


class NotSimpleEvidence(OutOfScope):
    code = "NotSimpleEvidence"


class ZeroComponentNotMatrix(OutOfScope):
    code = "ZeroComponentNotMatrix"


class NotSimpleZeroComponent(ZeroComponentNotMatrix):
    code = "NotSimpleZeroComponent"


class NoFirstComponent(OutOfScope):
    code = "NoFirstComponent"


class ConditionFailure(OutOfScope):
    code = "ConditionFailure"


class ModelMismatch(PseudoalgError):
    code = "ModelMismatch"
