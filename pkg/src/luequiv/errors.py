"""Exception hierarchy.

Input problems derive from :class:`InputError` (a ``ValueError``); failures to
reach a numerical tolerance derive from :class:`NumericalFailure`.
"""


class LUError(Exception):
    pass


class InputError(LUError, ValueError):
    pass


class NumericalFailure(LUError, ArithmeticError):
    pass


class NotSquare(InputError):
    pass


class NotHermitian(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotUnitary(InputError):
    def __init__(self, message, party=None):
        super().__init__(message)
        self.party = party


class InvalidPartySet(InputError):
    pass


class NotBipartite(InputError):
    pass


class NotTripartite(InputError):
    pass


class SplitMismatch(InputError):
    pass


class ReducedMismatch(InputError):
    """The two states do not share the reduced matrix on the other parties."""


class WitnessMismatch(InputError):
    """The supplied partial witness does not map one reduced state onto the other."""


class DimensionTooLarge(InputError):
    pass


class FileFormatError(InputError):
    pass


class ConvergenceError(NumericalFailure):
    pass


class ReconstructionFailed(NumericalFailure):
    pass
