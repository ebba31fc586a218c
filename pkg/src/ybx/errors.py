"""Exception types shared across the package."""


class YbxError(Exception):
    """Base class for all library errors."""


class UnboundParam(YbxError):
    pass


class DivisionByZero(YbxError):
    pass


class ExhaustedRetries(YbxError):
    pass


class ParseError(YbxError):
    pass


class BackendMismatch(YbxError):
    pass


class DimensionMismatch(YbxError):
    pass


class RankDeficient(YbxError):
    pass


class SingularMatrix(YbxError):
    pass


class UnfactoredSpectrum(YbxError):
    pass


class GeneratorOutOfRange(YbxError):
    pass


class NotMonomial(YbxError):
    pass


class NotGroupType(YbxError):
    pass


class LevelMismatch(YbxError):
    pass


class ZeroMu(YbxError):
    pass


class NotAnAutomorphism(YbxError):
    pass


class NotChargeConserving(YbxError):
    pass


class NotDiagonal(YbxError):
    pass


class UnsupportedRank(YbxError):
    pass


class ConstraintViolated(YbxError):
    pass


class UnknownId(YbxError):
    pass


class SizeCeiling(YbxError):
    pass
