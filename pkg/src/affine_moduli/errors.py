"""Exception hierarchy. Every error is also a ValueError so callers can catch broadly."""


class AffineModuliError(ValueError):
    pass


class InvalidMapError(AffineModuliError):
    """Singular or non-finite linear map."""


class InvalidGaugeError(AffineModuliError):
    """Shear/scale gauge with c == 0."""


class DomainError(AffineModuliError):
    """Argument outside the documented parameter domain."""


class RankDeficientError(AffineModuliError):
    """Ricci tensor is not invertible where an inverse is needed."""


class WrongRankError(AffineModuliError):
    pass


class WrongSignatureError(AffineModuliError):
    pass


class CanonicalizationError(AffineModuliError):
    """Residual check failed after normalization; indicates a numerical defect."""


class FlatInputError(AffineModuliError):
    pass


class MembershipError(AffineModuliError):
    """Type B symbol is not in the expected stratum."""
