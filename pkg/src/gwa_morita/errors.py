"""Exception hierarchy shared by the whole package."""


class GWAError(Exception):
    """Base class for every error raised by gwa_morita."""


class BasisMismatch(GWAError):
    """Two scalars live over different declared bases."""


class BasisError(GWAError, ValueError):
    """A basis declaration is malformed (bad symbols or products table)."""


class UnsupportedProduct(GWAError):
    """A product was requested over a basis without a multiplication table."""


class NotInvertible(GWAError, ArithmeticError):
    """The scalar is nonzero but has no inverse in the declared algebra."""


class DegenerateRoots(GWAError, ValueError):
    """An operation requiring pairwise distinct roots got a repeated root."""


class PreconditionViolated(GWAError, ValueError):
    pass


class InternalAssertion(GWAError, AssertionError):
    """An identity the theory guarantees failed; this indicates a bug."""


class InternalRankFailure(InternalAssertion):
    pass


class InternalBridgeFailure(InternalAssertion):
    pass


class Cn3Violated(PreconditionViolated):
    pass


class NormalizeFirst(PreconditionViolated):
    """The 3x3 matrix has determinant -1 and must be normalized first."""


class NotUnimodular(GWAError, ValueError):
    pass
