"""Exception types raised across the package."""


class CstarhomError(Exception):
    """Base class for all errors raised by this package."""


class AlgebraMismatch(CstarhomError):
    """Operands belong to different algebras."""


class IndexOutOfRange(CstarhomError):
    """Block or matrix-unit index outside the algebra's shape."""


class NotHermitian(CstarhomError):
    """Spectral calculus requested on a non-Hermitian element."""


class NotUCP(CstarhomError):
    """A map failed the unital completely positive precondition."""


class NotCompletelyPositive(CstarhomError):
    """A map failed the complete-positivity precondition."""


class NotTracePreserving(CstarhomError):
    """A map failed the trace-preservation precondition."""


class NotSingleBlock(CstarhomError):
    """An operation restricted to full matrix algebras got a direct sum."""


class NotATensorAlgebra(CstarhomError):
    """Tensor-factor structure required but not recorded on the algebra."""


class NotADensity(CstarhomError):
    """Claimed density operator is not positive with unit trace."""


class NotAProjection(CstarhomError):
    """Claimed projection fails the idempotence/self-adjointness check."""


class ZeroProjection(CstarhomError):
    """The zero projection carries no uniform state."""


class MultiplicityTooSmall(CstarhomError):
    """Stinespring representation too small to admit the required isometry."""


class NoUnitalEmbedding(CstarhomError):
    """No unital *-homomorphism exists between the given algebras."""


class ParseError(CstarhomError):
    """Malformed input file."""


class InternalSpectralError(CstarhomError):
    """Two internally redundant computations disagreed beyond tolerance."""
