class SeqRxError(Exception):
    """Base class of every error raised by seqrx."""


class CutoffTooSmall(SeqRxError, ValueError):
    """The Fock cutoff leaks more probability mass than the leakage tolerance."""


class BudgetExceeded(SeqRxError, ValueError):
    """A simulation would need more amplitudes than the configured budget."""


class DimensionMismatch(SeqRxError, ValueError):
    """Two operands live in spaces of different dimension."""


class InvalidState(SeqRxError, ValueError):
    """A state or density matrix violates its normalization or positivity."""


class DegenerateBranch(SeqRxError, ArithmeticError):
    """A measurement branch has (numerically) zero probability."""


class InvalidParams(SeqRxError, ValueError):
    """Parameters outside their documented range."""


class UnknownFamily(InvalidParams):
    """A state family tag that seqrx does not know."""


class UnsupportedFamily(InvalidParams):
    """A known state family that the requested operation does not handle."""


class NotPositiveSemidefinite(SeqRxError, ArithmeticError):
    """A Gram matrix has an eigenvalue below the conditioning floor."""


class IndexOutOfRange(SeqRxError, IndexError):
    """A message index outside 1..M."""


class NumericalCollapse(SeqRxError, ArithmeticError):
    """A renormalization denominator vanished."""


class InvalidOperator(SeqRxError, ValueError):
    """An operator is not an effect (0 <= operator <= I)."""


class NotAProjector(InvalidOperator):
    """An operator is not a Hermitian idempotent."""


class EnumerationTooLarge(SeqRxError, ValueError):
    """An exact enumeration would exceed the configured limit."""
