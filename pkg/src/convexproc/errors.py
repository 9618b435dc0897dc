class DimensionError(ValueError):
    """Operands live in incompatible ambient spaces."""


class SplitNotRational(ArithmeticError):
    """A characteristic polynomial has a Q-irreducible factor whose roots lie
    partly in the nonnegative reals and partly outside, so the good/bad
    factorization cannot be carried out over the rationals."""


class FriendInfeasible(ValueError):
    """The subspace handed to the friend construction is not output-nulling
    controlled invariant."""


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it relies on."""
