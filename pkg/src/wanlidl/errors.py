"""Exception types shared across the package."""


class NotPrimeError(ValueError):
    """The requested characteristic is not a prime number."""


class EvenCharacteristicError(ValueError):
    """Characteristic 2 is rejected; all computations here need q odd."""


class TooLargeForTableModeError(ValueError):
    """Extension fields are table-backed and capped at q <= 2^16."""


class NotADivisorError(ValueError):
    """The subgroup order d must divide q - 1."""


class ZeroDirectionError(ValueError):
    """Difference rows are only defined for a nonzero direction."""


class NotAPermutationError(ValueError):
    """The fast binomial engine requires a permutation instance."""


class NotInSubgroupError(ValueError):
    """A supplied element must lie in the order-d subgroup H."""


class IdenticalSubgroupValuesError(ValueError):
    """The cross-class identity check needs two distinct subgroup values."""


class WrongCongruenceError(ValueError):
    """The field order does not satisfy the required congruence class."""


class NotAdmissibleError(ValueError):
    """The prime fails the sweep's admissibility (gcd) condition."""
