"""Exception hierarchy shared by every module of the package."""


class CartierError(ValueError):
    """Base class; every domain error is also a ``ValueError``."""


class NonPrime(CartierError):
    pass


class EvenCharacteristic(CartierError):
    pass


class FieldTooLarge(CartierError):
    pass


class ContextMismatch(CartierError):
    pass


class NotAPthPower(CartierError):
    pass


class BadDivisor(CartierError):
    pass


class OddS(CartierError):
    pass


class BadM(CartierError):
    pass


class BadR(CartierError):
    pass


class NotSquarefree(CartierError):
    pass


class GenusTooLarge(CartierError):
    pass


class DegreeTooLarge(CartierError):
    pass


class SearchTooLarge(CartierError):
    pass


class BasisNotStable(CartierError):
    """A Cartier image left the span of the candidate differential basis."""

    def __init__(self, monomial, column=None):
        self.monomial = monomial
        self.column = column
        where = "" if column is None else f" (image of basis element {column})"
        super().__init__(f"monomial x^{monomial[0]}*y^{monomial[1]} outside basis{where}")
