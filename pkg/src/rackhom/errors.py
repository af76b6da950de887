"""Exception types raised across the package."""


class RackError(ValueError):
    """Base class for invalid-input errors."""


class OutOfRangeEntry(RackError):
    def __init__(self, a, b, value, size):
        self.a, self.b, self.value = a, b, value
        super().__init__(f"table[{a}][{b}] = {value} is outside 0..{size - 1}")


class AxiomIViolation(RackError):
    """Some right translation f_b is not a permutation."""

    def __init__(self, b):
        self.b = b
        super().__init__(f"column {b} is not a permutation (axiom (i) fails)")


class AxiomIIViolation(RackError):
    """The rack identity fails at the witness triple (a, b, c)."""

    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        super().__init__(f"rack identity fails at (a, b, c) = ({a}, {b}, {c})")


class NonMonic(RackError):
    pass


class NonUnitConstantTerm(RackError):
    pass


class UnknownSpec(RackError):
    pass


class GroupTableInvalid(RackError):
    pass


class NotAQuandle(RackError):
    pass


class NotHomogeneous(RackError):
    pass


class NotCoprime(RackError):
    pass


class NotDivisibleBy4(RackError):
    pass


class NotPrime(RackError):
    pass


class DegreeZero(RackError):
    pass


class DegreeOutOfRange(RackError):
    pass


class DegreeTooLarge(RackError):
    pass


class IndexOutOfRange(IndexError):
    pass


class ResourceCapExceeded(RuntimeError):
    """A chain group is larger than the configured basis-size cap."""

    def __init__(self, degree, basis_size, cap):
        self.degree, self.basis_size, self.cap = degree, basis_size, cap
        super().__init__(
            f"basis of degree {degree} has {basis_size} elements (cap {cap})")
