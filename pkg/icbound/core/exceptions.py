# icbound/core/exceptions.py
"""
Custom exceptions
"""


class IcboundException(Exception):
    """Base exception for icbound"""
    pass


class NonPrime(IcboundException):
    """Field characteristic is not prime"""
    pass


class ReduciblePolynomial(IcboundException):
    """Field modulus is reducible or has the wrong degree"""
    pass


class NotPrimePower(IcboundException):
    """Order is not a prime power"""
    pass


class DimensionMismatch(IcboundException):
    """Matrix or subspace shapes are incompatible"""
    pass


class Infeasible(IcboundException):
    """Linear program has no feasible point"""
    pass


class Unbounded(IcboundException):
    """Linear program objective is unbounded"""
    pass


class TooLarge(IcboundException):
    """Input exceeds an exact-search limit"""
    pass


class BudgetExceeded(IcboundException):
    """Search or enumeration ran past its budget"""
    pass


class PreconditionViolated(IcboundException):
    """Operation called outside its hypotheses"""
    pass


class FieldTooSmall(IcboundException):
    """Field is too small for the requested construction"""
    pass


class NotCanonical(IcboundException):
    """Instance is not in digraph form (m = n and f = id)"""
    pass


class NotDecodable(IcboundException):
    """Receiver cannot decode from the given code"""
    pass


class NotADesign(IcboundException):
    """Incidence structure is not a t-design"""
    pass


class Inapplicable(IcboundException):
    """Theorem hypotheses do not hold for this input"""
    pass


class SchemeFailure(IcboundException):
    """A simulated receiver decoded a wrong value"""
    pass


class InstanceFormatError(IcboundException):
    """Input file is not a valid instance, design or matrix"""
    pass
