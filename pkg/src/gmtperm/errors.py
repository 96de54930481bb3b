"""Exception hierarchy shared by every module of the package."""


class GmtPermError(Exception):
    """Base class for all errors raised by gmtperm."""


# field construction and arithmetic
class NotPrime(GmtPermError, ValueError):
    pass


class ReducibleModulus(GmtPermError, ValueError):
    pass


class DegreeTooSmall(GmtPermError, ValueError):
    pass


class DivisionByZero(GmtPermError, ZeroDivisionError):
    pass


class LevelMismatch(GmtPermError, TypeError):
    pass


class InternalSubfieldViolation(GmtPermError, ArithmeticError):
    """A value that must lie in F_q did not; always an arithmetic bug."""


class LogOfZero(GmtPermError, ValueError):
    pass


class ZeroInput(GmtPermError, ValueError):
    pass


# linear algebra
class NotABasis(GmtPermError, ValueError):
    pass


class WrongLength(GmtPermError, ValueError):
    pass


# projective geometry
class ZeroVector(GmtPermError, ValueError):
    pass


# GMT machinery
class NotInMu(GmtPermError, ValueError):
    pass


class IndexOutOfRange(GmtPermError, IndexError):
    pass


class ReportsViolation(GmtPermError, AssertionError):
    """An exhaustive check found a counterexample to a proven identity."""


# permutation polynomial constructions
class BadR(GmtPermError, ValueError):
    pass


class NotBijection(GmtPermError, ValueError):
    pass


class NotPermutationOfFq(GmtPermError, ValueError):
    pass


class BadParams(GmtPermError, ValueError):
    pass


class WrongN(GmtPermError, ValueError):
    pass


class ZeroPoly(GmtPermError, ValueError):
    pass


class NonzeroConstantTerm(GmtPermError, ValueError):
    pass
