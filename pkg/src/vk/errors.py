"""Exception hierarchy shared by every module."""


class VkError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class AssociativityViolation(VkError):
    def __init__(self, x, y, z):
        super().__init__(f"(x*y)*z != x*(y*z) at x={x}, y={y}, z={z}")
        self.triple = (x, y, z)


class IndexOutOfRange(VkError):
    pass


class EmptyGeneratorSet(VkError):
    pass


class NotAMonoid(VkError):
    pass


class NotAGroup(VkError):
    pass


class NotAFiniteGroup(NotAGroup):
    pass


class NotAnIdeal(VkError):
    pass


class NotIdempotent(VkError):
    pass


class HClassNotGroup(VkError):
    pass


class BackendNotFinite(VkError):
    pass


class ZeroEntryInMatrixWithoutZero(VkError):
    pass


class DimensionMismatch(VkError):
    pass


class ZeroSandwichEntry(VkError):
    pass


class NotCompletelyZeroSimple(VkError):
    pass


class OwnerMismatch(VkError):
    pass


class HypothesisFails(VkError):
    pass


class UndecidableBase(VkError):
    pass


class NotPlainMAutomaton(VkError):
    pass


class NotReesWithZero(VkError):
    pass


class NotCompletelySimpleOrZeroSimple(VkError):
    pass


class ZeroInInitialOrTerminalSet(VkError):
    pass


class AlphabetMismatch(VkError):
    pass


class Inconclusive(VkError):
    """A bounded search hit its budget before reaching a verdict."""
