"""Exception hierarchy for iterstbc."""


class IterStbcError(Exception):
    """Base class for every error raised by the library."""


class FieldSpecError(IterStbcError):
    """A field specification failed validation."""


class FieldMismatchError(IterStbcError):
    """Operands live in different fields."""


class ZeroDivisionFieldError(IterStbcError, ZeroDivisionError):
    """Inversion of the zero element."""


class AlgebraError(IterStbcError):
    """Malformed cyclic algebra or algebra element."""


class AssumptionError(AlgebraError):
    """The closure assumptions on tau and theta do not hold."""


class BasisError(AlgebraError):
    """Basis generators are dependent or malformed."""


class CatalogError(IterStbcError):
    """Unknown code name or invalid override."""


class BudgetExceededError(IterStbcError):
    """An enumeration would exceed the configured budget."""


class RankDeficientError(IterStbcError):
    """The real lattice generator is not of full rank."""


class ResidueError(IterStbcError):
    """Residue computation outside its supported range."""


class ConfigError(IterStbcError):
    """Configuration file missing or invalid."""


class OutputError(IterStbcError):
    """A report or CSV could not be written."""
