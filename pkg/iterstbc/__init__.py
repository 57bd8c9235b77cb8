"""iterstbc - Iterated space-time block codes from cyclic division algebras."""

__version__ = "0.1.0"
