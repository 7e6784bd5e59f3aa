"""Exception taxonomy shared by all subpackages."""


class SbiError(Exception):
    """Base class for all package errors."""


class ConfigurationError(SbiError):
    """Invalid static configuration (distribution parameters, specs, CLI configs)."""


class ContractError(SbiError):
    """A call violated an operation's preconditions (shape/name mismatches etc.)."""


class NumericError(SbiError):
    """A numeric failure at runtime (non-finite values, exhausted budgets)."""
