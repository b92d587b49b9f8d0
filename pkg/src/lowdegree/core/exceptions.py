# Exceptions raised across the lowdegree package.

class LowDegreeError(Exception):
    '''Base class for all errors raised by the testbench.'''
    pass

class InvalidInputError(LowDegreeError, ValueError):
    """Exception raised for malformed objects or parameters."""
    pass

class NotAChannelError(InvalidInputError):
    """Exception raised when a map is not completely positive and trace preserving."""
    pass

class NotUnitaryError(InvalidInputError):
    """Exception raised when an operator is not unitary."""
    pass

class NotBooleanError(InvalidInputError):
    """Exception raised when a function is not {-1, 1}-valued."""
    pass

class UnboundedFunctionError(InvalidInputError):
    """Exception raised when a function leaves [-1, 1]."""
    pass

class DegreeExceededError(InvalidInputError):
    """Exception raised when an object has larger degree than declared."""
    pass

class CapExceededError(LowDegreeError):
    """Exception raised when a dense or enumeration cap would be exceeded."""
    pass

class BudgetExceededError(LowDegreeError):
    """Exception raised when an oracle runs out of queries."""
    pass

class InvariantViolationError(LowDegreeError):
    """Exception raised when a checked mathematical invariant fails."""
    pass

class ConfigError(LowDegreeError):
    """Exception raised for invalid experiment configurations."""
    pass
