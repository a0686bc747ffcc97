"""Exception types raised by :mod:`chainent`."""


class ChainEntError(Exception):
    """Base class for all package errors."""


class QuadratureError(ChainEntError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class InvalidCaseError(ChainEntError, ValueError):
    """Closed-form kernel requested for parameters it does not cover."""


class SeriesDomainError(ChainEntError, ValueError):
    """A series expansion was requested outside its radius of convergence."""


class IncompleteKernelError(ChainEntError, ValueError):
    """The correlation kernel lacks offsets needed for the requested block."""


class NumericalDegeneracyError(ChainEntError, ArithmeticError):
    """Singular values failed to pair up, or a mode value left [0, 1]."""


class NeedMoreEigenvaluesError(ChainEntError, ValueError):
    """Truncated spectrum does not carry enough weight for the request."""

    def __init__(self, message, achieved_weight):
        super().__init__(f"{message} (cumulative weight {achieved_weight:.15g})")
        self.achieved_weight = achieved_weight


class DegenerateGroundStateError(ChainEntError, ArithmeticError):
    """The lowest two energies are closer than the degeneracy threshold."""

    def __init__(self, message, energies):
        e0, e1 = energies
        super().__init__(f"{message}: E0={e0:.17g}, E1={e1:.17g}")
        self.energies = energies


class BetheSolverError(ChainEntError, ArithmeticError):
    """Newton / fixed-point iteration for the Bethe equations did not converge."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


class InvalidRootError(ChainEntError, ArithmeticError):
    """Bethe solution with coincident momenta."""


class UseEDPathError(ChainEntError, ValueError):
    """Permutation sum too large; use the exact-diagonalization state instead."""


class BlockTooLargeError(ChainEntError, ValueError):
    """Reduced density matrix would exceed the memory guard."""


class InsufficientDataError(ChainEntError, ValueError):
    """Too few points for the requested fit."""


class DomainError(ChainEntError, ValueError):
    """Argument outside the mathematical domain of the operation."""
