"""Block entanglement in XY and XXZ spin chains."""

__version__ = "0.1.0"
