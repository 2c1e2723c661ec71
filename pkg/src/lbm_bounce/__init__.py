"""Linear D2Q9 MRT lattice Boltzmann with analysed bounce-back wall closures."""
from .lattice import SchemeParams, ParameterError

__version__ = "0.1.0"
__all__ = ["SchemeParams", "ParameterError"]
