"""Bound-state energies of one-dimensional quantum wells via transfer coefficients."""
from .errors import (ConvergenceError, DomainError, FiniteWallError, GeometryError,
                     GridError, InfiniteWallError, MismatchError, OverlapError,
                     RangeError, SchemaError, WellError)
from .oracle import GridConfig, finite_difference_levels
from .potential import (INFINITE, Delta, Rect, WellSpec, from_dimensionless,
                        load_well, mirror, validate, well_from_dict, well_to_dict)
from .scattering import (PeriodicCoefficients, TransferCoefficients, bloch_cos_rect,
                         compose, delta_coefficients, interior_coefficients,
                         periodic_coefficients, rect_chain_coefficients,
                         rect_coefficients, shift)
from .spectrum import (SolverConfig, SpectrumResult, delta_well_residual,
                       find_bound_states, plane_bottom_infinite_levels,
                       plane_bottom_levels, spectrum_residual,
                       spectrum_residual_infinite, transmission_pole_residual)

__version__ = "0.1.0"
