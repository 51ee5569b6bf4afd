"""
Equilibrium measure module for revolve.
"""

from .quadratic import (
    quadratic_energy, potential, potential_field, frostman_check, lift_measure, lifted_energy,
)
from .solver import EquilibriumSolver, project_onto_simplex, solve_equilibrium, solve_on_curve, wolfe_gap
from .support import support_estimate, wrapped_angles

__all__ = [
    'quadratic_energy', 'potential', 'potential_field', 'frostman_check', 'lift_measure', 'lifted_energy',
    'EquilibriumSolver', 'project_onto_simplex', 'solve_equilibrium', 'solve_on_curve', 'wolfe_gap',
    'support_estimate', 'wrapped_angles',
]
