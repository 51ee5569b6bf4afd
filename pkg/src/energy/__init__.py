"""
Discrete energy module for revolve.
"""

from .pair_energy import (
    pair_energy, pair_energy_terms, energy_gradient, counting_measure, counting_energy, mode_for_kernel,
)
from .optimizer import ConfigurationOptimizer, optimize_config, restart_generator

__all__ = [
    'pair_energy', 'pair_energy_terms', 'energy_gradient', 'counting_measure', 'counting_energy',
    'mode_for_kernel', 'ConfigurationOptimizer', 'optimize_config', 'restart_generator',
]
