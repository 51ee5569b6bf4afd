"""
revolve
Minimum-energy points and equilibrium measures on surfaces of revolution.
"""

__version__ = "1.0.0"
__author__ = "revolve developers"
