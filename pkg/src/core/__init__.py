"""
Core module for revolve.
Contains configuration, models, and exceptions.
"""
