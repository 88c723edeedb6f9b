"""Version information for alexdec."""

__version__ = "0.3.0"
__author__ = "alexdec contributors"
__date__ = "October 2026"
