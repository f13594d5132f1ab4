"""
CV Teleportation Toolkit
Teleportation fidelities and optimal local Gaussian CP maps for Gaussian channels
"""

__version__ = "0.1.0"
