"""Classical modular polynomials via deformations of isogeny diamonds and CRT."""

__version__ = "0.1.0"
