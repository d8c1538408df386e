"""conclab - concentration of empirical distribution functions.

This package provides empirical CDF metrics, Hopf-Lax operators, Poincare and
log-Sobolev constant criteria, Wigner spectral measures and a seeded Monte
Carlo verifier for the explicit concentration bounds built on them.
"""

__version__ = "0.1.0"
