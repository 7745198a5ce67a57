"""Fatou coordinates, dynamic theta functions and invariants of parabolic germs."""

from ._ptheta import (  # noqa: F401
    FatouError,
    Fatou,
    FractalError,
    Germ,
    GermError,
    InputError,
    InvariantError,
    QuadratureError,
    Theta,
    ThetaError,
    acceptance,
    epsilons,
    fractal_theta,
    horn_coefficients,
    minkowski,
    model,
    orbit,
    polynomial,
    prenormalize,
    residual_invariant,
    theta_invariant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
