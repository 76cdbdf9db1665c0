"""Library-wide numeric policy.

All case splits in the closed forms (parabolic D=0, conform-unitary
norm-discriminant 0, traceless dispatch) are exact in exact arithmetic;
floating point needs a declared band.  The band is relative to the scale
of the matrix at hand.
"""

DEGENERACY_TOL = 1e-10

# |D_A| below PARABOLIC_TOL * ||A||^2 routes exp/log through the D=0 series.
PARABOLIC_TOL = 1e-12

# Quadrature contract used by every internal integral.
QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-9


def set_degeneracy_tol(tol):
    """Override the degeneracy band (CLI --tol hooks in here)."""
    global DEGENERACY_TOL
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    DEGENERACY_TOL = float(tol)


def get_degeneracy_tol():
    return DEGENERACY_TOL
