"""Numerical toolkit for the cubic normal matrix model.

The package computes, at desk scale, the objects attached to the normal
matrix ensemble with potential V(z) = z^3/3 + t1*z and area parameter t0:

* ``phase``      -- the (t0, t1) phase diagram, its critical curves and the
                    (r, a0) change of variables;
* ``conformal``  -- the rational map h(w) parametrizing the eigenvalue
                    domain boundary, its critical points, area and moments;
* ``spectral``   -- the cubic spectral curve F(xi, z) = 0, its labeled
                    branches, discriminant, branch and singular points;
* ``motherbody`` -- the one-dimensional skeleton measure: support arcs,
                    densities, masses, potentials and strip widths;
* ``rh``         -- g-functions, phase functions, the global-parametrix
                    first row and the strong asymptotics of P_{n,n};
* ``mop``        -- small-n multiple orthogonal polynomials from Airy-weight
                    orthogonality and their zero statistics;
* ``numerics``   -- shared kernels (roots, bracketed solves, contour
                    quadrature, complex Airy function).

Precision is a global run setting, see :func:`nmm.set_precision`.
"""

from .precision import set_precision, get_precision
from . import numerics, phase, conformal, spectral, motherbody, rh, mop

__all__ = [
    "set_precision",
    "get_precision",
    "numerics",
    "phase",
    "conformal",
    "spectral",
    "motherbody",
    "rh",
    "mop",
]

__version__ = "0.1.0"
