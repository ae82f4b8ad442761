"""Phase diagram in the (t0, t1) plane.

Valid parameters: for t1 >= 0, 0 < t0 < t0_crit(t1) with 0 <= t1 < 1/4;
for t1 < 0, membership in the region bounded by the lower cusp curve with
-3/4 < t1 < 0.  The map coefficient r is the smallest positive root of a
degree-10 even polynomial; together with a0 it gives a change of variables
(t0, t1) <-> (r, a0) used throughout.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import numerics
from .conformal import RationalMap, H_re

__all__ = [
    "Region",
    "PhasePoint",
    "ConformalCoeffs",
    "PhaseError",
    "OutsideRegionError",
    "poly_p",
    "poly_p_tilde",
    "poly_p1",
    "conformal_radius",
    "a0_of",
    "coeffs",
    "inverse_map",
    "t0_crit",
    "t0_crit_minus",
    "gamma_c",
    "big_gamma_c",
    "gamma_c_minus_point",
    "gamma_c_minus_a0",
    "tau1_width",
    "classify",
    "transition_constants",
    "small_r_cubic_constant",
]

# half-width of the band in the classifying scalar inside which a point is
# reported as sitting on a critical curve (deterministic labels for tests)
CRITICAL_BAND = 1e-9


class PhaseError(Exception):
    pass


class OutsideRegionError(PhaseError):
    """The parameter point has no valid map coefficient."""


class Region(enum.Enum):
    """Classification of a parameter point.

    THREE_CUT / ONE_CUT: skeleton has three arcs / one arc.
    GAMMA_C: on the upper cusp curve (boundary cusp, t1 >= 0).
    GAMMA_C_MINUS: on the lower cusp curve (t1 < 0).
    CUSP_CRITICAL: on the mother-body transition curve (branch-point
    coalescence for t1 > 0; vanishing junction width for t1 < 0).
    OUTSIDE: no valid parametrization.
    """

    THREE_CUT = "three_cut"
    ONE_CUT = "one_cut"
    GAMMA_C = "gamma_c"
    GAMMA_C_MINUS = "gamma_c_minus"
    CUSP_CRITICAL = "cusp_critical"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PhasePoint:
    t0: float
    t1: float


@dataclass(frozen=True)
class ConformalCoeffs:
    """Map coefficients at a parameter point.

    ``multiplicity`` is the multiplicity of r as a root of the coefficient
    polynomial (2 exactly on the cusp curve, else 1).
    """

    r: float
    a0: float
    multiplicity: int = 1

    @property
    def a1(self):
        return 2 * self.r * self.a0

    @property
    def a2(self):
        return self.r ** 2

    def rational_map(self):
        return RationalMap(self.r, self.a0)


# ----------------------------------------------------------------------
# coefficient polynomials
# ----------------------------------------------------------------------

def poly_p(t0, t1):
    """Coefficients (leading first) of the degree-10 even polynomial
    whose smallest positive root is the map coefficient r."""
    return np.array([
        128.0, 0.0,
        -124.0, 0.0,
        64 * t0 - 16 * t1 + 36, 0.0,
        16 * t1 ** 2 + 8 * t1 - 28 * t0 - 3, 0.0,
        t0 * (2 - 8 * t1), 0.0,
        t0 ** 2,
    ])


def poly_p_tilde(t0, t1):
    """Coefficients of p(sqrt(x)): the quintic in x = r^2."""
    return np.array([
        128.0,
        -124.0,
        -16 * t1 + 64 * t0 + 36,
        16 * t1 ** 2 + 8 * t1 - 28 * t0 - 3,
        t0 * (2 - 8 * t1),
        t0 ** 2,
    ])


def poly_p1(t1):
    """The cubic factor of the quintic's discriminant; its largest root
    is the critical time t0_crit(t1)."""
    return np.array([
        8192.0,
        192 * (64 * t1 - 7),
        -48 * (1 - 4 * t1) ** 2,
        (108 * t1 - 11) * (4 * t1 - 1) ** 3,
    ])


def _smallest_positive_root(coeffs):
    roots = numerics.poly_roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-8 * (1 + np.abs(roots))].real
    pos = np.sort(real[real > 1e-13])
    if len(pos) == 0:
        raise OutsideRegionError("no positive root: parameter point outside the valid region")
    x = pos[0]
    mult = int(np.sum(np.isclose(pos, x, rtol=0, atol=1e-12 + 1e-6 * (1 + x))))
    if mult > 1:
        x = float(np.real(numerics.refine_multiple_root(coeffs, x, mult)))
    return x, mult


def conformal_radius(t0, t1):
    """Smallest positive root r of the coefficient polynomial.

    Simple inside the phase region; on the cusp curve it is a double root,
    restored to full accuracy by polishing on the derivative.
    """
    x, mult = _smallest_positive_root(poly_p_tilde(t0, t1))
    return float(np.sqrt(x))


def a0_of(t0, t1, r):
    """a0 = (1 - 4r^2 - sqrt((1-4r^2)^2 - 4 t1)) / 2 (the branch vanishing
    at t1 = 0)."""
    disc = (1 - 4 * r * r) ** 2 - 4 * t1
    if disc < 0:
        raise OutsideRegionError("negative discriminant for a0: outside validity")
    return float((1 - 4 * r * r - np.sqrt(disc)) / 2)


def coeffs(t0, t1):
    """Map coefficients (r, a0) with the root multiplicity flag."""
    x, mult = _smallest_positive_root(poly_p_tilde(t0, t1))
    r = float(np.sqrt(x))
    return ConformalCoeffs(r=r, a0=a0_of(t0, t1, r), multiplicity=mult)


def inverse_map(r, a0):
    """(t0, t1) from (r, a0): t0 = r^2(1-4a0^2) - 2r^4,
    t1 = (1-4r^2)a0 - a0^2."""
    return r * r * (1 - 4 * a0 * a0) - 2 * r ** 4, (1 - 4 * r * r) * a0 - a0 * a0


# ----------------------------------------------------------------------
# critical curves
# ----------------------------------------------------------------------

def t0_crit(t1):
    """Largest real root of the discriminant cubic: the cusp time for
    0 <= t1 < 1/4.  Decreasing in t1; equals 1/8 at t1 = 0 and 0 at 1/4."""
    if not (0 <= t1 <= 0.25):
        raise PhaseError("t0_crit defined for 0 <= t1 <= 1/4")
    c = poly_p1(t1)
    roots = numerics.poly_roots(c)
    real = roots[np.abs(roots.imag) < 1e-7 * (1 + np.abs(roots))].real
    x = float(np.max(real))
    mult = int(np.sum(np.isclose(real, x, rtol=0, atol=1e-6 * (1 + abs(x)))))
    if mult > 1:
        x = float(np.real(numerics.refine_multiple_root(c, x, mult)))
    return max(x, 0.0)


def t0_crit_minus(t1):
    """Cusp time for -3/4 < t1 < 0, from the lower cusp curve
    t0 = -16 s^6 + 6 s^4, t1 = -12 s^4 + 6 s^2 - 3/4."""
    if not (-0.75 < t1 < 0):
        raise PhaseError("t0_crit_minus defined for -3/4 < t1 < 0")
    s2 = (3 - 2 * np.sqrt(-3 * t1)) / 12
    return float(-16 * s2 ** 3 + 6 * s2 ** 2)


def gamma_c(s):
    """Mother-body transition curve for t1 > 0, parametrized by s in
    [0, 1/2]: (t0, t1) = (-2 s^12 + s^6 - 9 s^10, 3/2 s^2 - 9/4 s^4 - 6 s^8);
    the image of (r, a0) = (s^3, 3 s^2 / 2)."""
    s = np.asarray(s, dtype=float)
    if np.any((s < 0) | (s > 0.5)):
        raise PhaseError("gamma_c parameter must lie in [0, 1/2]")
    return -2 * s ** 12 + s ** 6 - 9 * s ** 10, 1.5 * s ** 2 - 2.25 * s ** 4 - 6 * s ** 8


def big_gamma_c(s):
    """Cusp curve for t1 > 0: (t0, t1) = (-6 s^4 + 4 s^3, 4 s^3 - 3 s^2 + 1/4),
    s in [0, 1/2]; the image of (r, a0) = (s, (1-2s)/2)."""
    s = np.asarray(s, dtype=float)
    if np.any((s < 0) | (s > 0.5)):
        raise PhaseError("cusp-curve parameter must lie in [0, 1/2]")
    return -6 * s ** 4 + 4 * s ** 3, 4 * s ** 3 - 3 * s ** 2 + 0.25


def gamma_c_minus_point(s):
    """Lower cusp curve: (t0, t1) = (-16 s^6 + 6 s^4, -12 s^4 + 6 s^2 - 3/4),
    s in (0, 1/2]; the image of (r, a0) = (s, -(1-4s^2)/2)."""
    s = np.asarray(s, dtype=float)
    if np.any((s <= 0) | (s > 0.5)):
        raise PhaseError("lower-cusp parameter must lie in (0, 1/2]")
    return -16 * s ** 6 + 6 * s ** 4, -12 * s ** 4 + 6 * s ** 2 - 0.75


def tau1_width(r, a0):
    """Junction strip width: Re of the primitive difference between the
    positive critical point and its simple partner -r/w0^2.

    Positive in the three-cut region; its vanishing locus is the
    mother-body transition curve for t1 < 0.
    """
    m = RationalMap(r, a0)
    ws = np.roots([1.0, 0.0, -2 * a0, -2 * r])
    w0 = float(ws[np.abs(ws.imag) < 1e-9].real.max())
    return float(H_re(m, w0) - H_re(m, -r / w0 ** 2))


def gamma_c_minus_a0(r, tol=1e-14):
    """The a0 < 0 where the junction width vanishes at fixed r.

    Locates the mother-body transition for negative t1 by bisecting the
    strip width over (lower-cusp bound, 0); the printed closed-form
    implicit equation serves as an independent cross-check only.
    """
    if not (0 < r < 0.5):
        raise PhaseError("need 0 < r < 1/2")
    lo = -(1 - 4 * r * r) / 2 * (1 - 1e-9)
    return numerics.real_root_in(lambda a: tau1_width(r, a), lo, -1e-12, xtol=tol)


def gamma_c_minus_equation(r, a0, corrected=False):
    """Residual of the closed-form implicit equation for the lower
    mother-body curve, in terms of (r, a0) and the real critical point w0.

    ``corrected=False`` evaluates the equation exactly as printed.  The
    printed polynomial bracket drops the term 3*a0*r*(4*a0 + 5*r^2)*w0^2
    relative to the exact reduction of the primitive difference (and is
    therefore nonzero on the true transition curve once r is not small);
    ``corrected=True`` restores that term, after which the residual
    vanishes on the curve to rounding accuracy.
    """
    ws = np.roots([1.0, 0.0, -2 * a0, -2 * r])
    w0 = float(ws[np.abs(ws.imag) < 1e-9].real.max())
    bracket = ((30 * a0 ** 2 * r ** 2 + 4 * a0 ** 3) * w0 ** 3
               + r * a0 * (r * r * (12 - 8 * a0) + 10 * a0) * w0 ** 2
               + 6 * a0 * r * r * (5 - r * r) * w0
               + 12 * r ** 3 + 3 * r ** 5)
    if corrected:
        bracket += 3 * a0 * r * (4 * a0 + 5 * r * r) * w0 ** 2
    return ((r + w0 ** 3) * bracket
            + 3 * w0 ** 6 * r * r * (1 - 4 * a0 * a0 - 2 * r * r) * np.log(w0 ** 3 / r))


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------

def classify(t0, t1, band=CRITICAL_BAND):
    """Region label of a parameter point; see :class:`Region`."""
    if t0 <= 0 or not (-0.75 < t1 < 0.25):
        return Region.OUTSIDE
    if t1 >= 0:
        tc = t0_crit(t1)
        if abs(t0 - tc) <= band:
            return Region.GAMMA_C
        if t0 > tc:
            return Region.OUTSIDE
        c = coeffs(t0, t1)
        disc = 8 * c.a0 ** 3 - 27 * c.r ** 2
        if abs(disc) <= band:
            return Region.CUSP_CRITICAL
        return Region.THREE_CUT if disc < 0 else Region.ONE_CUT
    tc = t0_crit_minus(t1)
    if abs(t0 - tc) <= band:
        return Region.GAMMA_C_MINUS
    if t0 > tc:
        return Region.OUTSIDE
    c = coeffs(t0, t1)
    tau1 = tau1_width(c.r, c.a0)
    if abs(tau1) <= band:
        return Region.CUSP_CRITICAL
    return Region.THREE_CUT if tau1 > 0 else Region.ONE_CUT


# ----------------------------------------------------------------------
# third-order transition constants
# ----------------------------------------------------------------------

def transition_constants():
    """Leading cubic coefficients of the two mother-body curves at the
    origin: (8/27, 8*C0/(C0-2)^3) with C0 the root of the printed
    transcendental equation on [1, 1.2].

    Asserts the printed inequality 8/27 < |8*C0/(C0-2)^3|.  See
    :func:`small_r_cubic_constant` for the constant implied by the exact
    junction-width asymptotics.
    """
    f = lambda c: (1 + c) * (-24 + 22 * c - c * c + c ** 3) + 6 * c * c * np.log(c)
    c0 = numerics.real_root_in(f, 1.0, 1.2)
    second = 8 * c0 / (c0 - 2) ** 3
    assert 8 / 27 < abs(second)
    return 8 / 27, second


def small_r_cubic_constant():
    """Small-r limit constant of the lower mother-body curve from the
    exact width asymptotics: the root of C^3 + 6C^2 + 3C - 2 + 6C*log C
    on (0, 1).  With it, w0 ~ (C r)^(1/3) and a0 ~ (C-2)/(2 C^(1/3)) r^(2/3)
    along the curve as r -> 0."""
    f = lambda c: c ** 3 + 6 * c * c + 3 * c - 2 + 6 * c * np.log(c)
    return numerics.real_root_in(f, 0.3, 0.9)
