"""Foundation kernels: roots, bracketed solves, contour quadrature, Airy.

Everything here is pure and reentrant.  The heavy lifting is delegated to
numpy/scipy in binary64 mode and to mpmath in extended mode.
"""

from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import optimize, special
from scipy.integrate import quad_vec

from .precision import get_precision

__all__ = [
    "NumericsError",
    "NoBracketError",
    "ConvergenceError",
    "Path",
    "poly_roots",
    "cluster_roots",
    "refine_multiple_root",
    "real_root_in",
    "integrate",
    "airy_ai",
    "cubic_roots_batch",
]

# Roots closer than CLUSTER_SCALE*(1+|root|) are treated as one multiple root.
CLUSTER_SCALE = 1e-6

# Adaptive quadrature defaults: absolute tolerance and subdivision depth cap.
QUAD_ATOL = 1e-12
QUAD_DEPTH = 30

# |z| below which the reference Airy evaluation uses the Maclaurin series;
# above it the Poincare-type asymptotic expansion (with sector handling) is
# accurate to ~1e-13 relative in binary64.
AIRY_CROSSOVER = 8.0

OMEGA = np.exp(2j * np.pi / 3)


class NumericsError(Exception):
    """Base class for kernel failures."""


class NoBracketError(NumericsError):
    """The endpoints of a bracketed solve do not straddle a root."""


class ConvergenceError(NumericsError):
    """An iterative method hit its iteration/subdivision cap."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass
class Path:
    """Piecewise-linear integration contour through complex nodes.

    ``closed`` appends the first node at the end; ``samples_per_segment``
    is only a hint for routines doing fixed-order sampling.
    """

    nodes: list
    closed: bool = False
    samples_per_segment: int = 64

    def __post_init__(self):
        nodes = [complex(z) for z in self.nodes]
        if self.closed and nodes[0] != nodes[-1]:
            nodes = nodes + [nodes[0]]
        if len(nodes) < 2:
            raise ValueError("a path needs at least two nodes")
        for a, b in zip(nodes, nodes[1:]):
            if a == b:
                raise ValueError("consecutive path nodes must be distinct")
        self.nodes = nodes

    @classmethod
    def circle(cls, center, radius, n=64):
        th = 2 * np.pi * np.arange(n) / n
        pts = [center + radius * np.exp(1j * t) for t in th]
        return cls(pts, closed=True)

    def segments(self):
        return list(zip(self.nodes, self.nodes[1:]))


# ----------------------------------------------------------------------
# polynomial roots
# ----------------------------------------------------------------------

def poly_roots(coeffs, cluster=True):
    """All complex roots of a polynomial, leading coefficient first.

    Binary64 mode uses companion-matrix eigenvalues; extended mode runs an
    Aberth-Ehrlich iteration at 50 digits seeded by the binary64 roots.
    Roots are reported with multiplicity; nearby roots (within
    ``CLUSTER_SCALE*(1+|root|)``) are merged to their cluster mean so that
    genuine multiple roots are recognized.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or len(c) < 2:
        raise NumericsError("need a polynomial of degree >= 1")
    if c[0] == 0:
        raise NumericsError("zero leading coefficient")
    if get_precision() == "extended":
        roots = _aberth_roots(c)
    else:
        roots = np.roots(c)
    scale = np.max(np.abs(c))
    resid = np.abs(np.polyval(c, roots))
    if np.any(resid > 1e-6 * scale * (1 + np.abs(roots)) ** (len(c) - 1)):
        raise ConvergenceError("root residuals too large", residual=resid.max())
    if cluster:
        roots = cluster_roots(roots)
    return roots


def cluster_roots(roots, scale=CLUSTER_SCALE):
    """Replace groups of nearby roots by their arithmetic mean.

    Two roots belong to the same group when their distance is below
    ``scale*(1+|root|)``; each member of a group is replaced by the group
    mean, so multiplicities remain visible as repeated values.
    """
    roots = np.asarray(roots, dtype=complex).copy()
    n = len(roots)
    used = np.zeros(n, dtype=bool)
    out = roots.copy()
    for i in range(n):
        if used[i]:
            continue
        tol = scale * (1 + abs(roots[i]))
        group = [j for j in range(n) if not used[j] and abs(roots[j] - roots[i]) <= tol]
        if len(group) > 1:
            m = np.mean(roots[group])
            for j in group:
                out[j] = m
                used[j] = True
    return out


def refine_multiple_root(coeffs, x0, multiplicity):
    """Polish a root of known multiplicity m by solving p^(m-1) = 0.

    A root of multiplicity m of p is a simple root of the (m-1)-st
    derivative, so Newton on that derivative restores full accuracy lost to
    the m-th-root sensitivity of the companion solve.
    """
    c = np.asarray(coeffs, dtype=complex)
    d = np.polyder(c, multiplicity - 1)
    dd = np.polyder(d)
    x = complex(x0)
    for _ in range(60):
        fx = np.polyval(d, x)
        dfx = np.polyval(dd, x)
        if dfx == 0:
            break
        step = fx / dfx
        x -= step
        if abs(step) < 1e-16 * (1 + abs(x)):
            break
    return x


def _aberth_roots(c, maxiter=200):
    """Aberth-Ehrlich simultaneous iteration at mpmath precision."""
    seeds = np.roots(np.asarray(c, dtype=complex))
    # perturb exact clusters so the correction denominators stay finite
    rng = np.random.default_rng(12345)
    seeds = seeds + 1e-8 * (rng.standard_normal(len(seeds)) + 1j * rng.standard_normal(len(seeds)))
    mpc = [mpmath.mpc(v) for v in c]
    dpc = [mpc[k] * (len(mpc) - 1 - k) for k in range(len(mpc) - 1)]
    xs = [mpmath.mpc(s) for s in seeds]
    n = len(xs)
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    for _ in range(maxiter):
        converged = True
        for i in range(n):
            x = xs[i]
            p = mpmath.polyval(mpc, x)
            dp = mpmath.polyval(dpc, x)
            s = mpmath.mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (x - xs[j])
            den = dp - p * s
            if den == 0:
                continue
            delta = p / den
            xs[i] = x - delta
            if abs(delta) > tol * (1 + abs(xs[i])):
                converged = False
        if converged:
            return np.array([complex(x) for x in xs])
    raise ConvergenceError("Aberth iteration did not converge")


def cubic_roots_batch(c3, c2, c1, c0):
    """Roots of many cubics at once via batched companion eigenvalues.

    Inputs broadcast to a common shape; the result has shape (..., 3).
    Leading coefficients must be nonzero.
    """
    c3, c2, c1, c0 = np.broadcast_arrays(
        *[np.asarray(a, dtype=complex) for a in (c3, c2, c1, c0)]
    )
    shape = c3.shape
    comp = np.zeros(shape + (3, 3), dtype=complex)
    comp[..., 0, 0] = -c2 / c3
    comp[..., 0, 1] = -c1 / c3
    comp[..., 0, 2] = -c0 / c3
    comp[..., 1, 0] = 1.0
    comp[..., 2, 1] = 1.0
    return np.linalg.eigvals(comp)


# ----------------------------------------------------------------------
# bracketed real root
# ----------------------------------------------------------------------

def real_root_in(f, lo, hi, xtol=1e-15, maxiter=200):
    """Root of a continuous real function on a sign-changing bracket.

    Brent's method: bisection-safeguarded inverse-quadratic refinement.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoBracketError(f"no sign change on [{lo}, {hi}]: f={flo:.3g},{fhi:.3g}")
    try:
        root, res = optimize.brentq(f, lo, hi, xtol=xtol, maxiter=maxiter, full_output=True)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc)) from exc
    if not res.converged:
        raise ConvergenceError("brentq hit the iteration cap")
    return root


# ----------------------------------------------------------------------
# contour quadrature
# ----------------------------------------------------------------------

def integrate(f, path, atol=QUAD_ATOL, return_error=False):
    """Adaptive Gauss-Kronrod quadrature of a complex function along a path.

    Each segment is parametrized linearly and handed to an adaptive GK21
    rule; the per-segment error estimates are summed.  Raises
    :class:`ConvergenceError` (carrying the partial estimate) when the
    subdivision budget is exhausted without reaching ``atol``.
    """
    if isinstance(path, Path):
        segments = path.segments()
    else:
        segments = list(zip(path, path[1:]))
    total = 0.0 + 0.0j
    err_total = 0.0
    # quad_vec limit: number of subdivisions, ~2**depth intervals
    limit = 2 ** min(QUAD_DEPTH, 16)
    for a, b in segments:
        d = b - a

        def g(t, a=a, d=d):
            z = a + t * d
            return np.asarray(f(z)) * d

        val, err = quad_vec(g, 0.0, 1.0, epsabs=atol, epsrel=0.0, limit=limit, quadrature="gk21")
        total += complex(val)
        err_total += float(err)
    if err_total > max(atol * len(segments) * 10, 1e2 * atol):
        raise ConvergenceError(
            f"quadrature error estimate {err_total:.2e} above tolerance", residual=total
        )
    if return_error:
        return total, err_total
    return total


# ----------------------------------------------------------------------
# complex Airy function
# ----------------------------------------------------------------------

def airy_ai(z, derivative=False):
    """Airy function Ai (or Ai') for complex argument.

    Binary64 mode evaluates through scipy's AMOS routines, which combine a
    Maclaurin series for small |z| with the asymptotic expansions and
    connection formulas in the standard sectors; the documented crossover
    scale is ``AIRY_CROSSOVER``.  Extended mode uses mpmath at 50 digits.
    Relative accuracy in binary64 is ~1e-13 away from zeros of Ai.
    """
    if get_precision() == "extended":
        zz = mpmath.mpc(complex(z))
        val = mpmath.airyai(zz, 1) if derivative else mpmath.airyai(zz)
        return complex(val)
    ai, aip, _, _ = special.airy(complex(z))
    return complex(aip if derivative else ai)


def airy_ai_series(z, nterms=200):
    """Reference Maclaurin evaluation of Ai, independent of scipy/AMOS.

    Ai(z) = c1*f(z) - c2*g(z) with the standard hypergeometric-type series.
    Converges for all z; usable in binary64 only for moderate |z| because
    of cancellation.  Kept as an independent oracle for tests.
    """
    z = complex(z)
    c1 = 0.3550280538878172392600631860041831763980
    c2 = 0.2588194037928067984051835601892039634793
    f = 1.0 + 0.0j
    g = z
    term_f = 1.0 + 0.0j
    term_g = z
    z3 = z ** 3
    for k in range(1, nterms):
        term_f *= z3 / ((3 * k) * (3 * k - 1))
        term_g *= z3 / ((3 * k) * (3 * k + 1))
        f += term_f
        g += term_g
        if abs(term_f) + abs(term_g) < 1e-20 * (abs(f) + abs(g)):
            break
    return c1 * f - c2 * g
