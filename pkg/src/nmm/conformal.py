"""The rational map h, the eigenvalue-domain boundary, and w-plane helpers.

h(w) = r*w + a0 + 2*a0*r/w + r^2/w^2 maps the exterior of the unit disk
conformally onto the exterior of the eigenvalue domain Omega; h(e^{i*theta})
parametrizes the boundary.  This module owns everything that lives purely
in the w-plane: critical points of h, preimages of a point, the primitive
H of h'(w)h(1/w) (whose real part is single-valued and drives all width
and mass computations), area, harmonic moments, and point containment.
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .numerics import cubic_roots_batch

__all__ = [
    "RationalMap",
    "ConformalError",
    "CuspError",
    "H_re",
    "H_rational",
]

# tolerance band used to decide degenerate (double) critical points
DEGENERACY_BAND = 1e-9


class ConformalError(Exception):
    pass


class CuspError(ConformalError):
    """The boundary parametrization degenerates (cusp or self-intersection)."""


@dataclass(frozen=True)
class RationalMap:
    """The degree-3 exterior map with real coefficients r > 0 and a0.

    Derived Laurent coefficients: a1 = 2*r*a0, a2 = r^2.
    """

    r: float
    a0: float

    def __post_init__(self):
        if not self.r > 0:
            raise ConformalError("r must be positive")

    @property
    def a1(self):
        return 2 * self.r * self.a0

    @property
    def a2(self):
        return self.r ** 2

    # -- evaluation -----------------------------------------------------
    def h(self, w):
        w = np.asarray(w, dtype=complex)
        if np.any(w == 0):
            raise ConformalError("h has a pole at w = 0")
        return self.r * w + self.a0 + 2 * self.a0 * self.r / w + self.r ** 2 / w ** 2

    def dh(self, w):
        w = np.asarray(w, dtype=complex)
        if np.any(w == 0):
            raise ConformalError("h' has a pole at w = 0")
        return self.r - 2 * self.a0 * self.r / w ** 2 - 2 * self.r ** 2 / w ** 3

    def d2h(self, w):
        w = np.asarray(w, dtype=complex)
        if np.any(w == 0):
            raise ConformalError("h'' has a pole at w = 0")
        return 4 * self.a0 * self.r / w ** 3 + 6 * self.r ** 2 / w ** 4

    # -- preimages ------------------------------------------------------
    def preimages(self, z):
        """The three w-solutions of h(w) = z (roots of a cubic)."""
        z = np.asarray(z, dtype=complex)
        return cubic_roots_batch(self.r, self.a0 - z, 2 * self.a0 * self.r, self.r ** 2)

    # -- critical points ------------------------------------------------
    def hprime_discriminant(self):
        """disc(w^3 - 2*a0*w - 2*r) / 4 = 8*a0^3 - 27*r^2.

        Negative: one real critical point and a conjugate pair (three-cut
        geometry); positive: three real critical points (one-cut geometry).
        """
        return 8 * self.a0 ** 3 - 27 * self.r ** 2

    def critical_points(self):
        """Zeros (w0, w1, w2) of h', ordered by the region conventions.

        w0 is always the unique positive real zero.  With a conjugate pair,
        w1 is the one with negative imaginary part and w2 its conjugate;
        with three real zeros, -1 < w1 < w2 < 0 < w0.  On the degenerate
        locus (double zero) w1 == w2 is reported after cluster-merging.
        """
        ws = np.roots([1.0, 0.0, -2 * self.a0, -2 * self.r])
        ws = numerics.cluster_roots(ws)
        real_mask = np.abs(ws.imag) < 1e-9 * (1 + np.abs(ws))
        reals = np.sort(ws[real_mask].real)
        pos = reals[reals > 0]
        if len(pos) == 0:
            raise ConformalError("no positive critical point; invalid (r, a0)")
        w0 = float(pos[-1])
        others = [w for w in ws if not np.isclose(w.real, w0, atol=1e-12) or abs(w.imag) > 1e-9]
        # robust: remove the entry closest to w0 once
        idx = int(np.argmin(np.abs(ws - w0)))
        rest = np.delete(ws, idx)
        if np.all(np.abs(rest.imag) < 1e-9 * (1 + np.abs(rest))):
            a, b = np.sort(rest.real)
            return w0, complex(a), complex(b)
        w1 = rest[rest.imag < 0][0]
        return w0, complex(w1), complex(np.conj(w1))

    def tilde_roots(self):
        """Simple preimages (w~0, w~1, w~2) paired with the critical points.

        h(w) - h(w_j) has w_j as a double root; the remaining simple root is
        w~j = -r / w_j^2, which satisfies h(w~j) = h(w_j).
        """
        w0, w1, w2 = self.critical_points()
        return tuple(-self.r / np.asarray([w0, w1, w2], dtype=complex) ** 2)

    # -- singular-point preimages ----------------------------------------
    def hat_w0(self):
        """The unique zero of g(w) = 1 - 2*a0 - r*(w + 1/w) in (1, inf)."""
        u = (1 - 2 * self.a0) / self.r
        if u <= 2:
            raise ConformalError("no exterior real singular preimage (u <= 2)")
        return float((u + np.sqrt(u * u - 4)) / 2)

    def hat_w_pair(self, t0, t1):
        """The conjugate pair of f-roots with |w| > 1; Im(hat_w1) < 0.

        f(w) = f~(w + 1/w) where f~ is the printed cubic with the constant
        term depending on t0 - 2*t1; each root u of f~ lifts to the pair
        {w, 1/w} with w + 1/w = u.  The selected pair parametrizes the two
        non-real singular points of the spectral curve.
        """
        r, a0 = self.r, self.a0
        c3 = 2 * r ** 3
        c2 = 3 * r * r * (1 + 2 * a0)
        c1 = r * (3 + 8 * a0 + 4 * a0 * a0 + 4 * a0 * r * r - 6 * r * r)
        c0 = (6 * a0 + 2 * a0 * a0 - 4 * r * r - 12 * a0 * r * r
              + 8 * a0 * a0 * r * r + 2 * r ** 4 + 1 + t0 - 2 * t1)
        us = np.roots([c3, c2, c1, c0])
        cand = []
        for u in us:
            s = np.sqrt(u * u - 4 + 0j)
            for w in ((u + s) / 2, (u - s) / 2):
                if abs(w) > 1 and w.imag > 1e-12:
                    cand.append(w)
        if len(cand) != 1:
            raise ConformalError(
                f"singular preimage selection failed ({len(cand)} candidates)"
            )
        w_hat2 = complex(cand[0])
        return complex(np.conj(w_hat2)), w_hat2

    def ftilde_roots(self, t0, t1):
        """All roots of the auxiliary cubic f~ (for invariant checks)."""
        r, a0 = self.r, self.a0
        c3 = 2 * r ** 3
        c2 = 3 * r * r * (1 + 2 * a0)
        c1 = r * (3 + 8 * a0 + 4 * a0 * a0 + 4 * a0 * r * r - 6 * r * r)
        c0 = (6 * a0 + 2 * a0 * a0 - 4 * r * r - 12 * a0 * r * r
              + 8 * a0 * a0 * r * r + 2 * r ** 4 + 1 + t0 - 2 * t1)
        return np.roots([c3, c2, c1, c0])

    # -- boundary ---------------------------------------------------------
    def boundary(self, n=512, check_injective=False):
        """Samples h(e^{i*theta_k}) of the domain boundary, theta uniform."""
        if n < 16:
            raise ConformalError("need at least 16 boundary samples")
        th = 2 * np.pi * np.arange(n) / n
        pts = self.h(np.exp(1j * th))
        if check_injective and _polyline_self_intersects(pts):
            raise CuspError("boundary polyline self-intersects (invalid parameters)")
        return pts

    def min_boundary_speed(self, n=4096):
        """min over theta of |h'(e^{i*theta})|; ~0 flags a boundary cusp."""
        th = 2 * np.pi * np.arange(n) / n
        speeds = np.abs(self.dh(np.exp(1j * th)))
        k = int(np.argmin(speeds))
        # polish by local minimization on the circle
        from scipy.optimize import minimize_scalar

        f = lambda t: abs(self.dh(np.exp(1j * t)))
        res = minimize_scalar(f, bracket=(th[k] - 2 * np.pi / n, th[k], th[k] + 2 * np.pi / n))
        return float(res.fun)

    def has_cusp(self, threshold=1e-8):
        return self.min_boundary_speed() <= threshold

    def area(self, n=4096):
        """Shoelace area of the sampled boundary polyline."""
        pts = self.boundary(n)
        x, y = pts.real, pts.imag
        x2, y2 = np.roll(x, -1), np.roll(y, -1)
        return 0.5 * abs(np.sum(x * y2 - x2 * y))

    def exact_area(self):
        """pi*(r^2*(1 - 4*a0^2) - 2*r^4) = pi*t0, from the residue at w=0."""
        return np.pi * (self.r ** 2 * (1 - 4 * self.a0 ** 2) - 2 * self.r ** 4)

    def contains(self, z, n=4096, boundary_tol=1e-10):
        """Point-in-domain test by the winding number of the boundary."""
        pts = self.boundary(n)
        z = complex(z)
        d = np.min(np.abs(pts - z))
        if d < boundary_tol:
            raise ConformalError("point is on the boundary (indeterminate)")
        v = pts - z
        ang = np.angle(np.roll(v, -1) / v)
        winding = np.sum(ang) / (2 * np.pi)
        return bool(round(float(winding)) == 1)

    def harmonic_moments(self, zeta, kmax=5, n=4096):
        """Exterior harmonic moments (1/2*pi*i) * int z^bar/(z-zeta)^k dz.

        On the boundary z = h(w), z^bar = h(1/w) for |w| = 1; the integral
        becomes a periodic w-integral evaluated by the trapezoid rule,
        which converges exponentially here.
        """
        zeta = complex(zeta)
        if not self.contains(zeta):
            raise ConformalError("moment reference point must lie inside the domain")
        th = 2 * np.pi * np.arange(n) / n
        w = np.exp(1j * th)
        num = self.h(1 / w) * self.dh(w) * w
        hz = self.h(w) - zeta
        out = []
        for k in range(1, kmax + 1):
            out.append(np.mean(num / hz ** k))
        return np.asarray(out)

    # -- sheet-aware inverse ----------------------------------------------
    def inverse_psi(self, z, sheet, side=None):
        """The preimage of z under h lying on the requested sheet (1, 2, 3).

        Sheet membership is decided by the cut-system label walker; the
        returned w is Newton-polished to |h(w) - z| <= 1e-12.  For z on a
        cut of the requested sheet, pass ``side=+1`` (approach from the
        positive side) or ``side=-1``.
        """
        from . import _geometry

        cs = _geometry.cut_system(self)
        return cs.inverse_psi(complex(z), sheet, side=side)


# ----------------------------------------------------------------------
# primitive of h'(w) h(1/w)
# ----------------------------------------------------------------------

def H_rational(m, w):
    """The rational (log-free) part of the primitive of h'(w)h(1/w)."""
    r, a0 = m.r, m.a0
    w = np.asarray(w, dtype=complex)
    return (r ** 3 / 3 * w ** 3 + a0 * r * r * w ** 2 + a0 * r * (1 - 2 * r * r) * w
            + (2 * a0 * a0 * r + 4 * a0 * r ** 3) / w + 2 * a0 * r * r / w ** 2
            + 2 * r ** 3 / (3 * w ** 3))


def H_log_coefficient(m):
    """Coefficient of log(w) in the primitive: -r^2*(4*a0^2 + 2*r^2 - 1)."""
    return -m.r ** 2 * (4 * m.a0 ** 2 + 2 * m.r ** 2 - 1)


def H_re(m, w):
    """Single-valued real part of the primitive of h'(w)h(1/w).

    Integrals of the branch values xi_j along curves reduce to differences
    of this function at the endpoint w-preimages; the log ambiguity drops
    out because only log|w| enters the real part.
    """
    w = np.asarray(w, dtype=complex)
    return H_rational(m, w).real + H_log_coefficient(m) * np.log(np.abs(w))


def H_cont(m, w, accumulated_arg):
    """Complex primitive with the log branch fixed by a tracked argument.

    ``accumulated_arg`` is the continuously-tracked arg(w) along the
    integration path in the w-plane (see _geometry.continue_arg).
    """
    w = complex(w)
    logw = np.log(abs(w)) + 1j * accumulated_arg
    return complex(H_rational(m, w)) + H_log_coefficient(m) * logw


# ----------------------------------------------------------------------
# polyline self-intersection (vectorized sweep over segment pairs)
# ----------------------------------------------------------------------

def _polyline_self_intersects(pts, chunk=512):
    """True when the closed polyline through pts crosses itself."""
    p = np.column_stack([pts.real, pts.imag])
    q = np.roll(p, -1, axis=0)
    n = len(p)
    d = q - p

    def cross(a, b):
        return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]

    for start in range(0, n, chunk):
        idx = np.arange(start, min(start + chunk, n))
        # compare segment i with all j > i+1 (skip shared-endpoint neighbors)
        for i in idx:
            j = np.arange(i + 2, n if i > 0 else n - 1)
            if len(j) == 0:
                continue
            r1 = d[i]
            s1 = d[j]
            pq = p[j] - p[i]
            denom = cross(r1, s1)
            ok = np.abs(denom) > 1e-15
            t = np.where(ok, cross(pq, s1) / np.where(ok, denom, 1.0), np.inf)
            u = np.where(ok, cross(pq, r1) / np.where(ok, denom, 1.0), np.inf)
            hit = (t > 1e-12) & (t < 1 - 1e-12) & (u > 1e-12) & (u < 1 - 1e-12)
            if np.any(hit):
                return True
    return False
