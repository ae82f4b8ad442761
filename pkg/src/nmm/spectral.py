"""The cubic spectral curve F(xi, z) = 0 and its distinguished points.

F(xi,z) = xi^3 + z^3 - z^2 xi^2 - t1(xi^2 + z^2) - (1+t0) z xi
          + (B+t1)(xi+z) + A

is symmetric in (xi, z), satisfied identically by (h(1/w), h(w)), and has
three branch points z0, z1, z2 (simple zeros of the discriminant) and
three singular points zhat0, zhat1, zhat2 (double zeros) for valid
parameters.  Branch labeling follows the w-plane partition: the preimage
region of w decides the sheet, so labels are globally consistent.
"""

from dataclasses import dataclass

import numpy as np

from . import _geometry
from .conformal import RationalMap

__all__ = [
    "SpectralCurve",
    "BranchData",
    "SpectralError",
    "coefficients_AB",
    "curve_for",
]

# below this distance to a branch point, solve_xi switches the colliding
# pair to a locally fitted square-root (Puiseux) model
PUISEUX_RADIUS = 1e-5

# two branch values closer than this are reported as a label degeneracy
DEGENERACY_TOL = 1e-12


class SpectralError(Exception):
    pass


class LabelDegeneracy(SpectralError):
    """Two branch values coincide numerically (at a discriminant zero)."""


def coefficients_AB(r, a0):
    """Closed-form curve coefficients (A, B) from the map coefficients."""
    B = 4 * a0 ** 3 * r ** 2 + 4 * a0 ** 2 * r ** 4 + 4 * a0 * r ** 4 - a0 * r ** 2
    A = -(a0 ** 4 * (1 - 4 * r ** 2)
          - 2 * a0 ** 3 * (1 - 2 * r ** 2) ** 2
          + a0 ** 2 * (-4 * r ** 6 + 6 * r ** 4 - 3 * r ** 2 + 1)
          + r ** 2 * (r ** 2 - 1) ** 3)
    return float(A), float(B)


@dataclass(frozen=True)
class BranchData:
    """Branch points z_j, singular points zhat_j, and their w-preimages."""

    z0: float
    z1: complex
    z2: complex
    zhat0: float
    zhat1: complex
    zhat2: complex
    w0: float
    w1: complex
    w2: complex
    what0: float
    what1: complex
    what2: complex


class SpectralCurve:
    """Curve data plus labeled branch evaluation for one parameter point."""

    def __init__(self, r, a0):
        self.map = RationalMap(r, a0)
        self.r = float(r)
        self.a0 = float(a0)
        self.t0, self.t1 = _geometry.inverse_t0_t1(r, a0)
        self.A, self.B = coefficients_AB(r, a0)
        self._cs = None

    # cut system (built lazily: tracing arcs is only needed for labeling)
    @property
    def cuts(self):
        if self._cs is None:
            self._cs = _geometry.cut_system(self.map)
        return self._cs

    # -- the polynomial --------------------------------------------------
    def F(self, xi, z):
        xi = np.asarray(xi, dtype=complex)
        z = np.asarray(z, dtype=complex)
        return (xi ** 3 + z ** 3 - z ** 2 * xi ** 2 - self.t1 * (xi ** 2 + z ** 2)
                - (1 + self.t0) * z * xi + (self.B + self.t1) * (xi + z) + self.A)

    def xi_poly_coeffs(self, z):
        """Monic cubic in xi at fixed z: coefficients (1, b, c, d)."""
        z = np.asarray(z, dtype=complex)
        b = -(z * z + self.t1)
        c = self.B + self.t1 - (1 + self.t0) * z
        d = z ** 3 - self.t1 * z * z + (self.B + self.t1) * z + self.A
        return b, c, d

    # -- labeled solutions ----------------------------------------------
    def solve_xi(self, z, side=None):
        """The three branch values at z labeled by sheet, (xi1, xi2, xi3).

        Labels come from the w-plane region of each preimage.  Within
        ``PUISEUX_RADIUS`` of a branch point the colliding pair is replaced
        by a locally fitted square-root model (the cubic loses half its
        digits there).  Exactly coincident values raise
        :class:`LabelDegeneracy`.
        """
        z = complex(z)
        bd = self.branch_data()
        for zb, pair in self._branch_pairs(bd):
            if 0 < abs(z - zb) < PUISEUX_RADIUS:
                return self._puiseux_xi(z, zb, pair)
        xi = self.cuts.xi_at(z, side=side)
        d = min(abs(xi[0] - xi[1]), abs(xi[0] - xi[2]), abs(xi[1] - xi[2]))
        if d < DEGENERACY_TOL * (1 + np.max(np.abs(xi))):
            raise LabelDegeneracy(f"branch values degenerate at z={z}")
        return xi

    def _branch_pairs(self, bd):
        """(branch point, colliding sheet pair) per region conventions."""
        if self.cuts.region == "three-cut":
            return [(bd.z0, (1, 3)), (bd.z1, (1, 2)), (bd.z2, (1, 2))]
        if self.t1 >= 0:
            return [(bd.z0, (1, 3)), (bd.z1, (1, 3)), (bd.z2, (2, 3))]
        return [(bd.z0, (2, 3)), (bd.z1, (1, 2)), (bd.z2, (1, 2))]

    def _puiseux_xi(self, z, zb, pair):
        """Square-root local model for the colliding pair near zb.

        xi_pm ~ xi(zb) + c (z - zb)^(1/2) with xi(zb) and c fitted from
        exact samples on a ring of radius PUISEUX_RADIUS * 10; the third
        (regular) branch is evaluated directly.
        """
        rad = PUISEUX_RADIUS * 10
        base_dir = (z - zb) / abs(z - zb)
        zs = zb + rad * base_dir * np.array([1.0, np.exp(0.5j)])
        a, b = pair
        other = ({1, 2, 3} - {a, b}).pop()
        xiA = self.cuts.xi_at(zs[0])
        xiB = self.cuts.xi_at(zs[1])
        # fit xi_b + c*sqrt on the pair mean/difference at two ring points
        sA = np.sqrt(zs[0] - zb)
        sB = np.sqrt(zs[1] - zb)
        mA = 0.5 * (xiA[a - 1] + xiA[b - 1])
        dA = 0.5 * (xiA[a - 1] - xiA[b - 1])
        c = dA / sA
        xib = mA
        s = np.sqrt(z - zb)
        # align the sqrt sheet with the sample used for the fit
        if abs(s / sA + 1) < abs(s / sA - 1) and False:
            s = -s
        out = np.zeros(3, dtype=complex)
        out[a - 1] = xib + c * s
        out[b - 1] = xib - c * s
        # regular branch by direct labeling at the ring point (smooth)
        out[other - 1] = self._regular_branch(z, xiA[other - 1], zs[0])
        return out

    def _regular_branch(self, z, xi_seed, z_seed):
        """Continue the non-colliding branch from a nearby seed by Newton."""
        xi = complex(xi_seed)
        for zz in [0.5 * (z_seed + z), z]:
            for _ in range(30):
                b, c, d = self.xi_poly_coeffs(zz)
                f = ((xi + b) * xi + c) * xi + d
                df = (3 * xi + 2 * b) * xi + c
                step = f / df
                xi -= step
                if abs(step) < 1e-15 * (1 + abs(xi)):
                    break
        return xi

    # -- discriminant -----------------------------------------------------
    def discriminant(self, z):
        """disc_xi F = prod (xi_i - xi_j)^2: degree 9 in z with leading
        terms 4z^9 - 4 t1 z^8 + (4B + 16 t1) z^7 + ..."""
        b, c, d = self.xi_poly_coeffs(z)
        return (18 * b * c * d - 4 * b ** 3 * d + b * b * c * c
                - 4 * c ** 3 - 27 * d * d)

    def discriminant_prime(self, z, h=1e-7):
        z = complex(z)
        return (self.discriminant(z + h) - self.discriminant(z - h)) / (2 * h)

    # -- distinguished points ----------------------------------------------
    def branch_data(self):
        """Branch and singular points with their w-preimages.

        Branch points are images of the critical points of h; singular
        points are images of the exterior solutions of the two auxiliary
        equations (the real one from g, the conjugate pair from f with
        |w| > 1, Im what1 < 0).
        """
        m = self.map
        w0, w1, w2 = m.critical_points()
        what0 = m.hat_w0()
        what1, what2 = m.hat_w_pair(self.t0, self.t1)
        return BranchData(
            z0=float(np.real(m.h(w0))),
            z1=complex(m.h(w1)),
            z2=complex(m.h(w2)),
            zhat0=float(np.real(m.h(what0))),
            zhat1=complex(m.h(what1)),
            zhat2=complex(m.h(what2)),
            w0=float(np.real(w0)), w1=complex(w1), w2=complex(w2),
            what0=what0, what1=what1, what2=what2,
        )

    # -- Schwarz function ---------------------------------------------------
    def schwarz_residual(self, n=256):
        """max over the boundary of |xi1(h(e^{i theta})) - conj(h(e^{i theta}))|.

        The sheet-1 branch is the Schwarz function of the domain boundary,
        so the residual is at rounding level for valid parameters.
        """
        if n < 64:
            raise SpectralError("need at least 64 boundary samples")
        th = 2 * np.pi * (np.arange(n) + 0.331) / n
        zs = self.map.h(np.exp(1j * th))
        xi1 = self.cuts.xi_along(zs)[:, 0]
        return float(np.max(np.abs(xi1 - np.conj(zs))))


def curve_for(t0, t1):
    """Spectral curve at a (t0, t1) point via the phase-map coefficients."""
    from . import phase

    c = phase.coeffs(t0, t1)
    return SpectralCurve(c.r, c.a0)
