"""Computable objects from the steepest-descent normalization.

g-functions (branch antiderivatives with pinned constants), the phase
functions Phi_j / Psi_j, the first row of the global parametrix, and the
strong asymptotic formula for the diagonal polynomials.  All branch
integrals reduce to differences of the primitive H at w-preimages with a
continuously tracked log branch, evaluated along canonical homotopy-fixed
paths (rays to a far base circle plus arcs), so multivaluedness is
deterministic (mod 2*pi*i*t0, which drops out of every exponential with
integer n).
"""

from dataclasses import dataclass

import numpy as np

from . import _geometry, motherbody, numerics, phase
from .conformal import RationalMap, H_rational, H_log_coefficient
from ._geometry import continue_arg, cut_system

__all__ = ["RHError", "PathCrossesCut", "RHFrame", "frame_for"]


class RHError(Exception):
    pass


class PathCrossesCut(RHError):
    """The requested evaluation path crosses a cut of the integrand."""


def _Hc(m, w, arg):
    return complex(H_rational(m, w)) + H_log_coefficient(m) * (np.log(abs(w)) + 1j * arg)


def _path_points(za, zb, max_step):
    n = max(2, int(abs(zb - za) / max_step) + 1)
    return za + (zb - za) * np.linspace(0.0, 1.0, n)


class RHFrame:
    """All g-function data for one parameter point (cached via frame_for)."""

    def __init__(self, t0, t1):
        self.t0, self.t1 = float(t0), float(t1)
        c = phase.coeffs(t0, t1)
        self.map = RationalMap(c.r, c.a0)
        self.r = c.r
        self.cs = cut_system(self.map)
        self.mb = motherbody.trace_support(t0, t1)
        cs = self.cs
        self.three_cut = cs.region == "three-cut"
        self.base_g2 = cs.z_star if self.three_cut else float(np.real(cs.z2))
        # c1 = c3 = integral of the lower boundary value of the third
        # branch over the real piece up to the real branch point
        self._c1 = self._int_sheet_on_axis(3, self.base_g2, cs.z0, side=-1)
        if self.three_cut:
            self._c2 = -1j * np.pi * t0 * self.mb.masses[0]
        else:
            self._c2 = -1j * np.pi * t0
        self._c3 = self._c1
        self._l = None

    # -- low-level branch integrals ------------------------------------
    def _sheet_w_path(self, sheet, pts, side=None):
        ws = self.cs.labels_along(pts, side=side)[:, sheet - 1]
        return ws

    def _polish_w(self, w, z):
        for _ in range(6):
            f = complex(self.map.h(w)) - z
            df = complex(self.map.dh(w))
            if df == 0 or abs(f) < 1e-15 * (1 + abs(z)):
                break
            w = w - f / df
        return w

    def _int_from_wpath(self, ws):
        args = continue_arg(ws)
        return _Hc(self.map, ws[-1], args[-1]) - _Hc(self.map, ws[0], args[0])

    def _int_sheet_on_axis(self, sheet, xa, xb, side, n=400):
        """Integral of a branch value along a real interval.

        The side shift fixes the branch across cuts; the endpoint
        w-preimages are snapped back to the exact real endpoints so no
        shift-induced bias enters the primitive difference.
        """
        xs = np.linspace(xa, xb, n)
        ws = np.array(self.cs.labels_along(xs.astype(complex), side=side)[:, sheet - 1])
        ws[0] = self._polish_w(ws[0], complex(xa))
        ws[-1] = self._polish_w(ws[-1], complex(xb))
        return self._int_from_wpath(ws)

    def _canonical_path(self, base, z):
        """base -> far real point -> circle arc -> radial leg to z."""
        R = self.cs.R_ref
        z = complex(z)
        pts = [complex(base)]
        pts += list(_path_points(complex(base), complex(R), 0.05 * R)[1:])
        theta = np.angle(z) if z != 0 else 0.0
        narc = max(2, int(abs(theta) / 0.1) + 1)
        pts += [R * np.exp(1j * t) for t in np.linspace(0.0, theta, narc)[1:]]
        pts += list(_path_points(R * np.exp(1j * theta), z, 0.04 * R)[1:])
        return np.asarray(pts, dtype=complex)

    def _crossings_of_sheet(self, pts, sheet):
        hits = []
        for za, zb in zip(pts[:-1], pts[1:]):
            for t, pair in self.cs._segment_cut_crossings(complex(za), complex(zb)):
                if sheet in pair:
                    hits.append((za, zb, t, pair))
        return hits

    # -- g-functions ------------------------------------------------------
    def g_eval(self, j, z, side=None):
        """g_j(z): branch antiderivative from its base point plus c_j.

        The path is the canonical base->circle->radial route; crossing a
        cut of sheet j raises :class:`PathCrossesCut` (pass ``side`` to
        evaluate a boundary value instead).
        """
        if j not in (1, 2, 3):
            raise RHError("g index must be 1, 2 or 3")
        base = self.cs.z0 if j in (1, 3) else self.base_g2
        pts = self._canonical_path(base, complex(z))
        if side is not None:
            pts = pts + 1j * side * 1e-8
        if self._crossings_of_sheet(pts, j) and side is None:
            raise PathCrossesCut(f"canonical path for g{j} crosses a sheet-{j} cut")
        ws = np.array(self._sheet_w_path(j, pts, side=None))
        ws[0] = self._polish_w(ws[0], pts[0])
        ws[-1] = self._polish_w(ws[-1], pts[-1])
        cj = {1: self._c1, 2: self._c2, 3: self._c3}[j]
        return self._int_from_wpath(ws) + cj

    # -- asymptotic constants ----------------------------------------------
    def constants(self):
        """(c1, c2, c3, l1, l2, l3).

        The l_j come from matching g_j at a moderate far point R plus the
        exact tail integral of the residual branch expansion, whose
        coefficients are fitted once from polished samples (evaluating the
        branches at astronomically large |z| would lose everything to
        cancellation against the leading terms).
        """
        if self._l is None:
            t0, t1 = self.t0, self.t1
            R = max(12.0 * self.cs.R_ref, 120.0)
            samples = np.geomspace(0.4 * R, 5 * R, 14)
            # xi1 residual ~ sum beta_k / s^k, k >= 2
            ks = np.arange(2, 9)
            resid1 = np.array([self._xi_far(1, s) - (s * s + t1 + t0 / s)
                               for s in samples])
            M1 = samples[:, None] ** (-ks[None, :])
            beta, *_ = np.linalg.lstsq(M1, resid1, rcond=None)
            tail1 = np.sum(beta / (ks - 1) / R ** (ks - 1))
            # (xi3 - xi2)/2 residual ~ sum delta_k / s^(k+1/2), k >= 1
            kd = np.arange(1, 8)
            residd = np.array([0.5 * (self._xi_far(3, s) - self._xi_far(2, s))
                               - np.sqrt(s - t1) for s in samples])
            Md = samples[:, None] ** (-(kd[None, :] + 0.5))
            delta, *_ = np.linalg.lstsq(Md, residd, rcond=None)
            taild = np.sum(delta / (kd - 0.5) / R ** (kd - 0.5))
            # xi2 + xi3 = z^2 + t1 - xi1 exactly, so its tail is -tail1
            V = lambda s: s ** 3 / 3 + t1 * s
            g1R = self.g_eval(1, R)
            l1 = g1R - V(R) - t0 * np.log(R) - tail1
            g2R = self.g_eval(2, R)
            tail2 = -0.5 * tail1 - taild
            l2 = g2R + (2 / 3) * (R - t1) ** 1.5 + (t0 / 2) * np.log(R) - tail2
            g3R = self.g_eval(3, R)
            tail3 = -0.5 * tail1 + taild
            l3 = g3R - (2 / 3) * (R - t1) ** 1.5 + (t0 / 2) * np.log(R) - tail3
            self._l = (complex(l1), complex(l2), complex(l3))
        l1, l2, l3 = self._l
        return self._c1, self._c2, self._c3, l1, l2, l3

    def _xi_far(self, sheet, s):
        """Branch values on the far positive axis, Newton-polished, by
        value ordering (xi2 < xi3 < xi1 beyond the real singular point)."""
        ws = np.asarray(self.map.preimages(complex(s)))
        ws = np.array([self._polish_w(w, complex(s)) for w in ws])
        xi = np.sort(np.asarray(self.map.h(1 / ws)).real)
        return {1: xi[2], 2: xi[0], 3: xi[1]}[sheet]

    # -- phase functions -----------------------------------------------------
    def phi(self, j, z, side=None):
        """Phi_j(z) = (1/t0) * int from z_j of (xi1 - xi_pair) along a
        straight path; the colliding pair is continued from the branch
        point, and the sheet-1 member is identified at the endpoint."""
        cs = self.cs
        zj = {0: cs.z0, 1: cs.z1, 2: cs.z2}[j]
        wj = {0: cs.w0, 1: cs.w1, 2: cs.w2}[j]
        z = complex(z)
        if side is not None:
            z = z + 1j * side * 1e-9 * (1 + abs(z))
        pts = _path_points(complex(zj), z, 0.02 * (1 + abs(z - zj)))
        pair = _geometry._start_pair(self.map, complex(zj), complex(wj), pts[1])
        pairs = [np.array([wj, wj]), pair]
        for k in range(2, len(pts)):
            pair = _geometry.continue_pair(self.map, pts[k - 1], pair, pts[k])
            pairs.append(pair)
        pairs = np.asarray(pairs)
        Ia = self._int_from_wpath(pairs[:, 0])
        Ib = self._int_from_wpath(pairs[:, 1])
        w_sheet1 = self.cs.labels_at(z)[0]
        if abs(pairs[-1, 0] - w_sheet1) <= abs(pairs[-1, 1] - w_sheet1):
            return (Ia - Ib) / self.t0
        return (Ib - Ia) / self.t0

    def psi(self, j, z):
        """Psi_j(z) = (1/t0) * int from the junction of (xi2 - xi3)
        (j = 0, 1) or (xi3 - xi2) (j = 2), along a straight path from a
        short sector-fixed initial segment."""
        cs = self.cs
        if cs.z_star is None:
            raise RHError("Psi functions need a junction point")
        zs = complex(cs.z_star)
        z = complex(z)
        pts = _path_points(zs, z, 0.02 * (1 + abs(z - zs)))
        # nudge the emanating point into the target sector
        pts[0] = zs + 1e-7 * (pts[1] - zs) / abs(pts[1] - zs)
        ws = self.cs.labels_along(pts)
        I2 = self._int_from_wpath(ws[:, 1])
        I3 = self._int_from_wpath(ws[:, 2])
        val = (I2 - I3) / self.t0
        return -val if j == 2 else val

    # -- L contours -------------------------------------------------------
    def trace_L2(self, rmax=None):
        """The unbounded level arc continuing the lower support arc
        through the junction (it extends to infinity at angle -pi/3).

        Returned oriented away from the junction; its conjugate is L1 and
        the ray (-inf, junction] is L0.
        """
        if not self.three_cut:
            raise RHError("L tracing implemented for the three-cut frame")
        arc = self.cs.arc1
        m = self.map
        z = complex(arc.z[-1])
        pair = np.asarray(arc.pair[-1])
        step = abs(arc.z[-1] - arc.z[-2]) or 1e-4 * abs(self.cs.z0)
        direction = np.angle(arc.z[-1] - arc.z[-3])
        rmax = rmax or 0.6 * self.cs.R_ref
        return _geometry.trace_level_resume(
            m, z, pair, direction, step, max_len=300 * abs(self.cs.z0),
            stop_at_axis=False, rmax=rmax)

    # -- global parametrix first row ------------------------------------
    def parametrix_row(self, z, sheet):
        """m_k(z) = sqrt(r * psi_k'(z)) with the branch fixed by
        continuation from the far anchor (m_1 -> 1 at infinity)."""
        z = complex(z)
        pts = self._canonical_path(self.cs.R_ref, z)
        side = None
        if self.cs._near_cut(z):
            raise RHError("parametrix evaluation on a branch cut: displace z")
        ws = self._sheet_w_path(sheet, pts)
        F = self.r / np.asarray(self.map.dh(ws))
        val = np.sqrt(F[0])
        if sheet == 1 and val.real < 0:
            val = -val
        for k in range(1, len(F)):
            s = np.sqrt(F[k])
            val = s if abs(s - val) <= abs(s + val) else -s
        return complex(val)

    # -- strong asymptotics ------------------------------------------------
    def G_factor(self, z):
        """G(z) = int_{z0}^{z} xi1, canonical path (mod 2*pi*i*t0)."""
        pts = self._canonical_path(self.cs.z0, complex(z))
        ws = self._sheet_w_path(1, pts)
        return self._int_from_wpath(ws)

    def pnn_asymptotic(self, z, n):
        """sqrt(r psi1'(z)) * exp((n/t0)(G(z) - V(z) + c)), c = c1 - l1.

        Valid on compacts away from the support; enforced standoff is 5%
        of the support diameter.
        """
        z = complex(z)
        diam = max(abs(self.cs.z0 - self.cs.z1), 1e-6)
        d = min(np.min(np.abs(arc.points - z)) for arc in self.mb.arcs)
        if d < 0.05 * diam:
            raise RHError("evaluation point too close to the support")
        c1, c2, c3, l1, l2, l3 = self.constants()
        c = c1 - l1
        G = self.G_factor(z)
        V = z ** 3 / 3 + self.t1 * z
        pref = self.parametrix_row(z, 1)
        return pref * np.exp((n / self.t0) * (G - V + c))


_FRAMES = {}


def frame_for(t0, t1):
    key = (round(float(t0), 15), round(float(t1), 15))
    fr = _FRAMES.get(key)
    if fr is None:
        fr = RHFrame(t0, t1)
        if len(_FRAMES) > 16:
            _FRAMES.clear()
        _FRAMES[key] = fr
    return fr
