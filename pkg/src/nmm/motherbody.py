"""The skeleton measure: support arcs, densities, masses, potentials, widths.

The measure lives on arcs where the sheet-1 branch jumps; its linear
density is |branch-pair difference| / (2*pi*t0).  Arc integrals of branch
values reduce to differences of the primitive H at w-preimages, which is
what the mass and width computations use -- no quadrature drift.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _geometry, numerics, phase
from .conformal import RationalMap, H_re, H_rational, H_log_coefficient
from ._geometry import cut_system, continue_arg

__all__ = [
    "SupportArc",
    "MotherBody",
    "Widths",
    "MotherBodyError",
    "z_star",
    "trace_support",
    "trace_support_negative_t1",
    "residue_mass",
    "cauchy_mu0",
    "cauchy_mustar",
    "planar_potential",
    "skeleton_potential",
    "potentials_check",
    "widths",
    "widths_rational",
]


class MotherBodyError(Exception):
    pass


@dataclass
class SupportArc:
    """One arc of the support with per-sample density.

    ``points`` are ordered samples; ``density`` is the linear density of
    the measure at each sample (1/length units); endpoint tags are from
    {"branch_point", "junction", "real_axis"}.
    """

    points: np.ndarray
    density: np.ndarray
    start_tag: str
    end_tag: str
    mass: float = None
    w_pair: np.ndarray = None     # (N, 2) branch-pair preimages along the arc


@dataclass
class MotherBody:
    arcs: list
    z_star: float
    masses: np.ndarray
    region: str
    r: float
    a0: float
    t0: float
    t1: float

    @property
    def total_mass(self):
        return float(np.sum(self.masses))


@dataclass
class Widths:
    """Strip widths tau1..tau6 (tau6 defined only in the one-cut case)."""

    tau1: float
    tau2: float
    tau3: float
    tau4: float
    tau5: float
    tau6: float = None
    region: str = ""


# ----------------------------------------------------------------------
# junction point
# ----------------------------------------------------------------------

def z_star(t0, t1):
    """The junction of the support.

    Three-cut: the largest real y below the real branch point where the
    accumulated branch-pair difference from the complex branch point has
    vanishing real part.  One-cut with t1 < 0: the axis crossing (right of
    the real branch point) of the single arc, refined on the same level
    condition.
    """
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    cs = cut_system(m)
    if cs.region == "three-cut":
        return float(_geometry.junction_scan_three_cut(m))
    if t1 >= 0:
        raise MotherBodyError("no junction point in the one-cut region with t1 >= 0")
    return float(cs.z_star)


# ----------------------------------------------------------------------
# support tracing
# ----------------------------------------------------------------------

def _pair_Q(m, pair):
    return np.asarray(m.h(1 / pair[..., 0]) - m.h(1 / pair[..., 1]))


def _interval_pair(m, xs, collide_at_right, w_double_right, w_double_left=None):
    """Branch-pair preimages along a real interval cut.

    The pair is the conjugate preimage pair over the open interval; it is
    continued from the double point at the right endpoint.
    """
    pair = None
    out = np.zeros((len(xs), 2), dtype=complex)
    prev_x = None
    for i, x in enumerate(xs):
        if pair is None:
            ws = np.asarray(m.preimages(complex(x)))
            idx = np.argsort(np.abs(ws - w_double_right))
            pair = ws[idx[:2]]
        else:
            pair = _geometry.continue_pair(m, complex(prev_x), pair, complex(x))
        out[i] = pair
        prev_x = x
    return out


def _arc_mass(m, z_samples, pair_samples, t0):
    """Exact arc mass via the complex primitive with tracked log branch."""
    wa = pair_samples[:, 0]
    wb = pair_samples[:, 1]
    arga = continue_arg(wa)
    argb = continue_arg(wb)

    def Hc(w, a):
        return complex(H_rational(m, w)) + H_log_coefficient(m) * (np.log(abs(w)) + 1j * a)

    integral = (Hc(wa[-1], arga[-1]) - Hc(wa[0], arga[0])) \
        - (Hc(wb[-1], argb[-1]) - Hc(wb[0], argb[0]))
    return abs(integral.imag) / (2 * np.pi * t0)


def trace_support(t0, t1, interval_samples=400):
    """Trace the support and return arcs, densities, masses and junction.

    Three-cut: the off-axis arc is traced as a level arc of the primitive
    difference from the lower branch point (initial direction chosen among
    the three local level rays by its upward component, validated by axis
    arrival); the upper arc is its conjugate; the real piece joins the
    junction to the real branch point.  One-cut with t1 >= 0 the support
    is the real segment between the two rightmost branch points; with
    t1 < 0 it is the single traced arc through the axis.
    """
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    cs = cut_system(m)
    arcs = []
    if cs.region == "three-cut":
        arc = cs.arc1
        zs = arc.z[::-1].copy()          # orient junction -> branch point
        pair = arc.pair[::-1].copy()
        dens = np.abs(_pair_Q(m, pair)) / (2 * np.pi * t0)
        mass1 = _arc_mass(m, arc.z, arc.pair, t0)
        a1 = SupportArc(points=zs, density=dens, start_tag="junction",
                        end_tag="branch_point", mass=mass1, w_pair=pair)
        a2 = SupportArc(points=np.conj(zs), density=dens.copy(), start_tag="junction",
                        end_tag="branch_point", mass=mass1, w_pair=np.conj(pair))
        xs = _graded_interval(cs.z_star, cs.z0, interval_samples)
        pair0 = _interval_pair(m, xs[::-1], True, cs.w0)[::-1]
        dens0 = np.abs(_pair_Q(m, pair0)) / (2 * np.pi * t0)
        mass0 = _arc_mass(m, xs, pair0, t0)
        a0_arc = SupportArc(points=xs.astype(complex), density=dens0,
                            start_tag="junction", end_tag="branch_point",
                            mass=mass0, w_pair=pair0)
        arcs = [a0_arc, a1, a2]
        zstar_val = cs.z_star
    elif t1 >= 0:
        z1 = float(np.real(cs.z1))
        xs = _graded_interval(z1, cs.z0, interval_samples, both_ends=True)
        pair0 = _interval_pair(m, xs[::-1], True, cs.w0)[::-1]
        dens0 = np.abs(_pair_Q(m, pair0)) / (2 * np.pi * t0)
        mass0 = _arc_mass(m, xs, pair0, t0)
        arcs = [SupportArc(points=xs.astype(complex), density=dens0,
                           start_tag="branch_point", end_tag="branch_point",
                           mass=mass0, w_pair=pair0)]
        zstar_val = None
    else:
        arc = cs.arc1
        zs = np.concatenate([arc.z, np.conj(arc.z[-2::-1])])
        pair = np.concatenate([arc.pair, np.conj(arc.pair[-2::-1])])
        dens = np.abs(_pair_Q(m, pair)) / (2 * np.pi * t0)
        mass = 2 * _arc_mass(m, arc.z, arc.pair, t0)
        arcs = [SupportArc(points=zs, density=dens, start_tag="branch_point",
                           end_tag="branch_point", mass=mass, w_pair=pair)]
        zstar_val = cs.z_star
    _check_density(arcs)
    return MotherBody(arcs=arcs, z_star=zstar_val,
                      masses=np.array([a.mass for a in arcs]),
                      region=cs.region, r=c.r, a0=c.a0, t0=t0, t1=t1)


def trace_support_negative_t1(t0, t1, **kw):
    """Support for t1 < 0 (three arcs or the single axis-crossing arc)."""
    if t1 >= 0:
        raise MotherBodyError("this entry point requires t1 < 0")
    return trace_support(t0, t1, **kw)


def _graded_interval(a, b, n, both_ends=False):
    """Interval samples with sqrt grading at the density endpoints."""
    if both_ends:
        u = 0.5 * (1 - np.cos(np.pi * np.linspace(0, 1, n)))
    else:
        u = np.sin(0.5 * np.pi * np.linspace(0, 1, n)) ** 2
    return a + (b - a) * u


def _check_density(arcs, tol=-1e-10):
    for arc in arcs:
        if np.any(arc.density < tol):
            raise MotherBodyError("negative density: model violation")


def residue_mass(t0, t1, n=512):
    """Total mass via -res(xi1, inf)/t0 on a large circle (trapezoid)."""
    c = phase.coeffs(t0, t1)
    cs = cut_system(RationalMap(c.r, c.a0))
    R = cs.R_ref
    th = 2 * np.pi * (np.arange(n) + 0.21) / n
    zs = R * np.exp(1j * th)
    xi1 = cs.xi_along(zs)[:, 0]
    integral = np.sum(xi1 * 1j * zs) * (2 * np.pi / n)
    return float((integral / (2j * np.pi * t0)).real)


# ----------------------------------------------------------------------
# Cauchy transforms and potentials
# ----------------------------------------------------------------------

def _Vprime(z, t1):
    return z * z + t1


def cauchy_mu0(t0, t1, z):
    """Cauchy transform of the normalized area measure of the domain."""
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    z = complex(z)
    if m.contains(z):
        return -(np.conj(z) - _Vprime(z, t1)) / t0
    cs = cut_system(m)
    xi1 = cs.xi_at(z)[0]
    return -(xi1 - _Vprime(z, t1)) / t0


def cauchy_mustar(t0, t1, z):
    """Cauchy transform of the skeleton measure: -(xi1(z) - V'(z))/t0."""
    c = phase.coeffs(t0, t1)
    cs = cut_system(RationalMap(c.r, c.a0))
    z = complex(z)
    xi1 = cs.xi_at(z)[0]
    return -(xi1 - _Vprime(z, t1)) / t0


def planar_potential(t0, t1, z, n=4096):
    """Logarithmic potential of the normalized area measure.

    The area integral of log(s - z) is reduced by the complex Green
    identity to a boundary integral of conj(s) * log(s - z); the branch of
    the log is unwrapped along the boundary, its winding part is summed
    exactly by FFT, and for interior z the branch-cut segment from z to
    the boundary contributes a closed-form correction.  All quadratures
    are periodic-trapezoid on the analytic boundary parametrization, so
    the result converges geometrically in n.
    """
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    z = complex(z)
    inside = m.contains(z)
    th = 2 * np.pi * np.arange(n) / n
    w = np.exp(1j * th)
    s = np.asarray(m.h(w))
    if inside:
        # start the parametrization at the boundary point radially out
        # from z, so the log's branch cut exits the domain cleanly there
        center = np.mean(s)
        u = (z - center) / abs(z - center) if z != center else 1.0
        j0 = int(np.argmax(((s - center) * np.conj(u)).real))
        w = np.roll(w, -j0)
        s = np.roll(s, -j0)
    sbar = np.asarray(m.h(1 / w))
    sprime = 1j * np.asarray(m.dh(w)) * w          # ds/dtheta
    arg = np.unwrap(np.angle(s - z))
    winding = int(round((arg[-1] + (arg[1] - arg[0]) - arg[0]) / (2 * np.pi)))
    lin = winding * np.arange(n) * (2 * np.pi / n)
    L_per = np.log(np.abs(s - z)) + 1j * (arg - lin)
    G = sbar * sprime
    I1 = np.mean(G * L_per) * 2 * np.pi
    # exact integral of the linear-in-theta winding part via Fourier modes
    if winding:
        ck = np.fft.fft(G) / n
        kfreq = np.fft.fftfreq(n, d=1.0 / n)
        terms = np.zeros((), dtype=complex)
        nonzero = kfreq != 0
        terms = 2 * np.pi * np.sum(ck[nonzero] / (1j * kfreq[nonzero]))
        I2 = 1j * winding * (2 * np.pi ** 2 * ck[0] + terms)
    else:
        I2 = 0.0
    total = (I1 + I2) / 2j
    if inside:
        p0 = s[0]
        total -= winding * np.pi * (p0 - z) * (np.conj(z) + np.conj(p0)) / 2
    return -float(total.real) / (np.pi * t0)


def planar_potential_raycast(t0, t1, z, n_theta=4096, n_boundary=8192):
    """Independent evaluation of the same potential by ray casting.

    Rays from z are intersected with the boundary polyline; the radial
    integral of rho*log(1/rho) over inside intervals is exact and the
    angular integral uses the trapezoid rule.  Slower and less accurate
    than :func:`planar_potential`; kept as a cross-check oracle.
    """
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    z = complex(z)
    pts = m.boundary(n_boundary)
    a = pts - z
    e = np.roll(pts, -1) - pts
    inside = m.contains(z)

    def antider(rho):
        out = np.zeros_like(rho)
        mask = rho > 0
        out[mask] = rho[mask] ** 2 / 4 - rho[mask] ** 2 * np.log(rho[mask]) / 2
        return out

    thetas = 2 * np.pi * (np.arange(n_theta) + 0.2137) / n_theta
    total = 0.0
    chunk = 256
    for s0 in range(0, n_theta, chunk):
        thc = thetas[s0:s0 + chunk]
        u = np.exp(-1j * thc)
        ar = a[None, :] * u[:, None]
        er = e[None, :] * u[:, None]
        denom = er.imag
        ok = np.abs(denom) > 1e-300
        t = np.where(ok, -ar.imag / np.where(ok, denom, 1.0), np.inf)
        rho = ar.real + t * er.real
        hit = (t >= 0) & (t < 1) & (rho > 0)
        for i in range(len(thc)):
            rr = np.sort(rho[i][hit[i]])
            if len(rr) == 0:
                continue
            vals = antider(rr)
            if inside:
                acc = float(vals[0]) + float(np.sum(vals[2::2]) - np.sum(vals[1::2]))
            else:
                acc = float(np.sum(vals[1::2]) - np.sum(vals[0::2]))
            total += acc
    return total * (2 * np.pi / n_theta) / (np.pi * t0)


def skeleton_potential(mb, z, nodes=200):
    """Logarithmic potential of the skeleton measure by arc quadrature.

    Each arc is resampled by cubic splines in arclength and integrated
    with Gauss-Legendre on a parameter graded quadratically at
    branch-point endpoints, where the density vanishes like a square
    root; the graded Jacobian makes the integrand smooth there.
    """
    from scipy.interpolate import CubicSpline

    z = complex(z)
    total = 0.0
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (xg + 1)
    wu = 0.5 * wg
    for arc in mb.arcs:
        s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(arc.points)))])
        L = s[-1]
        sp_x = CubicSpline(s, arc.points.real)
        sp_y = CubicSpline(s, arc.points.imag)
        sp_r = CubicSpline(s, arc.density)
        sq0 = arc.start_tag == "branch_point"
        sq1 = arc.end_tag == "branch_point"
        if sq0 and sq1:
            sv = L * (3 * u ** 2 - 2 * u ** 3)
            jac = L * (6 * u - 6 * u ** 2)
        elif sq1:
            sv = L * u * (2 - u)
            jac = L * (2 - 2 * u)
        elif sq0:
            sv = L * u ** 2
            jac = 2 * L * u
        else:
            sv = L * u
            jac = L * np.ones_like(u)
        pts = sp_x(sv) + 1j * sp_y(sv)
        rho = np.maximum(sp_r(sv), 0.0)
        f = rho * np.log(1.0 / np.abs(pts - z))
        total += float(np.sum(wu * f * jac))
    return total


def total_potential_report(t0, t1, points, mb=None):
    """(U_mu0, U_mustar, total potential 2U+V) at the given points."""
    if mb is None:
        mb = trace_support(t0, t1)
    rows = []
    for z in points:
        z = complex(z)
        u0 = planar_potential(t0, t1, z)
        us = skeleton_potential(mb, z)
        calV = (abs(z) ** 2 - 2 * (z ** 3 / 3 + t1 * z).real) / t0
        rows.append((z, u0, us, 2 * u0 + calV))
    return rows


def potentials_check(t0, t1, n_probes=10, eps_growth=(0.01, 0.015, 0.02, 0.03)):
    """Variational and skeleton identities at probe points.

    Returns a report dict with the exterior potential match
    |U_mu0 - U_mustar|, the interior strict inequality U_mu0 < U_mustar,
    the flatness of the interior total potential 2*U_mu0 + V_total, and
    the quadratic growth coefficient of the total potential across the
    boundary (expected 2/t0^2).
    """
    c = phase.coeffs(t0, t1)
    m = RationalMap(c.r, c.a0)
    mb = trace_support(t0, t1)
    bd_pts = m.boundary(256)
    center = np.mean(bd_pts)
    scale = np.max(np.abs(bd_pts - center))

    ext = [center + 2.2 * scale * np.exp(2j * np.pi * (k + 0.37) / n_probes)
           for k in range(n_probes)]
    interior = []
    for frac in (0.55, 0.42, 0.3, 0.68, 0.2):
        for k in range(24):
            if len(interior) >= n_probes:
                break
            zz = center + frac * scale * np.exp(2j * np.pi * (k + 0.13) / 24)
            if not m.contains(zz):
                continue
            d = min(np.min(np.abs(arc.points - zz)) for arc in mb.arcs)
            d_bd = np.min(np.abs(bd_pts - zz))
            if d > 0.08 * scale and d_bd > 0.05 * scale:
                interior.append(zz)
    if len(interior) < n_probes:
        raise MotherBodyError("could not place enough interior probes")

    ext_gap = []
    for z in ext:
        u0 = planar_potential(t0, t1, z)
        us = skeleton_potential(mb, z)
        ext_gap.append(abs(u0 - us))
    int_gap = []
    tot = []
    for z in interior:
        u0 = planar_potential(t0, t1, z)
        us = skeleton_potential(mb, z)
        int_gap.append(us - u0)
        calV = (abs(z) ** 2 - 2 * (z ** 3 / 3 + t1 * z).real) / t0
        tot.append(2 * u0 + calV)
    tot = np.asarray(tot)
    ell = float(np.mean(tot))

    # quadratic growth across the boundary along the outward normal
    w_b = np.exp(1j * 2.0)
    p = complex(m.h(w_b))
    normal = w_b * complex(m.dh(w_b))
    normal /= abs(normal)
    eps = np.asarray(eps_growth) * scale
    vals = []
    for e in eps:
        z = p + e * normal
        u0 = planar_potential(t0, t1, z)
        calV = (abs(z) ** 2 - 2 * (z ** 3 / 3 + t1 * z).real) / t0
        vals.append(2 * u0 + calV)
    vals = np.asarray(vals)
    # fit l + q*eps^2 + c*eps^3
    Amat = np.column_stack([np.ones_like(eps), eps ** 2, eps ** 3])
    coef, *_ = np.linalg.lstsq(Amat, vals, rcond=None)
    growth = float(coef[1])

    return {
        "exterior_max_gap": float(np.max(ext_gap)),
        "interior_min_gap": float(np.min(int_gap)),
        "interior_total_potential_spread": float(np.max(tot) - np.min(tot)),
        "interior_constant": ell,
        "growth_coefficient": growth,
        # the total potential is flat on the domain with Laplacian 4/t0
        # just outside, so the normal second-order coefficient is
        # (1/2)*(4/t0); the printed display squares the t0 by mistake
        "growth_expected": 2 / t0,
        "growth_expected_printed": 2 / t0 ** 2,
        "mb": mb,
    }


# ----------------------------------------------------------------------
# width parameters
# ----------------------------------------------------------------------

def _F_tau1(m, w):
    """Log-free primitive from the junction-width derivation."""
    r, a0 = m.r, m.a0
    w = np.asarray(w, dtype=complex)
    return (r ** 3 / 3 * w ** 3 + r * r * a0 * w ** 2 - 2 * r ** 3 * a0 * w
            + 4 * r ** 3 * a0 / w + r * r * a0 / w ** 2 + 2 * r ** 3 / (3 * w ** 3))


def cubic_roots_batch_interval(m, xs):
    return numerics.cubic_roots_batch(m.r, m.a0 - np.asarray(xs, dtype=complex),
                                      2 * m.a0 * m.r, m.r ** 2)


def _tau5(m, z0, zhat0):
    """tau5 = integral over [z0, zhat0] of (xi1 - xi3) (all branches real
    there, ordered xi2 < xi1 < xi3); sqrt substitution handles the
    branch-point endpoint."""
    n = 128
    # Gauss-Legendre on t in [0,1], x = z0 + (zhat0-z0) t^2
    tg, wg = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (tg + 1)
    w = 0.5 * wg
    x = z0 + (zhat0 - z0) * t ** 2
    wts = cubic_roots_batch_interval(m, x)
    xi = np.sort(np.asarray(m.h(1 / wts)).real, axis=1)
    integrand = (xi[:, 1] - xi[:, 2]) * 2 * t * (zhat0 - z0)
    return float(np.sum(integrand * w))


def widths_rational(r, a0):
    """Strip widths from (r, a0), by the closed primitive-difference forms.

    Three-cut: tau1 = Re[F(w0) - F(w0~)] + r^2(1-4a0^2-2r^2) ln(w0^3/r);
    tau2 = Re H(w2) - Re H(-r/w2^2); tau3 = Re H(what2) - Re H(1/what2);
    tau4 = tau2 (proved identity); tau5 by real-axis quadrature.
    One-cut: the four-term forms; tau6 by the F/q/log decomposition (with
    the exact log coefficient and q-bracket; equal to the primitive form).
    """
    m = RationalMap(r, a0)
    t0, t1 = _geometry.inverse_t0_t1(r, a0)
    w0, w1, w2 = m.critical_points()
    wt0, wt1, wt2 = -r / np.asarray([w0, w1, w2], dtype=complex) ** 2
    what1, what2 = m.hat_w_pair(t0, t1)
    z0 = float(np.real(m.h(w0)))
    zhat0 = float(np.real(m.h(m.hat_w0())))
    disc = m.hprime_discriminant()
    if t1 >= 0:
        three_cut = disc < 0
    else:
        three_cut = (H_re(m, w0) - H_re(m, float(np.real(wt0)))) > 0
    tau5 = _tau5(m, z0, zhat0)
    if three_cut:
        tau1 = float((_F_tau1(m, w0) - _F_tau1(m, wt0)).real
                     + r * r * (1 - 4 * a0 * a0 - 2 * r * r) * np.log(float(np.real(w0)) ** 3 / r))
        tau2 = float(H_re(m, w2) - H_re(m, wt2))
        tau3 = float(H_re(m, what2) - H_re(m, 1 / what2))
        return Widths(tau1=tau1, tau2=tau2, tau3=tau3, tau4=tau2, tau5=tau5,
                      tau6=None, region="three-cut")
    tau1 = float(H_re(m, w1) + H_re(m, w2) - H_re(m, wt1) - H_re(m, wt2))
    tau2 = float(H_re(m, w2) - H_re(m, wt2))
    tau3 = float(H_re(m, what2) - H_re(m, 1 / what2) + H_re(m, w2) - H_re(m, wt2))
    tau4 = float(H_re(m, wt1) - H_re(m, w1))
    tau6 = _tau6_decomposition(m)
    return Widths(tau1=tau1, tau2=tau2, tau3=tau3, tau4=tau4, tau5=tau5,
                  tau6=tau6, region="one-cut")


def _tau6_decomposition(m):
    """tau6 from the q-bracket/log decomposition (exact coefficients).

    Equal to Re[H(w1) - H(w0)] - Re[H(w1~) - H(w0~)]; the q-bracket keeps
    the exact w^2-coefficient of the reduction and the log coefficient
    1 - 4a0^2 - 2r^2 (the printed decomposition drops one reduction term
    and prints 4*a0*r^2 in the log; both misprints are restored here).
    """
    r, a0 = m.r, m.a0
    w0, w1, w2 = m.critical_points()
    w0 = float(np.real(w0))
    w1 = float(np.real(w1))

    def q(w):
        base = ((12 * r ** 3 + 3 * r ** 5) / w ** 3
                + 6 * a0 * r * r * (5 - r * r) / w ** 2
                + a0 * r * ((12 - 8 * a0) * r * r + 10 * a0) / w
                + 30 * a0 ** 2 * r ** 2 + 4 * a0 ** 3)
        return base + 3 * a0 * r * (4 * a0 + 5 * r * r) / w

    val = ((r + w1 ** 3) / (3 * w1 ** 3) * q(w1)
           - (r + w0 ** 3) / (3 * w0 ** 3) * q(w0)
           + 3 * r * r * (1 - 4 * a0 * a0 - 2 * r * r) * np.log(abs(w1 / w0)))
    return float(val)


def widths(t0, t1):
    """Strip widths at a (t0, t1) parameter point."""
    c = phase.coeffs(t0, t1)
    return widths_rational(c.r, c.a0)
