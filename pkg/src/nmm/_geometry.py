"""Internal cut-system machinery shared by spectral, motherbody and rh.

The three solution branches of the spectral curve live on a three-sheeted
cover of the plane.  This module computes the concrete cut layout for a
parameter point (junction point, traced support arcs, real-axis cuts),
walks the three h-preimages continuously along paths while accounting for
label swaps at cut crossings, and traces level arcs of Re(integral of the
branch difference) -- the trajectories that carry the skeleton measure.

Everything here is exact up to root-solving: integrals of branch values
reduce to differences of the primitive H of h'(w)h(1/w) evaluated at
w-preimages (see conformal.H_re), so no quadrature drift accumulates.
"""

from dataclasses import dataclass, field

import numpy as np

from .conformal import RationalMap, H_re, ConformalError
from . import numerics

__all__ = ["CutSystem", "cut_system", "TraceError"]

# level-arc tracer controls
TRACE_STEP_SCALE = 1e-3        # step = TRACE_STEP_SCALE * |z0 - z1|
TRACE_NEWTON_TOL = 1e-12
TRACE_MAX_STEPS = 10 ** 6

# bracket scan for the junction point: number of uniform scan points and
# the left-bound heuristic multiplier (both fixed, see module phase docs)
ZSTAR_SCAN_POINTS = 200
ZSTAR_SPAN_FACTOR = 10.0


class TraceError(Exception):
    """Level-arc tracing failed (step underflow or budget exhausted)."""


class SideHintError(Exception):
    """Evaluation on a cut requires a side hint."""


def inverse_t0_t1(r, a0):
    """(t0, t1) from (r, a0) via the nonlinear coefficient system."""
    return r * r * (1 - 4 * a0 * a0) - 2 * r ** 4, (1 - 4 * r * r) * a0 - a0 * a0


# ----------------------------------------------------------------------
# root continuation along paths
# ----------------------------------------------------------------------

def _match(ws_prev, ws_new):
    """Greedy nearest matching of 3 new roots to 3 previous ones.

    Returns (matched array, margin), margin = smallest ratio between the
    runner-up and chosen distances over the three assignments.
    """
    ws_new = np.asarray(ws_new)
    taken = np.zeros(3, dtype=bool)
    out = np.zeros(3, dtype=complex)
    margin = np.inf
    order = np.argsort([min(abs(ws_new - w)) for w in ws_prev])
    for i in order:
        d = np.abs(ws_new - ws_prev[i])
        d[taken] = np.inf
        j = int(np.argmin(d))
        out[i] = ws_new[j]
        rest = np.sort(d)
        if rest[1] != np.inf and rest[0] > 0:
            margin = min(margin, rest[1] / rest[0])
        taken[j] = True
    return out, margin


def continue_roots(m, za, ws_a, zb, depth=0):
    """Continue the triple of h-preimages from za to zb along the segment."""
    ws_new = np.asarray(m.preimages(zb))
    out, margin = _match(ws_a, ws_new)
    if margin > 3.0 or depth >= 48:
        return out
    zm = 0.5 * (za + zb)
    mid = continue_roots(m, za, ws_a, zm, depth + 1)
    return continue_roots(m, zm, mid, zb, depth + 1)


def continue_pair(m, za, pair_a, zb, depth=0):
    """Continue a 2-subset of the h-preimages from za to zb."""
    ws_new = np.asarray(m.preimages(zb))
    ia = int(np.argmin(np.abs(ws_new - pair_a[0])))
    wa = ws_new[ia]
    rest = np.delete(ws_new, ia)
    ib = int(np.argmin(np.abs(rest - pair_a[1])))
    wb = rest[ib]
    d = abs(za - zb)
    sep = min(abs(wa - pair_a[0]) + abs(wb - pair_a[1]), 1.0)
    if depth >= 48 or sep < 0.25 * max(abs(wa - wb), 1e-14):
        return np.array([wa, wb])
    zm = 0.5 * (za + zb)
    mid = continue_pair(m, za, pair_a, zm, depth + 1)
    return continue_pair(m, zm, mid, zb, depth + 1)


def continue_arg(w_path):
    """Continuously tracked arg along a w-path (for the H log branch)."""
    w = np.asarray(w_path)
    ang = np.angle(w)
    inc = np.diff(ang)
    inc = (inc + np.pi) % (2 * np.pi) - np.pi
    return ang[0] + np.concatenate([[0.0], np.cumsum(inc)])


# ----------------------------------------------------------------------
# level-arc tracer
# ----------------------------------------------------------------------

def _branch_directions(m, z_br, w_br):
    """The three level directions of Re(int Q) at a branch point.

    Near z_br the colliding pair difference behaves like c*(z-z_br)^(1/2),
    so the primitive ~ (2c/3)(z-z_br)^(3/2) and the level rays sit at
    theta = (pi/2 + k*pi - arg c) * 2/3; the set is invariant under the
    sign ambiguity of c.
    """
    hpp = complex(m.d2h(w_br))
    c = -2 * m.dh(1 / w_br) / w_br ** 2 * np.sqrt(2 / hpp)
    base = (np.pi / 2 - np.angle(c)) * 2 / 3
    return np.sort(np.mod(base + np.array([0, 1, 2]) * 2 * np.pi / 3, 2 * np.pi))


def _start_pair(m, z_br, w_br, z_first):
    ws = np.asarray(m.preimages(z_first))
    idx = np.argsort(np.abs(ws - w_br))
    return ws[idx[:2]]


@dataclass
class LevelArc:
    """A traced arc of Re(int of branch difference) = const."""

    z: np.ndarray              # sampled points
    pair: np.ndarray           # (N, 2) w-values of the tracked branch pair
    hit_axis: bool = False


def trace_level_arc(m, z_br, w_br, direction, step, max_len, stop_at_axis=True,
                    rmax=None, newton_tol=TRACE_NEWTON_TOL):
    """Trace the level arc of the colliding pair from a branch point.

    The level function G(z) = Re[H(w_a) - H(w_b)] vanishes identically on
    the arc; each predictor step is corrected along the normal with Newton
    on G (the derivative of H(w_j(z)) in z is exactly the branch value, so
    dG along direction n is Re(Q*n)).
    """
    delta = 10 * step
    z = z_br + delta * np.exp(1j * direction)
    pair = _start_pair(m, z_br, w_br, z)
    return _trace_level_from(
        m, [z_br, z], [np.array([w_br, w_br]), pair], direction, step, max_len,
        stop_at_axis=stop_at_axis, rmax=rmax, newton_tol=newton_tol)


def trace_level_resume(m, z_start, pair_start, direction, step, max_len,
                       stop_at_axis=False, rmax=None):
    """Continue a level arc from a known on-arc point and branch pair."""
    return _trace_level_from(m, [z_start], [np.asarray(pair_start)], direction,
                             step, max_len, stop_at_axis=stop_at_axis, rmax=rmax)


def _trace_level_from(m, zs0, ps0, direction, step, max_len, stop_at_axis,
                      rmax=None, newton_tol=TRACE_NEWTON_TOL):
    zs = list(zs0)
    ps = list(ps0)
    z = zs[-1]
    pair = ps[-1]
    hit = False
    nsteps = int(min(TRACE_MAX_STEPS, max_len / step))
    prev_dir = np.exp(1j * direction)
    for _ in range(nsteps):
        Q = m.h(1 / pair[0]) - m.h(1 / pair[1])
        if abs(Q) == 0:
            raise TraceError("branch pair collided during trace")
        tau = 1j * np.conj(Q) / abs(Q)
        if (tau * np.conj(prev_dir)).real < 0:
            tau = -tau
        znew = z + step * tau
        pnew = continue_pair(m, z, pair, znew)
        for _ in range(4):
            G = H_re(m, pnew[0]) - H_re(m, pnew[1])
            Qn = m.h(1 / pnew[0]) - m.h(1 / pnew[1])
            nvec = 1j * tau
            dG = (Qn * nvec).real
            if abs(dG) < 1e-300 or abs(G) < newton_tol:
                break
            znew = znew - nvec * G / dG
            pnew = continue_pair(m, z, pair, znew)
        prev_dir = znew - z if znew != z else prev_dir
        if stop_at_axis and znew.imag * z.imag < 0:
            f = z.imag / (z.imag - znew.imag)
            zc = z + f * (znew - z)
            pc = continue_pair(m, z, pair, zc)
            # polish the crossing on the real axis with the level function
            x = zc.real
            def gx(xv):
                p = continue_pair(m, zc, pc, complex(xv))
                return H_re(m, p[0]) - H_re(m, p[1])
            try:
                x = numerics.real_root_in(gx, x - 2 * step, x + 2 * step, xtol=1e-15)
            except numerics.NumericsError:
                pass
            zc = complex(x)
            pc = continue_pair(m, z, pair, zc)
            zs.append(zc)
            ps.append(pc)
            hit = True
            break
        zs.append(znew)
        ps.append(pnew)
        z, pair = znew, pnew
        if rmax is not None and abs(z) > rmax:
            break
    else:
        if stop_at_axis:
            raise TraceError("arc-length budget exhausted before reaching the axis")
    return LevelArc(z=np.array(zs), pair=np.array(ps), hit_axis=hit)


def trace_support_arc(m, z_br, w_br, step_scale=TRACE_STEP_SCALE):
    """Trace the skeleton arc from the lower branch point to the real axis."""
    z0 = _real_branch_z(m)
    scale = abs(z0 - z_br)
    step = step_scale * scale
    dirs = _branch_directions(m, z_br, w_br)
    # prefer directions pointing up toward the axis (z_br is in the lower
    # half plane); validated post hoc by axis arrival
    order = np.argsort(-np.sin(dirs))
    last_exc = None
    for k in order:
        try:
            arc = trace_level_arc(m, z_br, w_br, dirs[k], step,
                                  max_len=60 * scale, stop_at_axis=True)
            if arc.hit_axis:
                return _densify_branch_end(m, arc)
        except TraceError as exc:
            last_exc = exc
    raise TraceError(f"no level direction reaches the axis: {last_exc}")


def _densify_branch_end(m, arc, extra=24):
    """Insert graded samples between the branch point and the first traced
    sample, so the square-root density profile is resolved there."""
    z_br = arc.z[0]
    z_first = arc.z[1]
    pair_first = arc.pair[1]
    frac = (np.arange(1, extra + 1) / (extra + 1.0)) ** 2
    z_new = z_br + (z_first - z_br) * frac
    pairs_new = []
    zp, pp = z_first, pair_first
    for zn in z_new[::-1]:
        pp = continue_pair(m, zp, pp, zn)
        pairs_new.append(pp)
        zp = zn
    pairs_new = np.array(pairs_new[::-1])
    z_all = np.concatenate([[arc.z[0]], z_new, arc.z[1:]])
    p_all = np.concatenate([[arc.pair[0]], pairs_new, arc.pair[1:]])
    return LevelArc(z=z_all, pair=p_all, hit_axis=arc.hit_axis)


def _real_branch_z(m):
    w0, _, _ = m.critical_points()
    return float(np.real(m.h(w0)))


# ----------------------------------------------------------------------
# junction point scan (three-cut geometry)
# ----------------------------------------------------------------------

def junction_scan_three_cut(m):
    """Largest real y < z0 where Re(int from z2 of branch-pair diff) = 0.

    For real y below the real branch point the preimage triple is one real
    root plus a conjugate pair; the level function is the difference of
    Re H between the pair and the real root (both sides of the relevant
    cut share Re H).  The junction is its rightmost zero.
    """
    w0, w1, w2 = m.critical_points()
    z0 = _real_branch_z(m)
    z1 = complex(m.h(w1))
    span = ZSTAR_SPAN_FACTOR * max(abs(z0 - z1), 0.05 * abs(z0) + 1e-3)

    def phi(y):
        ws = np.asarray(m.preimages(complex(y)))
        im = np.abs(ws.imag)
        k = int(np.argmin(im))
        w_real = ws[k]
        rest = np.delete(ws, k)
        if np.abs(rest.imag).min() < 1e-12 * (1 + np.abs(rest).max()):
            return np.nan
        return H_re(m, rest[0]) - H_re(m, w_real)

    ys = np.linspace(z0 - 1e-12 * (1 + abs(z0)), z0 - span, ZSTAR_SCAN_POINTS)
    vprev, yprev = None, None
    for y in ys:
        v = phi(y)
        if vprev is not None and np.isfinite(v) and np.isfinite(vprev) and v * vprev < 0:
            return numerics.real_root_in(phi, y, yprev, xtol=1e-15)
        if np.isfinite(v):
            vprev, yprev = v, y
    raise numerics.NoBracketError("no junction bracket found left of the real branch point")


# ----------------------------------------------------------------------
# the cut system
# ----------------------------------------------------------------------

@dataclass
class Cut:
    pair: tuple                # connected sheets, e.g. (1, 3)
    kind: str                  # "segment" | "arc" | "ray"
    points: np.ndarray = None  # polyline for segment/arc
    x_end: float = None        # for a ray (-inf, x_end]


class CutSystem:
    """Cut layout and sheet-label walker for one parameter point."""

    def __init__(self, m: RationalMap):
        self.m = m
        self.t0, self.t1 = inverse_t0_t1(m.r, m.a0)
        self.w0, self.w1, self.w2 = m.critical_points()
        self.z0 = float(np.real(m.h(self.w0)))
        self.z1 = complex(m.h(self.w1))
        self.z2 = complex(m.h(self.w2))
        self.hat_w0 = m.hat_w0()
        self.hat_z0 = float(np.real(m.h(self.hat_w0)))
        try:
            self.hat_w1, self.hat_w2 = m.hat_w_pair(self.t0, self.t1)
            self.hat_z1 = complex(m.h(self.hat_w1))
            self.hat_z2 = complex(m.h(self.hat_w2))
        except ConformalError:
            self.hat_w1 = self.hat_w2 = None
            self.hat_z1 = self.hat_z2 = None
        self.region = self._decide_region()
        self.z_star = None
        self.arc1 = None          # traced lower-half-plane arc (LevelArc)
        self.cuts = []
        self._build_cuts()
        far = max(1.0, abs(self.z0), abs(self.z1), abs(self.hat_z0),
                  abs(self.hat_z1) if self.hat_z1 is not None else 0.0)
        self.R_ref = 4.0 * far + 6.0
        self._anchor = self._anchor_labels()

    # -- region ---------------------------------------------------------
    def _decide_region(self):
        disc = self.m.hprime_discriminant()
        if self.t1 >= 0:
            return "one-cut" if disc > 0 else "three-cut"
        # negative t1: the junction width tau1 changes sign at the
        # mother-body transition (positive on the three-cut side)
        tau1 = H_re(self.m, self.w0) - H_re(self.m, -self.m.r / self.w0 ** 2)
        return "three-cut" if tau1 > 0 else "one-cut"

    # -- cut layout -------------------------------------------------------
    def _build_cuts(self):
        m = self.m
        if self.region == "three-cut":
            self.arc1 = trace_support_arc(m, self.z1, self.w1)
            self.z_star = float(self.arc1.z[-1].real)
            seg = np.array([complex(self.z_star), complex(self.z0)])
            self.cuts.append(Cut(pair=(1, 3), kind="segment", points=seg))
            self.cuts.append(Cut(pair=(1, 2), kind="arc", points=self.arc1.z))
            self.cuts.append(Cut(pair=(1, 2), kind="arc", points=np.conj(self.arc1.z)))
            self.cuts.append(Cut(pair=(2, 3), kind="ray", x_end=self.z_star))
        elif self.t1 >= 0:  # one-cut, nonnegative t1: support on the real axis
            seg = np.array([complex(np.real(self.z1)), complex(self.z0)])
            self.cuts.append(Cut(pair=(1, 3), kind="segment", points=seg))
            self.cuts.append(Cut(pair=(2, 3), kind="ray", x_end=float(np.real(self.z2))))
        else:  # one-cut, negative t1: single arc crossing the axis right of z0
            self.arc1 = trace_support_arc(m, self.z1, self.w1)
            self.z_star = float(self.arc1.z[-1].real)
            full = np.concatenate([self.arc1.z, np.conj(self.arc1.z[-2::-1])])
            self.cuts.append(Cut(pair=(1, 2), kind="arc", points=full))
            self.cuts.append(Cut(pair=(2, 3), kind="ray", x_end=self.z0))

    # -- anchor labels ----------------------------------------------------
    def _anchor_labels(self):
        """w-preimages at the far-right anchor, ordered as sheets (1, 2, 3)."""
        z = complex(self.R_ref)
        ws = np.asarray(self.m.preimages(z))
        i1 = int(np.argmax(np.abs(ws)))
        rest = np.delete(ws, i1)
        xi = self.m.h(1 / rest)
        i3 = int(np.argmax(xi.real))
        w3 = rest[i3]
        w2 = rest[1 - i3]
        return np.array([ws[i1], w2, w3])

    # -- crossing bookkeeping ----------------------------------------------
    def _segment_cut_crossings(self, za, zb):
        """Cut crossings of the straight segment (za, zb), in path order."""
        hits = []
        d = zb - za
        for cut in self.cuts:
            if cut.kind == "ray":
                if za.imag == zb.imag:
                    continue
                t = za.imag / (za.imag - zb.imag)
                if 0 < t < 1:
                    xc = (za + t * d).real
                    if xc <= cut.x_end:
                        hits.append((t, cut.pair))
                continue
            p = cut.points
            a = p[:-1]
            b = p[1:]
            e = b - a
            denom = (d.real * e.imag - d.imag * e.real)
            ok = np.abs(denom) > 1e-300
            safe = np.where(ok, denom, 1.0)
            pq = a - za
            t = np.where(ok, (pq.real * e.imag - pq.imag * e.real) / safe, np.inf)
            u = np.where(ok, (pq.real * d.imag - pq.imag * d.real) / safe, np.inf)
            sel = (t > 0) & (t < 1) & (u >= 0) & (u < 1)
            for tv in np.atleast_1d(t[sel]):
                hits.append((float(tv), cut.pair))
        hits.sort(key=lambda h: h[0])
        return hits

    # -- walking -----------------------------------------------------------
    def _walk_segment(self, za, labels, zb, nsub=None):
        """Continue labeled roots from za to zb, applying cut swaps."""
        if nsub is None:
            nsub = max(4, int(abs(zb - za) / (0.02 * self.R_ref)) + 1)
        pts = za + (zb - za) * np.linspace(0, 1, nsub + 1)[1:]
        ws = labels["ws"]
        for p in pts:
            ws = continue_roots(self.m, za, ws, p)
            za = p
        perm = list(labels["perm"])
        for _, pair in self._segment_cut_crossings(labels["z"], zb):
            j, k = pair
            a, b = perm.index(j), perm.index(k)
            perm[a], perm[b] = perm[b], perm[a]
        return {"z": zb, "ws": ws, "perm": perm}

    def _walk_to(self, z):
        """Walk from the anchor to z: circle arc then radial segment."""
        z = complex(z)
        state = {"z": complex(self.R_ref), "ws": self._anchor.copy(), "perm": [1, 2, 3]}
        theta = np.angle(z) if z != 0 else 0.0
        R = self.R_ref
        nacc = max(6, int(abs(theta) / 0.15) + 1)
        for t in np.linspace(0, theta, nacc + 1)[1:]:
            state = self._walk_segment(state["z"], state, R * np.exp(1j * t), nsub=2)
        # radial leg (crossings with compact cuts handled by bookkeeping)
        state = self._walk_segment(state["z"], state, z)
        return state

    def labels_at(self, z, side=None):
        """w-preimages of z indexed by sheet: array [w^(1), w^(2), w^(3)].

        ``side=+1`` (or -1) nudges z off a cut to its upper (lower) side
        before walking; without a hint, evaluation within 1e-11 of a cut
        raises :class:`SideHintError`.
        """
        z = complex(z)
        if side is not None:
            z = z + 1j * side * 1e-9 * (1 + abs(z))
        elif self._near_cut(z):
            raise SideHintError(f"point {z} lies on a branch cut; pass side=+1 or -1")
        state = self._walk_to(z)
        out = np.zeros(3, dtype=complex)
        for slot, sheet in enumerate(state["perm"]):
            out[sheet - 1] = state["ws"][slot]
        return out

    def _near_cut(self, z, tol=1e-11):
        for cut in self.cuts:
            if cut.kind == "ray":
                if abs(z.imag) < tol and z.real <= cut.x_end + tol:
                    return True
            else:
                p = cut.points
                a, b = p[:-1], p[1:]
                e = b - a
                t = np.clip(((z - a) * np.conj(e)).real / np.abs(e) ** 2, 0, 1)
                if np.min(np.abs(a + t * e - z)) < tol:
                    return True
        return False

    def labels_along(self, points, side=None):
        """Sheet-labeled w-preimages along a path; (N, 3) array.

        The first point is labeled by an anchor walk; labels propagate by
        continuation, swapping at every cut crossing of the polyline.
        ``side`` applies a uniform +i/-i nudge (for paths on the axis).
        """
        pts = np.asarray(points, dtype=complex)
        if side is not None:
            pts = pts + 1j * side * 1e-9 * (1 + np.abs(pts))
        state = self._walk_to(pts[0])
        out = np.zeros((len(pts), 3), dtype=complex)

        def emit(i, st):
            for slot, sheet in enumerate(st["perm"]):
                out[i, sheet - 1] = st["ws"][slot]

        emit(0, state)
        for i in range(1, len(pts)):
            state = self._walk_segment(state["z"], state, pts[i], nsub=1)
            emit(i, state)
        return out

    def xi_at(self, z, side=None):
        """Branch values (xi1, xi2, xi3) at z, labeled by sheet."""
        ws = self.labels_at(z, side=side)
        return np.asarray(self.m.h(1 / ws))

    def xi_along(self, points, side=None):
        ws = self.labels_along(points, side=side)
        return np.asarray(self.m.h(1 / ws))

    def inverse_psi(self, z, sheet, side=None):
        if sheet not in (1, 2, 3):
            raise ValueError("sheet must be 1, 2 or 3")
        w = self.labels_at(z, side=side)[sheet - 1]
        # Newton polish on h(w) = z
        for _ in range(8):
            f = complex(self.m.h(w)) - z
            if abs(f) < 1e-13 * (1 + abs(z)):
                break
            df = complex(self.m.dh(w))
            if df == 0:
                break
            w = w - f / df
        return complex(w)


_CACHE = {}


def cut_system(m: RationalMap) -> CutSystem:
    """Cached cut system for a parameter point."""
    key = (round(m.r, 15), round(m.a0, 15))
    cs = _CACHE.get(key)
    if cs is None:
        cs = CutSystem(m)
        if len(_CACHE) > 64:
            _CACHE.clear()
        _CACHE[key] = cs
    return cs
