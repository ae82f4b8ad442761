"""Multiple orthogonal polynomials P_{n,n} from Airy-weight orthogonality.

The defining conditions: for even n,

  sum_l int_{S_l} P(z) z^k e^{(n/t0) V(z)} y_l(c_n (z - t1)) dz = 0,
      k = 0 .. ceil(n/2)-1,
  sum_l int_{S_l} P(z) z^k e^{(n/t0) V(z)} y_l'(c_n (z - t1)) dz = 0,
      k = 0 .. floor(n/2)-1,

with y_l(x) = omega^l Ai(omega^l x), c_n = (n/t0)^(2/3), and contours S_l
running from the common point a_* to the singular point zhat_l.  The
integrand is entire, so only the endpoints matter; a_* is taken to be the
support junction (the left branch point in the one-cut case).

Every moment is stored as mantissa*exp(S) with an analytic exponent offset
(the scaled Airy functions absorb the Airy decay), so binary64 survives
n = 20 at desk-scale t0; the linear solve switches to 50-digit arithmetic
when the column-scaled condition number passes 1e10.
"""

from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from . import motherbody, phase, spectral
from .precision import get_precision

__all__ = [
    "MopError",
    "MomentTable",
    "MOPolynomial",
    "weights_y",
    "contours_for",
    "moments",
    "solve_pnn",
    "orthogonality_residual",
    "zero_stats",
]

OMEGA = np.exp(2j * np.pi / 3)
COND_SWITCH = 1e10
N_MAX_BINARY64 = 20
N_MAX = 40


class MopError(Exception):
    pass


def weights_y(l, x, derivative=False):
    """y_l(x) = omega^l Ai(omega^l x); derivative in x if requested."""
    if l not in (0, 1, 2):
        raise MopError("weight index must be 0, 1 or 2")
    x = complex(x)
    if derivative:
        ai, aip, _, _ = special.airy(OMEGA ** l * x)
        return OMEGA ** (2 * l) * complex(aip)
    ai, _, _, _ = special.airy(OMEGA ** l * x)
    return OMEGA ** l * complex(ai)


def rotation_sum_y(x):
    """y_0 + y_1 + y_2 (vanishes identically)."""
    return weights_y(0, x) + weights_y(1, x) + weights_y(2, x)


@dataclass
class MomentTable:
    """Scaled contour moments.

    values[l, k, j] with j in {0 (function), 1 (derivative)}; the true
    moment is values[l, k, j] * exp(logscale[l, j]).
    """

    n: int
    t0: float
    t1: float
    kmax: int
    values: np.ndarray          # complex (3, kmax+1, 2)
    logscale: np.ndarray        # float (3, 2)
    contours: list
    mp_values: object = None    # mpmath matrix-backed list in extended mode


def contours_for(t0, t1):
    """Integration contours: straight chords from a_* to the three
    singular points (the integrand is entire, only endpoints matter)."""
    sc = spectral.curve_for(t0, t1)
    bd = sc.branch_data()
    cs = sc.cuts
    if cs.region == "three-cut" or t1 < 0:
        a_star = cs.z_star
    else:
        a_star = float(np.real(cs.z1))
    ends = [bd.zhat0, bd.zhat1, bd.zhat2]
    return [np.array([complex(a_star), complex(e)]) for e in ends]


def _fused_exponent(z, l, t0, t1, n):
    """(n/t0) V(z) - (2/3) zeta^(3/2) with zeta = omega^l c_n (z - t1).

    This is the exact log-magnitude carried by exp((n/t0)V) * y_l once the
    Airy factor is replaced by its scaled variant.
    """
    cn = (n / t0) ** (2 / 3)
    zeta = OMEGA ** l * cn * (z - t1)
    return (n / t0) * (z ** 3 / 3 + t1 * z) - (2 / 3) * zeta * np.sqrt(zeta)


def _scaled_weight(z, l, j, t0, t1, n):
    """omega^{l(1+j)} * scaled Airy (Aie or Aie') at zeta."""
    cn = (n / t0) ** (2 / 3)
    zeta = OMEGA ** l * cn * (z - t1)
    aie, aipe, _, _ = special.airye(zeta)
    base = aipe if j else aie
    return OMEGA ** (l * (1 + j)) * base


def moments(t0, t1, n, kmax=None, nodes=2048):
    """Contour moments M[l][k][j] for k <= kmax (default n + ceil(n/2)).

    Fixed-order Gauss-Legendre per contour chord with the node count
    doubled until the relative change is below 1e-11; the z^k factors are
    applied vectorized over k.  Extended mode redoes the quadrature in
    50-digit arithmetic on mpmath-polished nodes.
    """
    if n % 2 or n < 2:
        raise MopError("only even n >= 2 is implemented")
    if n > N_MAX:
        raise MopError(f"n above the supported cap {N_MAX}")
    if kmax is None:
        kmax = n + (n + 1) // 2
    conts = contours_for(t0, t1)
    vals = np.zeros((3, kmax + 1, 2), dtype=complex)
    logsc = np.zeros((3, 2))
    for l in range(3):
        a, b = conts[l][0], conts[l][-1]
        for j in (0, 1):
            prev = None
            m_nodes = nodes
            while True:
                x, wq = np.polynomial.legendre.leggauss(m_nodes)
                zs = 0.5 * (b - a) * x + 0.5 * (a + b)
                jac = 0.5 * (b - a)
                E = _fused_exponent(zs, l, t0, t1, n)
                S = float(np.max(E.real))
                core = _scaled_weight(zs, l, j, t0, t1, n) * np.exp(E - S) * jac
                powers = zs[None, :] ** np.arange(kmax + 1)[:, None]
                out = powers @ (wq * core)
                if prev is not None:
                    scale = np.max(np.abs(out)) or 1.0
                    if np.max(np.abs(out - prev)) < 1e-11 * scale:
                        break
                if m_nodes >= 8 * nodes:
                    break
                prev = out
                m_nodes *= 2
            vals[l, :, j] = out
            logsc[l, j] = S
    table = MomentTable(n=n, t0=t0, t1=t1, kmax=kmax, values=vals,
                        logscale=logsc, contours=conts)
    if get_precision() == "extended":
        table.mp_values = _moments_mp(table, nodes=max(nodes, 1024))
    return table


def _mp_leggauss(npts):
    """Gauss-Legendre nodes/weights polished to mpmath accuracy."""
    x0, w0 = np.polynomial.legendre.leggauss(npts)
    xs, ws = [], []
    for xk in x0:
        x = mpmath.mpf(float(xk))
        for _ in range(3):
            p0, p1 = mpmath.mpf(1), x
            for k in range(2, npts + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = npts * (x * p1 - p0) / (x * x - 1)
            x = x - p1 / dp
        p0, p1 = mpmath.mpf(1), x
        for k in range(2, npts + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = npts * (x * p1 - p0) / (x * x - 1)
        xs.append(x)
        ws.append(2 / ((1 - x * x) * dp * dp))
    return xs, ws


_MP_GL_CACHE = {}


def _moments_mp(table, nodes=1024):
    """Recompute the moments in extended precision (unscaled mpmath)."""
    n, t0, t1, kmax = table.n, table.t0, table.t1, table.kmax
    if nodes not in _MP_GL_CACHE:
        _MP_GL_CACHE[nodes] = _mp_leggauss(nodes)
    xs, ws = _MP_GL_CACHE[nodes]
    omega = mpmath.exp(2j * mpmath.pi / 3)
    cn = mpmath.mpf(n) / t0
    cn23 = cn ** (mpmath.mpf(2) / 3)
    out = [[[mpmath.mpc(0) for _ in range(2)] for _ in range(kmax + 1)] for _ in range(3)]
    for l in range(3):
        a = mpmath.mpc(complex(table.contours[l][0]))
        b = mpmath.mpc(complex(table.contours[l][-1]))
        jac = (b - a) / 2
        for xk, wk in zip(xs, ws):
            z = (b - a) / 2 * xk + (a + b) / 2
            zeta = omega ** l * cn23 * (z - t1)
            E = mpmath.exp(cn * (z ** 3 / 3 + t1 * z))
            ai = mpmath.airyai(zeta)
            aip = mpmath.airyai(zeta, 1)
            base0 = omega ** l * ai * E * jac * wk
            base1 = omega ** (2 * l) * aip * E * jac * wk
            zp = mpmath.mpc(1)
            for k in range(kmax + 1):
                out[l][k][0] += zp * base0
                out[l][k][1] += zp * base1
                zp *= z
    return out


@dataclass
class MOPolynomial:
    """A diagonal polynomial: monic coefficients (ascending) and zeros."""

    n: int
    coeffs: np.ndarray          # ascending powers, length n+1, real
    zeros: np.ndarray
    condition: float
    used_extended: bool

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)


def _build_system(table):
    """Real orthogonality system: A x = rhs for the non-leading coeffs.

    Row block j=0: k = 0..ceil(n/2)-1; block j=1: k = 0..floor(n/2)-1.
    Entry (k, m) = sum_l M[l][k+m][j]; conjugate contours make the l-sum
    real up to roundoff.  Rows carry the per-j exponent offsets, then each
    row is normalized by its max magnitude.
    """
    n = table.n
    rows_j0 = (n + 1) // 2
    rows_j1 = n // 2
    A = np.zeros((n, n))
    rhs = np.zeros(n)
    scales = []
    for block, (j, nrows) in enumerate([(0, rows_j0), (1, rows_j1)]):
        Smax = float(np.max(table.logscale[:, j]))
        fac = np.exp(table.logscale[:, j] - Smax)
        for k in range(nrows):
            row = np.zeros(n + 1)
            for mcol in range(n + 1):
                s = (table.values[0, k + mcol, j] * fac[0]
                     + 2 * (table.values[1, k + mcol, j] * fac[1]).real)
                row[mcol] = s.real
            r = k if j == 0 else rows_j0 + k
            scale = np.max(np.abs(row)) or 1.0
            A[r, :] = row[:n] / scale
            rhs[r] = -row[n] / scale
            scales.append(scale)
    return A, rhs


def _solve_mp(table):
    """Extended-precision assembly and LU solve of the same system."""
    n = table.n
    vals = table.mp_values
    if vals is None:
        vals = _moments_mp(table)
        table.mp_values = vals
    rows_j0 = (n + 1) // 2
    A = mpmath.matrix(n, n)
    rhs = mpmath.matrix(n, 1)
    r = 0
    for j, nrows in [(0, rows_j0), (1, n // 2)]:
        for k in range(nrows):
            row = [vals[0][k + mcol][j] + vals[1][k + mcol][j] + vals[2][k + mcol][j]
                   for mcol in range(n + 1)]
            scale = max(abs(v) for v in row)
            for mcol in range(n):
                A[r, mcol] = (row[mcol] / scale).real
            rhs[r] = -(row[n] / scale).real
            r += 1
    sol = mpmath.lu_solve(A, rhs)
    return np.array([float(sol[i]) for i in range(n)])


def solve_pnn(t0, t1, n, table=None):
    """Solve the n x n orthogonality system for the monic P_{n,n}.

    Column-scaled solve with the condition number reported; switches to
    50-digit arithmetic when the condition number exceeds 1e10 (or when
    the global precision mode is extended).  Zeros come from the
    companion matrix of the monic coefficients.
    """
    if n % 2:
        raise MopError("only even n is implemented")
    if table is None:
        table = moments(t0, t1, n)
    A, rhs = _build_system(table)
    colscale = np.max(np.abs(A), axis=0)
    colscale[colscale == 0] = 1.0
    As = A / colscale
    cond = float(np.linalg.cond(As))
    used_extended = False
    if cond > COND_SWITCH or get_precision() == "extended":
        coeffs_low = _solve_mp(table)
        used_extended = True
    else:
        y = np.linalg.solve(As, rhs)
        coeffs_low = y / colscale
    coeffs = np.concatenate([coeffs_low, [1.0]])
    zeros = np.roots(coeffs[::-1])
    return MOPolynomial(n=n, coeffs=coeffs, zeros=zeros,
                        condition=cond, used_extended=used_extended)


def orthogonality_residual(poly, table):
    """Max over conditions of |sum_l int P z^k w_l| relative to the size
    of the monomial contributions entering the sum."""
    n = poly.n
    rows_j0 = (n + 1) // 2
    worst = 0.0
    if table.mp_values is not None:
        vals = table.mp_values
        for j, nrows in [(0, rows_j0), (1, n // 2)]:
            for k in range(nrows):
                acc = mpmath.mpc(0)
                mag = mpmath.mpf(0)
                for mcol in range(n + 1):
                    mom = vals[0][k + mcol][j] + vals[1][k + mcol][j] + vals[2][k + mcol][j]
                    term = mpmath.mpf(float(poly.coeffs[mcol])) * mom
                    acc += term
                    mag = max(mag, abs(term))
                worst = max(worst, float(abs(acc) / mag))
        return worst
    for j, nrows in [(0, rows_j0), (1, n // 2)]:
        fac = np.exp(table.logscale[:, j] - np.max(table.logscale[:, j]))
        for k in range(nrows):
            moms = (table.values[0, k:k + n + 1, j] * fac[0]
                    + 2 * (table.values[1, k:k + n + 1, j] * fac[1]).real).real
            terms = poly.coeffs * moms
            worst = max(worst, abs(np.sum(terms)) / np.max(np.abs(terms)))
    return float(worst)


def zero_stats(poly, mb):
    """Zero placement against the support: max distance and arc fractions."""
    pts = np.concatenate([arc.points for arc in mb.arcs])
    dists = np.array([np.min(np.abs(pts - z)) for z in poly.zeros])
    counts = np.zeros(len(mb.arcs))
    for z in poly.zeros:
        d = [np.min(np.abs(arc.points - z)) for arc in mb.arcs]
        counts[int(np.argmin(d))] += 1
    return {
        "max_distance": float(np.max(dists)),
        "mean_distance": float(np.mean(dists)),
        "arc_fractions": counts / poly.n,
        "arc_masses": np.asarray(mb.masses, dtype=float),
        "n": poly.n,
    }
