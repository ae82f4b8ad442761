"""Command-line surface: plot-ready CSV/JSON for every computation.

    nmm phase|boundary|spectral|motherbody|widths|mop
        [--t0 X --t1 Y | --r R --a0 A]
        [--precision binary64|extended] [--out DIR] [--grid N] [--n N]
        [--config FILE]

Outputs are deterministic for a given configuration and precision mode:
every CSV starts with a header row preceded by one provenance comment
carrying a hash of the effective configuration.  Exit codes: 0 success,
2 invalid parameter region, 3 numerical failure (diagnostic JSON written
next to the outputs).
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import motherbody, mop, phase, spectral
from .conformal import RationalMap
from .precision import set_precision

EXIT_OK = 0
EXIT_REGION = 2
EXIT_NUMERIC = 3


def _fmt(x):
    """Shortest round-trip decimal for the active precision."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _config_hash(cfg):
    blob = json.dumps(cfg, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _write_csv(path, header, rows, cfg):
    lines = [f"# config {_config_hash(cfg)}", ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _write_json(path, obj, cfg):
    obj = dict(obj)
    obj["config_hash"] = _config_hash(cfg)
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")


def _resolve_point(args):
    given_tt = args.t0 is not None or args.t1 is not None
    given_ra = args.r is not None or args.a0 is not None
    if given_tt == given_ra:
        raise SystemExit("give exactly one of (--t0,--t1) or (--r,--a0)")
    if given_tt:
        if args.t0 is None or args.t1 is None:
            raise SystemExit("both --t0 and --t1 are required")
        return float(args.t0), float(args.t1)
    if args.r is None or args.a0 is None:
        raise SystemExit("both --r and --a0 are required")
    return phase.inverse_map(float(args.r), float(args.a0))


def cmd_phase(args, cfg, outdir):
    grid = args.grid
    rows = []
    ss = np.linspace(1e-4, 0.5, grid)
    for name, fn in [("gamma_c", phase.gamma_c), ("Gamma_c", phase.big_gamma_c),
                     ("Gamma_c_minus", phase.gamma_c_minus_point)]:
        for s in ss:
            t0v, t1v = fn(float(s))
            try:
                c = phase.coeffs(t0v, t1v) if t0v > 0 else None
            except phase.PhaseError:
                c = None
            rows.append([name, s, t0v, t1v,
                         c.r if c else "", c.a0 if c else ""])
    for rv in np.linspace(0.005, 0.12, max(8, grid // 32)):
        try:
            a0v = phase.gamma_c_minus_a0(float(rv))
        except Exception:
            continue
        t0v, t1v = phase.inverse_map(rv, a0v)
        rows.append(["gamma_c_minus", rv, t0v, t1v, rv, a0v])
    _write_csv(outdir / "phase_curves.csv", ["curve", "s", "t0", "t1", "r", "a0"], rows, cfg)
    if args.t0 is not None or args.r is not None:
        t0v, t1v = _resolve_point(args)
        region = phase.classify(t0v, t1v)
        if region == phase.Region.OUTSIDE:
            _write_json(outdir / "classify.json",
                        {"t0": t0v, "t1": t1v, "region": region.value}, cfg)
            return EXIT_REGION
        c = phase.coeffs(t0v, t1v)
        _write_json(outdir / "classify.json",
                    {"t0": t0v, "t1": t1v, "region": region.value,
                     "r": c.r, "a0": c.a0}, cfg)
    return EXIT_OK


def cmd_boundary(args, cfg, outdir):
    t0v, t1v = _resolve_point(args)
    if phase.classify(t0v, t1v) == phase.Region.OUTSIDE:
        return EXIT_REGION
    c = phase.coeffs(t0v, t1v)
    m = RationalMap(c.r, c.a0)
    n = max(args.grid, 16)
    th = 2 * np.pi * np.arange(n) / n
    pts = m.h(np.exp(1j * th))
    rows = [[th[i], pts[i].real, pts[i].imag] for i in range(n)]
    _write_csv(outdir / "boundary.csv", ["theta", "re", "im"], rows, cfg)
    _write_json(outdir / "boundary.json",
                {"t0": t0v, "t1": t1v, "r": c.r, "a0": c.a0,
                 "area": m.area(), "area_expected": np.pi * t0v,
                 "cusp": bool(m.has_cusp())}, cfg)
    return EXIT_OK


def cmd_spectral(args, cfg, outdir):
    t0v, t1v = _resolve_point(args)
    if phase.classify(t0v, t1v) == phase.Region.OUTSIDE:
        return EXIT_REGION
    sc = spectral.curve_for(t0v, t1v)
    bd = sc.branch_data()
    obj = {"t0": t0v, "t1": t1v, "r": sc.r, "a0": sc.a0, "A": sc.A, "B": sc.B}
    for name in ("z0", "z1", "z2", "zhat0", "zhat1", "zhat2",
                 "w0", "w1", "w2", "what0", "what1", "what2"):
        v = getattr(bd, name)
        obj[name] = [complex(v).real, complex(v).imag]
    _write_json(outdir / "branch_points.json", obj, cfg)
    return EXIT_OK


def cmd_motherbody(args, cfg, outdir):
    t0v, t1v = _resolve_point(args)
    region = phase.classify(t0v, t1v)
    if region == phase.Region.OUTSIDE:
        return EXIT_REGION
    mb = motherbody.trace_support(t0v, t1v)
    rows = []
    for aid, arc in enumerate(mb.arcs):
        s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(arc.points)))])
        for i, z in enumerate(arc.points):
            rows.append([aid, s[i], z.real, z.imag, arc.density[i]])
    _write_csv(outdir / "support.csv", ["arc_id", "s", "re", "im", "density"], rows, cfg)
    _write_json(outdir / "support.json",
                {"t0": t0v, "t1": t1v, "region": mb.region,
                 "z_star": mb.z_star, "masses": list(map(float, mb.masses)),
                 "total_mass": mb.total_mass, "n_arcs": len(mb.arcs)}, cfg)
    return EXIT_OK


def cmd_widths(args, cfg, outdir):
    rows = []
    grid = max(4, args.grid)
    if args.r is not None and args.a0 is not None:
        w = motherbody.widths_rational(float(args.r), float(args.a0))
        rows.append([args.r, args.a0, w.tau1, w.tau2, w.tau3, w.tau4, w.tau5,
                     w.tau6 if w.tau6 is not None else ""])
    else:
        for j in range(1, grid + 1):
            rj = 0.5 * (j - 0.5) / grid
            alpha = min(1.5 * rj ** (2 / 3), (1 - 2 * rj) / 2)
            for k in range(1, grid + 1):
                a0k = alpha * (k - 0.5) / grid
                try:
                    w = motherbody.widths_rational(rj, a0k)
                except Exception:
                    continue
                rows.append([rj, a0k, w.tau1, w.tau2, w.tau3, w.tau4, w.tau5,
                             w.tau6 if w.tau6 is not None else ""])
    _write_csv(outdir / "widths.csv",
               ["r", "a0", "tau1", "tau2", "tau3", "tau4", "tau5", "tau6"], rows, cfg)
    return EXIT_OK


def cmd_mop(args, cfg, outdir):
    t0v, t1v = _resolve_point(args)
    if phase.classify(t0v, t1v) == phase.Region.OUTSIDE:
        return EXIT_REGION
    n = args.n
    poly = mop.solve_pnn(t0v, t1v, n)
    rows = [[n, z.real, z.imag] for z in sorted(poly.zeros, key=lambda v: (v.real, v.imag))]
    _write_csv(outdir / "mop_zeros.csv", ["n", "re", "im"], rows, cfg)
    _write_json(outdir / "mop.json",
                {"t0": t0v, "t1": t1v, "n": n, "condition": poly.condition,
                 "used_extended": poly.used_extended,
                 "coeffs": [float(v) for v in poly.coeffs]}, cfg)
    return EXIT_OK


COMMANDS = {
    "phase": cmd_phase,
    "boundary": cmd_boundary,
    "spectral": cmd_spectral,
    "motherbody": cmd_motherbody,
    "widths": cmd_widths,
    "mop": cmd_mop,
}


def build_parser():
    p = argparse.ArgumentParser(
        prog="nmm",
        description="Cubic normal matrix model computations (CSV/JSON outputs).")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--t0", type=float, default=None, help="area/time parameter")
    p.add_argument("--t1", type=float, default=None, help="linear coefficient")
    p.add_argument("--r", type=float, default=None, help="map coefficient r")
    p.add_argument("--a0", type=float, default=None, help="map coefficient a0")
    p.add_argument("--precision", choices=["binary64", "extended"],
                   default="binary64", help="working precision (default binary64)")
    p.add_argument("--out", default=".", help="output directory (default .)")
    p.add_argument("--grid", type=int, default=512,
                   help="samples for curves/grids (default 512)")
    p.add_argument("--n", type=int, default=10,
                   help="polynomial degree for the mop command (even, default 10)")
    p.add_argument("--config", default=None,
                   help="JSON config file; CLI flags override its entries")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        file_cfg = json.loads(Path(args.config).read_text())
        for key, val in file_cfg.items():
            if getattr(args, key, None) is None:
                setattr(args, key, val)
    set_precision(args.precision)
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        code = COMMANDS[args.command](args, cfg, outdir)
    except (phase.OutsideRegionError,) as exc:
        _write_json(outdir / "error.json", {"error": str(exc), "kind": "region"}, cfg)
        return EXIT_REGION
    except Exception as exc:  # numerical failure: diagnostic JSON + exit 3
        _write_json(outdir / "error.json",
                    {"error": str(exc), "kind": type(exc).__name__}, cfg)
        return EXIT_NUMERIC
    return code


if __name__ == "__main__":
    sys.exit(main())
