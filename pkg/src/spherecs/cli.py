"""Command-line interface.

Subcommands: kernel, coherent, transform, invert, husimi, resolve-identity,
verify.  Output is CSV (comment-line metadata header, 17 significant
digits) or JSON ({"meta": ..., "rows": ...}); files never embed timestamps,
so identical flags give byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 invalid usage,
3 numerical failure (named certificate in the message).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, _accel
from . import coherent as coh
from . import transform as tr
from .errors import SphereCSError, UnsupportedDimension
from .geometry import PhasePoint, complexify
from .harmonics import sphere_grid
from .kernels import TruncationSpec, nu, rho
from .params import ModelParams
from .quadrature import build_phase_quadrature
from .verify import SUITES, run_suites

__all__ = ["main", "build_parser"]


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _write_rows(args, meta: dict, columns: list, rows: list) -> None:
    """Emit rows to --output (or stdout) in the selected format."""
    if args.format == "json":
        payload = {"meta": meta,
                   "rows": [dict(zip(columns, r)) for r in rows]}
        text = json.dumps(payload, indent=2, sort_keys=True,
                          default=_fmt) + "\n"
    else:
        lines = [f"# {k} = {_fmt(v)}" for k, v in sorted(meta.items())]
        lines.append(",".join(columns))
        for r in rows:
            lines.append(",".join(_fmt(v) for v in r))
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_range(spec: str) -> np.ndarray:
    """start:stop:count -> inclusive linspace; a single number -> 1 point."""
    parts = spec.split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) != 3:
        raise ValueError(f"range must be start:stop:count, got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("range count must be >= 1")
    return np.linspace(start, stop, count)


def _resolve_tau(args) -> float:
    physical = [getattr(args, k, None) for k in ("radius", "mass", "omega",
                                                 "hbar")]
    has_phys = any(v is not None for v in physical)
    if args.tau is not None and has_phys:
        raise ValueError("give either --tau or the physical quadruple "
                         "--radius --mass --omega --hbar, not both")
    if args.tau is not None:
        return args.tau
    if has_phys:
        if any(v is None for v in physical):
            raise ValueError("the physical quadruple requires all of "
                             "--radius --mass --omega --hbar")
        r, m, w, hb = physical
        return ModelParams(d=args.dim, r=r, m=m, omega=w, hbar=hb).tau
    return 0.5


def _preset_coeffs(dim: int, cutoff: int, preset: str) -> np.ndarray:
    """Named input states: 'harmonic:l[,m]', 'random:seed', 'point'."""
    nb = 2 * cutoff + 1 if dim == 1 else (cutoff + 1) ** 2
    f = np.zeros(nb, dtype=np.complex128)
    if preset.startswith("harmonic:"):
        body = preset.split(":", 1)[1]
        nums = [int(t) for t in body.split(",")]
        if dim == 1:
            n = nums[0]
            if abs(n) > cutoff:
                raise ValueError("harmonic index exceeds cutoff")
            f[cutoff + n] = 1.0
        else:
            l = nums[0]
            m = nums[1] if len(nums) > 1 else 0
            if l > cutoff or abs(m) > l:
                raise ValueError("harmonic index exceeds cutoff")
            f[l * (l + 1) + m] = 1.0
        return f
    if preset.startswith("random:"):
        rng = np.random.default_rng(int(preset.split(":", 1)[1]))
        f = rng.normal(size=nb) + 1j * rng.normal(size=nb)
        return f / np.linalg.norm(f)
    if preset == "point":
        # heat-regularized point mass at the pole: all zonal coefficients
        deg = tr.basis_degrees(dim, cutoff)
        if dim == 1:
            f[:] = 1.0 / math.sqrt(2.0 * math.pi)
        else:
            for l in range(cutoff + 1):
                f[l * (l + 1)] = math.sqrt((2 * l + 1) / (4.0 * math.pi))
        return f / np.linalg.norm(f)
    raise ValueError(f"unknown preset {preset!r}")


def _load_coeffs(args, dim: int, cutoff: int) -> np.ndarray:
    if args.coeffs:
        with open(args.coeffs) as fh:
            data = json.load(fh)
        arr = np.asarray([complex(c[0], c[1]) if isinstance(c, list) else
                          complex(c) for c in data], dtype=np.complex128)
        return arr
    return _preset_coeffs(dim, cutoff, args.preset)


def _north_label(dim: int, p: float):
    x = np.zeros(dim + 1)
    x[0] = 1.0
    pv = np.zeros(dim + 1)
    pv[1] = p
    if p == 0.0:
        pv[1] = 0.0
    return complexify(ModelParams.from_tau(dim, 1.0),
                      PhasePoint(x=x, p=pv)).a


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_kernel(args) -> int:
    tau = _resolve_tau(args)
    trunc = TruncationSpec(target_abs_error=args.target_error)
    meta = {"command": "kernel", "space": args.space, "dim": args.dim,
            "time": tau, "method": args.method, "version": __version__,
            "target_abs_error": args.target_error}
    rows = []
    if args.space == "sphere":
        thetas = _parse_range(args.theta) + 1j * args.theta_im
        vals = rho(args.dim, tau, thetas, method=args.method, trunc=trunc)
        for th, v in zip(np.atleast_1d(thetas), np.atleast_1d(vals)):
            rows.append([float(th.real), float(th.imag),
                         float(v.real), float(v.imag),
                         args.method, args.target_error])
        cols = ["theta_re", "theta_im", "value_re", "value_im", "method",
                "abs_error_bound"]
    else:
        radii = _parse_range(args.radius_range)
        vals = np.atleast_1d(nu(args.dim, tau, radii, trunc=trunc))
        for rr, v in zip(np.atleast_1d(radii), vals):
            rows.append([float(rr), float(np.real(v)), "closed"
                         if args.dim in (1, 3) else "contour",
                         args.target_error])
        cols = ["radius", "value", "method", "abs_error_bound"]
    _write_rows(args, meta, cols, rows)
    return 0


def cmd_coherent(args) -> int:
    tau = _resolve_tau(args)
    params = ModelParams.from_tau(args.dim, tau)
    label = _north_label(args.dim, args.momentum)
    from .geometry import ComplexSpherePoint

    state = coh.CoherentState(params=params,
                              label=ComplexSpherePoint(a=label))
    thetas = _parse_range(args.theta)
    pts = np.zeros((len(thetas), args.dim + 1))
    pts[:, 0] = np.cos(thetas)
    pts[:, 1] = np.sin(thetas)
    vals = np.atleast_1d(coh.position_wavefunction(state, pts))
    norm2 = coh.norm_squared(state)
    meta = {"command": "coherent", "dim": args.dim, "tau": tau,
            "momentum": args.momentum, "norm_squared": norm2,
            "version": __version__}
    rows = [[float(t), float(v.real), float(v.imag)]
            for t, v in zip(thetas, vals)]
    _write_rows(args, meta, ["theta", "psi_re", "psi_im"], rows)
    return 0


def cmd_transform(args) -> int:
    tau = _resolve_tau(args)
    if args.dim not in (1, 2):
        raise ValueError("transform output requires dim 1 or 2")
    f = _load_coeffs(args, args.dim, args.cutoff)
    ps = _parse_range(args.momentum_range)
    labels = np.stack([_north_label(args.dim, p) for p in ps])
    vals = tr.sb_transform(args.dim, tau, f, labels)
    meta = {"command": "transform", "dim": args.dim, "tau": tau,
            "cutoff": args.cutoff, "preset": args.preset or "",
            "version": __version__}
    rows = [[float(p), float(v.real), float(v.imag)]
            for p, v in zip(ps, vals)]
    _write_rows(args, meta, ["p", "F_re", "F_im"], rows)
    return 0


def cmd_invert(args) -> int:
    tau = _resolve_tau(args)
    if args.dim not in (1, 2):
        raise ValueError("invert requires dim 1 or 2")
    f = _load_coeffs(args, args.dim, args.cutoff)
    quad = build_phase_quadrature(args.dim, tau, args.cutoff,
                                  n_radial=args.n_radial)
    rec = np.empty(quad.n_sphere, dtype=np.complex128)
    for ix in range(quad.n_sphere):
        F = tr.sb_transform(args.dim, tau, f, quad.labels_at(ix))
        rec[ix] = np.sum(quad.p_w_inversion * F)
    truth = tr.basis_matrix(args.dim, quad.x_pts.astype(np.complex128),
                            args.cutoff) @ f
    err = float(np.sqrt(np.sum(quad.x_w * np.abs(rec - truth) ** 2)
                        / np.sum(quad.x_w * np.abs(truth) ** 2)))
    meta = {"command": "invert", "dim": args.dim, "tau": tau,
            "cutoff": args.cutoff, "preset": args.preset or "",
            "l2_round_trip_error": err, "version": __version__}
    rows = []
    for ix in range(quad.n_sphere):
        rows.append([ix, float(rec[ix].real), float(rec[ix].imag),
                     float(truth[ix].real), float(truth[ix].imag),
                     float(abs(rec[ix] - truth[ix]))])
    _write_rows(args, meta,
                ["node", "rec_re", "rec_im", "f_re", "f_im", "abs_err"],
                rows)
    return 0


def cmd_husimi(args) -> int:
    tau = _resolve_tau(args)
    if args.dim not in (1, 2):
        raise ValueError("husimi requires dim 1 or 2")
    f = _load_coeffs(args, args.dim, args.cutoff)
    f = f / np.linalg.norm(f)
    quad = build_phase_quadrature(args.dim, tau, args.cutoff,
                                  n_radial=args.n_radial)
    vals = tr.husimi_values(args.dim, tau, f, quad)
    mass = float(np.sum(quad.x_w * (vals @ quad.p_w_resolution)))
    meta = {"command": "husimi", "dim": args.dim, "tau": tau,
            "cutoff": args.cutoff, "preset": args.preset or "",
            "mass": mass, "version": __version__}
    rows = []
    for ix in range(quad.n_sphere):
        for ip in range(quad.n_momentum):
            rows.append([ix, ip, float(quad.p_norms[ip]),
                         float(vals[ix, ip])])
    _write_rows(args, meta, ["x_node", "p_node", "p", "density"], rows)
    return 0


def cmd_resolve_identity(args) -> int:
    tau = _resolve_tau(args)
    if args.dim not in (1, 2):
        raise ValueError("resolve-identity requires dim 1 or 2")
    quad = build_phase_quadrature(args.dim, tau, args.cutoff,
                                  n_radial=args.n_radial)
    M = tr.resolve_identity_matrix(args.dim, tau, args.cutoff, quad,
                                   weight="control" if args.negative_control
                                   else "resolution")
    dev = float(np.max(np.abs(M - np.eye(len(M)))))
    meta = {"command": "resolve-identity", "dim": args.dim, "tau": tau,
            "cutoff": args.cutoff, "max_deviation": dev,
            "weight": "control" if args.negative_control else "resolution",
            "version": __version__}
    rows = [[i, j, float(M[i, j].real), float(M[i, j].imag)]
            for i in range(len(M)) for j in range(len(M))]
    _write_rows(args, meta, ["i", "j", "M_re", "M_im"], rows)
    return 0


def cmd_verify(args) -> int:
    names = None
    if args.suite:
        names = []
        for chunk in args.suite:
            names.extend(s for s in chunk.split(",") if s)
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {unknown}; "
                             f"choose from {sorted(SUITES)}")
    report = run_suites(names, fast=args.fast,
                        negative_controls=not args.no_negative_controls)
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status}  {c['name']}: residual {c['residual']:.3e} "
              f"(tol {c['tol']:.1e})")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print("all checks passed" if report["passed"] else "FAILURES present")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    # also accepted after the subcommand; SUPPRESS keeps a value given
    # before the subcommand from being overwritten by this default
    p.add_argument("--config", default=argparse.SUPPRESS,
                   help="JSON file of default flag values (flags override)")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                   help="worker threads for the numba backend")
    p.add_argument("--dim", type=int, default=1, help="sphere dimension d")
    p.add_argument("--tau", type=float, default=None,
                   help="dimensionless time hbar/(m omega r^2)")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--hbar", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="output path (default stdout)")


def _add_state(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", default="harmonic:1",
                   help="harmonic:l[,m] | random:seed | point")
    p.add_argument("--coeffs", default=None,
                   help="JSON file with basis coefficients ([re, im] pairs)")
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--n-radial", type=int, default=120)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spherecs",
        description="Coherent states and the Segal-Bargmann transform on "
                    "the d-sphere (d = 1, 2, 3)")
    top.add_argument("--config", default=None,
                     help="JSON file of default flag values (flags override)")
    top.add_argument("--threads", type=int,
                     default=int(os.environ.get("SPHERECS_THREADS", "0")),
                     help="worker threads for the numba backend "
                          "(0 = library default); results are independent "
                          "of this value")
    sub = top.add_subparsers(dest="command", required=True)

    pk = sub.add_parser("kernel", help="tabulate heat-kernel values")
    _add_common(pk)
    pk.add_argument("--space", choices=("sphere", "hyperbolic"),
                    default="sphere")
    pk.add_argument("--theta", default="0:3.14159:50",
                    help="angle grid start:stop:count")
    pk.add_argument("--theta-im", type=float, default=0.0,
                    help="imaginary part added to every grid angle")
    pk.add_argument("--radius-range", default="0:5:50",
                    help="hyperbolic radial grid start:stop:count")
    pk.add_argument("--method", choices=("auto", "theta", "spectral"),
                    default="theta")
    pk.add_argument("--target-error", type=float, default=1e-12)
    pk.set_defaults(func=cmd_kernel)

    pc = sub.add_parser("coherent", help="coherent-state wavefunction")
    _add_common(pc)
    pc.add_argument("--momentum", type=float, default=0.5,
                    help="|p|/(m omega r) of the label over the pole")
    pc.add_argument("--theta", default="-3.14159:3.14159:101")
    pc.set_defaults(func=cmd_coherent)

    pt = sub.add_parser("transform", help="Segal-Bargmann transform samples")
    _add_common(pt)
    _add_state(pt)
    pt.add_argument("--momentum-range", default="0:2:41",
                    help="fiber momenta over the pole, start:stop:count")
    pt.set_defaults(func=cmd_transform)

    pi = sub.add_parser("invert", help="inverse transform round trip")
    _add_common(pi)
    _add_state(pi)
    pi.set_defaults(func=cmd_invert)

    ph = sub.add_parser("husimi", help="Husimi phase-space density")
    _add_common(ph)
    _add_state(ph)
    ph.set_defaults(func=cmd_husimi)

    pr = sub.add_parser("resolve-identity",
                        help="resolution-of-identity matrix")
    _add_common(pr)
    pr.add_argument("--cutoff", type=int, default=6)
    pr.add_argument("--n-radial", type=int, default=120)
    pr.add_argument("--negative-control", action="store_true",
                    help="use the deliberately wrong weight nu(tau, p)")
    pr.set_defaults(func=cmd_resolve_identity)

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--suite", action="append", default=None,
                    help="suite name(s), comma-separable; default: all")
    pv.add_argument("--fast", action="store_true",
                    help="reduced sample counts for smoke testing")
    pv.add_argument("--no-negative-controls", action="store_true")
    pv.add_argument("--output", default=None, help="JSON report path")
    pv.set_defaults(func=cmd_verify)
    return top


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Fold --config JSON values in as parser defaults (flags override)."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    defaults = {k.replace("-", "_"): v for k, v in cfg.items()}
    parser.set_defaults(**defaults)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.set_defaults(**{k: v for k, v in defaults.items()
                               if any(k == a.dest for a in sp._actions)})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.threads:
        _accel.set_threads(args.threads)
    try:
        return args.func(args)
    except UnsupportedDimension as exc:
        print(f"error: unsupported dimension: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SphereCSError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
