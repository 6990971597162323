"""Command line driver.

Subcommands: domain, phantom, forward, adjoint, oracle, bound, bench, fbp, cg.
Exit codes: 0 success, 2 validation error (including unknown flags), 1 IO
error.  --threads falls back to the GALE_THREADS environment variable.
"""

import argparse
import contextlib
import json
import os
import sys
import time

import numpy as np

import gale
from gale.domains import lrfs_ray_indices
from gale.gcpx import GcpxError
from gale.oracle import DirectTransform
from gale.phantom import PhantomSpec, make_phantom
from gale.transform import DEFAULT_EPSILON, GalfdTransform
from gale.windows import error_bound, window_params


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("GALE_THREADS", "1")))
    except ValueError:
        return 1


def _parse_sigma(text: str, M: int) -> float:
    if text == "auto":
        return np.pi / M
    return float(text)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _add_domain_flags(p, need_dims: bool):
    p.add_argument("--M", type=int, required=True, help="samples per ray")
    p.add_argument("--N", type=int, required=True, help="number of rays")
    p.add_argument("--theta0", type=float, default=np.pi / 2)
    p.add_argument("--sigma", default="auto", help="radial offset, or 'auto' for pi/M")
    p.add_argument("--NL", type=int, default=None, help="Fourier sampling length")
    p.add_argument("--S", type=int, default=4, help="truncation half-width")
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--P", type=int, default=None,
                   help="CZT length; overrides --NL via NL = 2P - 4(S+1)")
    p.add_argument("--threads", type=int, default=None)
    if need_dims:
        p.add_argument("--m", type=int, required=True, help="image rows")
        p.add_argument("--n", type=int, required=True, help="image columns")


def _resolve_nl(args, S: int) -> int | None:
    if args.P is not None:
        nl = 2 * args.P - 4 * (S + 1)
        if nl <= 0 or nl % 4:
            raise ValueError(f"P={args.P} with S={S} gives NL={nl}, "
                             "which must be positive and divisible by 4 (use even P)")
        return nl
    return args.NL


def _threads(args) -> int:
    return args.threads if args.threads is not None else _default_threads()


def _make_spec(args) -> gale.GalfdSpec:
    return gale.make_galfd_spec(args.M, args.N, theta0=args.theta0,
                                sigma=_parse_sigma(args.sigma, args.M))


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w")


def cmd_domain(args) -> int:
    rows = []
    kind = args.kind
    if kind == "galfd":
        spec = _make_spec(args)
        for K, theta in enumerate(spec.angles):
            pts = gale.lrfs_points(spec.M, spec.sigma, theta)
            idx = lrfs_ray_indices(spec.M, theta)
            rows += [(K, int(i), theta, p[0], p[1]) for i, p in zip(idx, pts)]
    elif kind in ("cfd", "pfd", "gapfd", "lfd"):
        rows = _classic_rows(kind, args)
    else:
        raise ValueError(f"unknown domain kind {kind!r}")
    with _open_out(args.output) as fh:
        fh.write("K,I,theta,xi,upsilon\n")
        for K, I, theta, xi, ups in rows:
            fh.write(f"{K},{I},{_fmt(theta)},{_fmt(xi)},{_fmt(ups)}\n")
    return 0


def _classic_rows(kind, args):
    M, N = args.M, args.N
    pts = gale.classic_domain_points(kind, M, N, theta0=args.theta0)
    rows = []
    if kind == "cfd":
        J = np.arange(-(N // 2), N // 2)
        I = np.arange(-(M // 2), M // 2)
        k = 0
        for ii, i in enumerate(I):
            for jj in range(len(J)):
                xi, ups = pts[k]
                rows.append((ii, int(i), 0.0, xi, ups))
                k += 1
    elif kind in ("pfd", "gapfd"):
        thetas = (np.pi * np.arange(N) / N if kind == "pfd"
                  else args.theta0 + np.arange(N) * gale.GOLDEN_ANGLE)
        I = np.arange(-(M // 2), M // 2)
        k = 0
        for K, th in enumerate(thetas):
            for i in I:
                xi, ups = pts[k]
                rows.append((K, int(i), float(th), xi, ups))
                k += 1
    else:  # lfd: H-set rays then V-set rays
        k = 0
        K = 0
        for J in range(-N // 4 + 1, N // 4 + 1):
            th = gale.constrain_angle(np.arctan(4.0 * J / N) + np.pi)
            for i in np.arange(-(M // 2), M // 2):
                xi, ups = pts[k]
                rows.append((K, int(i), float(th), xi, ups))
                k += 1
            K += 1
        for J in range(-N // 4, N // 4):
            th = gale.constrain_angle(np.pi / 2 - np.arctan(4.0 * J / N))
            for i in np.arange(-(M // 2) + 1, M // 2 + 1):
                xi, ups = pts[k]
                rows.append((K, int(i), float(th), xi, ups))
                k += 1
            K += 1
    return rows


def cmd_phantom(args) -> int:
    img = make_phantom(PhantomSpec(m=args.m, n=args.n, kind=args.kind, seed=args.seed))
    gale.write_gcpx(args.output, img)
    return 0


def _build_op(args, m, n, threads):
    spec = _make_spec(args)
    return GalfdTransform(spec, m, n, NL=_resolve_nl(args, args.S), S=args.S,
                          epsilon=args.eps, threads=threads)


def cmd_forward(args) -> int:
    x = gale.read_gcpx(args.input)
    if x.ndim != 2:
        raise ValueError(f"forward expects a 2-D image, got shape {x.shape}")
    op = _build_op(args, *x.shape, _threads(args))
    gale.write_gcpx(args.output, op.forward(x))
    return 0


def cmd_adjoint(args) -> int:
    Y = gale.read_gcpx(args.input)
    if Y.ndim != 2:
        raise ValueError(f"adjoint expects a 2-D sample array, got shape {Y.shape}")
    op = _build_op(args, args.m, args.n, _threads(args))
    gale.write_gcpx(args.output, op.adjoint(Y))
    return 0


def cmd_oracle(args) -> int:
    x = gale.read_gcpx(args.input)
    if x.ndim != 2:
        raise ValueError(f"oracle expects a 2-D image, got shape {x.shape}")
    spec = _make_spec(args)
    op = DirectTransform(spec, *x.shape, threads=_threads(args))
    gale.write_gcpx(args.output, op.forward(x))
    return 0


def cmd_bound(args) -> int:
    M, m, n = args.M, args.m, args.n
    sigma = _parse_sigma(args.sigma, M)
    R1 = M // 2 - 1
    with _open_out(args.output) as fh:
        fh.write("I,NL,S,bound\n")
        for NL in _int_list(args.NL):
            for S in _int_list(args.S):
                for row in range(M):
                    shifted = row - R1
                    params = window_params(shifted, M, n, NL, sigma, args.eps, S)
                    b = error_bound(S, params, 1.0)
                    fh.write(f"{shifted},{NL},{S},{_fmt(b)}\n")
    return 0


def cmd_bench(args) -> int:
    threads = _threads(args)
    x = make_phantom(PhantomSpec(m=args.m, n=args.n, kind=args.kind, seed=args.seed))
    spec = _make_spec(args)
    reference = DirectTransform(spec, args.m, args.n, threads=threads).forward(x)
    l1 = gale.l1_norm(x)
    rows = []
    for S in _int_list(args.S):
        for P in _int_list(args.P):
            nl = 2 * P - 4 * (S + 1)
            if nl <= 0 or nl % 4:
                raise ValueError(f"P={P} with S={S} gives NL={nl}, "
                                 "which must be positive and divisible by 4")
            op = GalfdTransform(spec, args.m, args.n, NL=nl, S=S,
                                epsilon=args.eps, threads=threads)
            t0 = time.perf_counter()
            approx = op.forward(x)
            elapsed = time.perf_counter() - t0
            report = gale.ErrorReport(
                mre=gale.mre(reference, approx, skip_zeros=args.mre_skip_zeros),
                rse=gale.rse(reference, approx),
                max_abs=float(np.max(np.abs(reference - approx))),
                max_abs_bound=op.max_bound(l1),
            )
            rows.append({
                "S": S,
                "P": P,
                "mre": report.mre,
                "rse": report.rse,
                "max_abs": report.max_abs,
                "bound": report.max_abs_bound,
                "elapsed_seconds": elapsed,
            })
    with _open_out(args.output) as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return 0


def cmd_fbp(args) -> int:
    data = gale.read_gcpx(args.input)
    if data.ndim not in (2, 3):
        raise ValueError(f"fbp expects (C, M, N) or (M, N) data, got shape {data.shape}")
    op = _build_op(args, args.m, args.n, _threads(args))
    img = gale.fbp_reconstruct(data, op)
    gale.write_gcpx(args.output, img.astype(np.complex128))
    return 0


def cmd_cg(args) -> int:
    y = gale.read_gcpx(args.input)
    if y.ndim != 2:
        raise ValueError(f"cg expects a 2-D sample array, got shape {y.shape}")
    op = _build_op(args, args.m, args.n, _threads(args))
    x0 = gale.read_gcpx(args.x0) if args.x0 else None
    img, report = gale.cg_least_squares(y, op, iters=args.iters, x0=x0)
    gale.write_gcpx(args.output, img)
    if args.residuals:
        with open(args.residuals, "w") as fh:
            fh.write("iteration,residual_norm\n")
            for k, r in enumerate(report.residual_norms):
                fh.write(f"{k},{_fmt(r)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gale",
                                 description="DTFT over golden-angle linogram domains")
    ap.add_argument("--version", action="version", version=gale.__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("domain", help="emit domain points as CSV")
    p.add_argument("--kind", default="galfd",
                   choices=["galfd", "cfd", "pfd", "lfd", "gapfd"])
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--theta0", type=float, default=np.pi / 2)
    p.add_argument("--sigma", default="auto")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("phantom", help="write a synthetic test image")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", default="ellipses", choices=["ellipses", "bars", "delta"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("forward", help="fast transform: image -> ray samples")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_domain_flags(p, need_dims=False)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("adjoint", help="exact adjoint: ray samples -> image")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_domain_flags(p, need_dims=True)
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("oracle", help="brute-force transform: image -> ray samples")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_domain_flags(p, need_dims=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bound", help="truncation error bound table as CSV")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", default="auto")
    p.add_argument("--NL", required=True, help="comma-separated list")
    p.add_argument("--S", required=True, help="comma-separated list")
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("bench", help="fast-vs-oracle sweep, JSON lines output")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--theta0", type=float, default=np.pi / 2)
    p.add_argument("--sigma", default="auto")
    p.add_argument("--S", required=True, help="comma-separated list")
    p.add_argument("--P", required=True, help="comma-separated list (NL = 2P - 4(S+1))")
    p.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--kind", default="ellipses", choices=["ellipses", "bars", "delta"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mre-skip-zeros", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fbp", help="density-compensated adjoint reconstruction")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_domain_flags(p, need_dims=True)
    p.set_defaults(func=cmd_fbp)

    p = sub.add_parser("cg", help="least-squares reconstruction by conjugate gradients")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--x0", default=None, help="optional GCPX starting image")
    p.add_argument("--residuals", default=None, help="per-iteration residual CSV")
    _add_domain_flags(p, need_dims=True)
    p.set_defaults(func=cmd_cg)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GcpxError as exc:
        print(f"gale: {exc}", file=sys.stderr)
        return 1
    except (OSError, IOError) as exc:
        print(f"gale: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"gale: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
