"""Batch command-line front end.

Subcommands transform coefficient files and emit figure-reproduction data
(partition maps, recurrence error profiles, round-trip error sweeps, and
timings) as CSV.  Exit codes: 0 success, 2 malformed input, 3 parameter
range violation.
"""

import argparse
import sys
import time

import numpy as np

from . import engine, oracle
from .asymptotics import compute_partition
from .kernels import recurrence_tables
from .parameters import JacobiParameters, ParameterRangeError
from .recurrences import classify_regions
from . import backend

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3


class InputError(Exception):
    pass


# -- coefficient files --------------------------------------------------------

def read_coefficient_file(path: str) -> engine.CoefficientVector:
    """Parse the plain-text format: header 'basis,alpha,beta,N' then N+1
    decimal values, one per line."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise InputError(f"{path}: empty file")
    head = lines[0].split(",")
    if len(head) != 4:
        raise InputError(f"{path}: header must be 'basis,alpha,beta,N'")
    basis = head[0].strip().lower()
    try:
        alpha, beta = float(head[1]), float(head[2])
        n = int(head[3])
    except ValueError as exc:
        raise InputError(f"{path}: bad header: {exc}") from exc
    try:
        data = np.array([float(tok) for tok in lines[1:]])
    except ValueError as exc:
        raise InputError(f"{path}: bad coefficient value: {exc}") from exc
    if len(data) != n + 1:
        raise InputError(f"{path}: expected {n + 1} values, found {len(data)}")
    if not np.all(np.isfinite(data)):
        raise InputError(f"{path}: coefficients must be finite")
    if basis == engine.JACOBI:
        return engine.jacobi(JacobiParameters(alpha, beta), data)
    if basis == engine.CHEBYSHEV:
        return engine.chebyshev(data)
    raise InputError(f"{path}: basis must be 'cheb' or 'jac', got {basis!r}")


def write_coefficient_file(path: str, c: engine.CoefficientVector,
                           p: JacobiParameters | None = None):
    """Write with shortest round-trip decimal representation.  Chebyshev
    files record the transform parameters in the header for traceability."""
    if c.basis == engine.JACOBI:
        alpha, beta = c.params.alpha, c.params.beta
    else:
        alpha, beta = (p.alpha, p.beta) if p is not None else (0.0, 0.0)
    with open(path, "w") as fh:
        fh.write(f"{c.basis},{alpha!r},{beta!r},{c.n}\n")
        for value in c.data:
            fh.write(f"{float(value)!r}\n")


def _resolve_params(args, header_params, what: str) -> JacobiParameters:
    if args.alpha is None and args.beta is None:
        if header_params is None:
            raise InputError(f"{what}: no parameters in header; pass --alpha/--beta")
        return header_params
    if args.alpha is None or args.beta is None:
        raise InputError(f"{what}: pass both --alpha and --beta")
    flagged = JacobiParameters(args.alpha, args.beta)
    if header_params is not None and flagged != header_params:
        raise InputError(
            f"{what}: flags ({flagged.alpha}, {flagged.beta}) disagree with "
            f"header ({header_params.alpha}, {header_params.beta})"
        )
    return flagged


# -- subcommands ---------------------------------------------------------------

def cmd_forward(args) -> int:
    c = read_coefficient_file(args.infile)
    if c.basis != engine.JACOBI:
        raise InputError("forward transform expects a 'jac' coefficient file")
    p = _resolve_params(args, c.params, "forward")
    tp = engine.plan("forward", p, c.n, args.m, args.eps)
    out = engine.forward(tp, c)
    write_coefficient_file(args.outfile, out, p)
    return EXIT_OK


def cmd_inverse(args) -> int:
    c = read_coefficient_file(args.infile)
    if c.basis != engine.CHEBYSHEV:
        raise InputError("inverse transform expects a 'cheb' coefficient file")
    header_params = None  # chebyshev vectors do not carry parameters
    p = _resolve_params(args, header_params, "inverse")
    tp = engine.plan("inverse", p, c.n, args.m, args.eps)
    out = engine.inverse(tp, c)
    write_coefficient_file(args.outfile, out)
    return EXIT_OK


def cmd_partition(args) -> int:
    p = JacobiParameters(args.alpha, args.beta)
    layout = compute_partition(p, args.n, args.m, args.eps)
    with open(args.outfile, "w") as fh:
        fh.write(layout.csv_dump())
    return EXIT_OK


def _forward_value_grid(p, n, thetas, mode):
    """P_n over a theta vector by the forward recurrence; mode 0 plain,
    +1 / -1 the Reinsch modification at that endpoint."""
    t = recurrence_tables(p, max(n, 1))
    if mode == 0:
        x = np.cos(thetas)
        p_prev = np.zeros_like(thetas)
        p_cur = np.ones_like(thetas)
        for k in range(n):
            p_prev, p_cur = p_cur, (t.A[k] * x + t.B[k]) * p_cur - t.C[k] * p_prev
        return p_cur
    if mode == 1:
        half = np.sin(0.5 * thetas)
        xm = -2.0 * half * half
        rf = t.rf_plus
    else:
        half = np.cos(0.5 * thetas)
        xm = 2.0 * half * half
        rf = t.rf_minus
    pi_cur = np.ones_like(thetas)
    d = np.zeros_like(thetas)
    for k in range(n):
        d = (t.A[k] * xm * pi_cur + t.C[k] * d) / rf[k]
        pi_cur = (pi_cur + d) * rf[k]
    return pi_cur


def _clenshaw_value_grid(p, n, thetas, mode):
    """P_n over a theta vector by Clenshaw-Smith summation of e_n."""
    t = recurrence_tables(p, n + 1)
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    cuts = np.full(len(thetas), n + 1, dtype=np.int64)
    regions = np.full(len(thetas), mode, dtype=np.int8)
    out = np.empty(len(thetas))
    backend.kernels().clenshaw_points(
        t.A, t.B, t.C, t.rb_plus, t.rb_minus, t.rb_plus_inv, t.rb_minus_inv,
        coeffs, np.ascontiguousarray(thetas), cuts, regions, out,
    )
    return out


def cmd_recurrence_error(args) -> int:
    if args.grid <= 0:
        raise InputError("grid size must be positive")
    p = JacobiParameters(args.alpha, args.beta)
    n = args.n
    thetas = np.linspace(0.0, np.pi, args.grid)
    ref_hi, ref_lo = oracle.oracle_jacobi_grid(p, n, thetas)
    ref = ref_hi + ref_lo

    def rel_err(approx):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.abs((approx - ref_hi) - ref_lo) / np.abs(ref)

    columns = [
        rel_err(_forward_value_grid(p, n, thetas, 0)),
        rel_err(_forward_value_grid(p, n, thetas, 1)),
        rel_err(_forward_value_grid(p, n, thetas, -1)),
        rel_err(_clenshaw_value_grid(p, n, thetas, 0)),
        rel_err(_clenshaw_value_grid(p, n, thetas, 1)),
        rel_err(_clenshaw_value_grid(p, n, thetas, -1)),
    ]
    with open(args.outfile, "w") as fh:
        fh.write("theta,forward,forward_reinsch_p1,forward_reinsch_m1,"
                 "clenshaw,clenshaw_reinsch_p1,clenshaw_reinsch_m1\n")
        for i, th in enumerate(thetas):
            vals = ",".join(repr(float(col[i])) for col in columns)
            fh.write(f"{float(th)!r},{vals}\n")
    return EXIT_OK


def _draw_coefficients(rng, n, r):
    if r == 0:
        return rng.uniform(0.0, 1.0, n + 1)
    scale = np.maximum(np.arange(n + 1, dtype=float), 1.0) ** (-float(r))
    return rng.uniform(-1.0, 1.0, n + 1) * scale


def cmd_roundtrip_sweep(args) -> int:
    p = JacobiParameters(args.alpha, args.beta)
    rng = np.random.default_rng(args.seed)
    with open(args.outfile, "w") as fh:
        fh.write(f"# seed={args.seed}\n")
        fh.write("N,max_abs_err\n")
        for n in args.sizes:
            fwd = engine.plan("forward", p, n, args.m)
            inv = engine.plan("inverse", p, n, args.m)
            errs = []
            for _ in range(args.trials):
                c = _draw_coefficients(rng, n, args.r)
                cv = engine.jacobi(p, c)
                back = engine.inverse(inv, engine.forward(fwd, cv))
                errs.append(float(np.max(np.abs(back.data - c))))
            fh.write(f"{n},{float(np.mean(errs))!r}\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    with open(args.outfile, "w") as fh:
        fh.write(f"# seed={args.seed}\n")
        fh.write("direction,M,N,seconds\n")
        for m in args.m:
            for n in args.sizes:
                for direction in ("forward", "inverse"):
                    times = []
                    for _ in range(args.trials):
                        a = rng.uniform(-0.5, 0.5)
                        b = rng.uniform(-0.5, 0.5)
                        p = JacobiParameters(a, b)
                        tp = engine.plan(direction, p, n, m)
                        if direction == "forward":
                            c = engine.jacobi(p, rng.uniform(-1, 1, n + 1))
                            run = engine.forward
                        else:
                            c = engine.chebyshev(rng.uniform(-1, 1, n + 1))
                            run = engine.inverse
                        start = time.perf_counter()
                        run(tp, c)
                        times.append(time.perf_counter() - start)
                    if times:
                        fh.write(f"{direction},{m},{n},{float(np.mean(times))!r}\n")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------

def _add_eps(sp):
    sp.add_argument("--eps", type=float, default=engine.DEFAULT_EPS,
                    help="tolerance for the certified asymptotic region")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chebjac",
        description="Fast Chebyshev-Jacobi coefficient transforms",
    )
    ap.add_argument("--seed", type=int, default=12345,
                    help="seed for all randomized commands")
    sub = ap.add_subparsers(dest="command", required=True)

    fw = sub.add_parser("forward", help="Jacobi -> Chebyshev coefficient file")
    fw.add_argument("infile")
    fw.add_argument("outfile")
    fw.add_argument("--alpha", type=float)
    fw.add_argument("--beta", type=float)
    fw.add_argument("-M", dest="m", type=int, default=engine.DEFAULT_M)
    _add_eps(fw)
    fw.set_defaults(func=cmd_forward)

    iv = sub.add_parser("inverse", help="Chebyshev -> Jacobi coefficient file")
    iv.add_argument("infile")
    iv.add_argument("outfile")
    iv.add_argument("--alpha", type=float)
    iv.add_argument("--beta", type=float)
    iv.add_argument("-M", dest="m", type=int, default=engine.DEFAULT_M)
    _add_eps(iv)
    iv.set_defaults(func=cmd_inverse)

    pt = sub.add_parser("partition", help="dump the certified partition as CSV")
    pt.add_argument("outfile")
    pt.add_argument("--alpha", type=float, required=True)
    pt.add_argument("--beta", type=float, required=True)
    pt.add_argument("-N", dest="n", type=int, required=True)
    pt.add_argument("-M", dest="m", type=int, default=engine.DEFAULT_M)
    _add_eps(pt)
    pt.set_defaults(func=cmd_partition)

    re_ = sub.add_parser("recurrence-error",
                         help="per-angle relative error of the six recurrence variants")
    re_.add_argument("outfile")
    re_.add_argument("--alpha", type=float, required=True)
    re_.add_argument("--beta", type=float, required=True)
    re_.add_argument("-n", dest="n", type=int, required=True)
    re_.add_argument("--grid", type=int, required=True)
    re_.set_defaults(func=cmd_recurrence_error)

    rt = sub.add_parser("roundtrip-sweep",
                        help="average max round-trip error over random trials")
    rt.add_argument("sizes", type=int, nargs="+", metavar="N")
    rt.add_argument("-o", "--out", dest="outfile", required=True)
    rt.add_argument("--alpha", type=float, required=True)
    rt.add_argument("--beta", type=float, required=True)
    rt.add_argument("--r", type=int, choices=(0, 2), default=0,
                    help="coefficient decay model: 0 irregular, 2 continuous")
    rt.add_argument("-M", dest="m", type=int, default=engine.DEFAULT_M)
    rt.add_argument("--trials", type=int, default=10)
    rt.set_defaults(func=cmd_roundtrip_sweep)

    bm = sub.add_parser("bench", help="time transforms with random parameters")
    bm.add_argument("sizes", type=int, nargs="+", metavar="N")
    bm.add_argument("-o", "--out", dest="outfile", required=True)
    bm.add_argument("-M", dest="m", type=int, nargs="+", default=[engine.DEFAULT_M])
    bm.add_argument("--trials", type=int, default=10)
    bm.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
