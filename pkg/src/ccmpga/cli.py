"""Command-line front end.

    ccmpga gen --model sphere --dim 2 --n 100 --generator geodesic-perturbed --seed 7 --out d.csv
    ccmpga mean --in d.csv
    ccmpga pga --in d.csv --method ccm --L 1 --out result.json
    ccmpga compare --in d.csv --methods ccm,tangent,exact --L 1 --out report.json
    ccmpga reconstruct --in d.csv --L 2 --k 2 --out approx.csv
    ccmpga infogeo iwasawa --in spd.csv --roundtrip-check
    ccmpga infogeo gaussians --in g.csv --mode concat --out points.csv
    ccmpga infogeo fisher-check --random 100 --seed 0

Exit status: 0 on success, 2 on usage or input errors, 3 on numerical failure.
"""

import argparse
import csv
import hashlib
import sys
import warnings

import numpy as np

from . import io
from .datasets import GENERATORS, DatasetSpec, gen_dataset
from .errors import DomainError, InvalidArgumentError, NumericalFailure
from .experiment import parse_methods, run_compare
from .frechet import MeanConfig, frechet_mean, frechet_variance
from .infogeo import (UnivariateGaussian, fisher_rao_vs_hyperbolic_check,
                      half_planes_to_hyperboloid, diag_gaussian_to_half_planes,
                      iwasawa_compose, iwasawa_decompose)
from .manifolds import Hyperboloid, MODELS
from .pga import DirectionSearchConfig, run_pga
from .reconstruction import reconstruct

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3


def _emit_table(rows, fmt, out=None):
    """Print a list of dicts as CSV or JSON."""
    out = out or sys.stdout
    if fmt == "json":
        out.write(io.dump_json(rows))
        return
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def _fingerprint(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _search_cfg(args):
    kw = {"seed": args.seed}
    if args.tol is not None:
        kw["tolerance"] = args.tol
    return DirectionSearchConfig(**kw)


def _mean_cfg(args):
    return MeanConfig() if args.tol is None else MeanConfig(gradient_tolerance=args.tol)


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args):
    spec = DatasetSpec(model=args.model, dim=args.dim, n=args.n, generator=args.generator,
                       variance_target=args.variance, scale=args.scale, seed=args.seed)
    X = gen_dataset(spec)
    M = MODELS[args.model](args.dim)
    text = io.save_points(args.out, M, X)
    if args.out in (None, "-"):
        sys.stdout.write(text)


def cmd_mean(args):
    M, X = io.load_points(args.input)
    mu, info = frechet_mean(M, X, _mean_cfg(args), return_info=True)
    row = {"iterations": info["iterations"], "gradient_norm": info["gradient_norm"],
           "frechet_variance": frechet_variance(M, X, mu)}
    row.update({f"mu_{i}": float(c) for i, c in enumerate(mu)})
    _emit_table([row], args.format)


def cmd_pga(args):
    M, X = io.load_points(args.input)
    mu = frechet_mean(M, X, _mean_cfg(args))
    res = run_pga(args.method, M, X, args.L, cfg=_search_cfg(args), mean=mu)
    payload = {"method": res.method, "mean": res.mean.tolist(),
               "directions": res.directions.tolist(),
               "variances": res.variances.tolist(),
               "coordinates": res.coordinates.tolist()}
    text = io.dump_json(payload, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)


def cmd_compare(args):
    M, X = io.load_points(args.input)
    report = run_compare(M, X, parse_methods(args.methods), args.L, seed=args.seed,
                         dataset={"fingerprint": _fingerprint(args.input)},
                         cfg=_search_cfg(args), mean_cfg=_mean_cfg(args))
    text = io.dump_json(report, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        _emit_table([{"name": m["name"], "avg_proj_error": m["avg_proj_error"],
                      "elapsed_s": m["elapsed_s"]} for m in report["methods"]], args.format)


def cmd_reconstruct(args):
    M, X = io.load_points(args.input)
    mu = frechet_mean(M, X, _mean_cfg(args))
    res = run_pga(args.method, M, X, args.L, cfg=_search_cfg(args), mean=mu)
    k = args.L if args.k is None else args.k
    approx = np.array([reconstruct(res, j, k) for j in range(len(X))])
    err = float(np.mean(M.dist(X, approx) ** 2))
    text = io.save_points(args.out, M, approx)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        _emit_table([{"k": k, "mean_sq_error": err}], args.format)


def cmd_iwasawa(args):
    mats = io.load_spd(args.input, jitter=args.jitter)
    rows = []
    for i, V in enumerate(mats):
        c = iwasawa_decompose(V)
        row = {"index": i, "w": " ".join(repr(float(w)) for w in c.w),
               "x": " ".join(repr(float(x)) for x in c.x_vector())}
        if args.roundtrip_check:
            row["frobenius_residual"] = float(np.linalg.norm(iwasawa_compose(c) - V))
        rows.append(row)
    _emit_table(rows, args.format)


def cmd_gaussians(args):
    gs = io.load_gaussians(args.input)
    pts = np.array([half_planes_to_hyperboloid(diag_gaussian_to_half_planes(g), args.mode)
                    for g in gs])
    if args.mode == "product":
        pts = pts.reshape(-1, 3)
    M = Hyperboloid(pts.shape[1] - 1)
    text = io.save_points(args.out, M, pts)
    if args.out in (None, "-"):
        sys.stdout.write(text)


def _parse_gaussian(text):
    try:
        mu, sigma = (float(t) for t in text.split(","))
    except ValueError as exc:
        raise InvalidArgumentError(f"expected 'mean,std', got {text!r}") from exc
    return UnivariateGaussian(mu, sigma)


def cmd_fisher_check(args):
    if args.g1 is not None or args.g2 is not None:
        if args.g1 is None or args.g2 is None:
            raise InvalidArgumentError("--g1 and --g2 go together")
        pairs = [(_parse_gaussian(args.g1), _parse_gaussian(args.g2))]
    else:
        rng = np.random.default_rng(args.seed)
        pairs = [(UnivariateGaussian(rng.normal(0, 2), np.exp(rng.normal())),
                  UnivariateGaussian(rng.normal(0, 2), np.exp(rng.normal())))
                 for _ in range(args.random)]
    rows = []
    for g1, g2 in pairs:
        r = fisher_rao_vs_hyperbolic_check(g1, g2)
        rows.append({"mu1": g1.mean, "sigma1": g1.std, "mu2": g2.mean, "sigma2": g2.std,
                     "fisher_rao": r.fisher_rao, "half_plane": r.half_plane,
                     "discrepancy": r.discrepancy})
    _emit_table(rows, args.format)


# -- parser --------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None,
                        help="override the library tolerance of the command")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="format of tabular summaries on stdout")

    p = argparse.ArgumentParser(prog="ccmpga", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a synthetic dataset")
    g.add_argument("--model", choices=sorted(MODELS), default="sphere")
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--generator", choices=GENERATORS, default="geodesic-perturbed")
    g.add_argument("--variance", type=float, default=None, help="Fréchet variance target")
    g.add_argument("--scale", type=float, default=0.05, help="perturbation scale")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("mean", parents=[common], help="Fréchet mean and variance")
    m.add_argument("--in", dest="input", required=True)
    m.set_defaults(func=cmd_mean)

    for name, func, hlp in (("pga", cmd_pga, "run one PGA variant"),
                            ("reconstruct", cmd_reconstruct,
                             "reconstruct the data from k principal components")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--in", dest="input", required=True)
        s.add_argument("--method", default="ccm")
        s.add_argument("--L", type=int, default=1)
        s.add_argument("--out", default=None)
        if name == "reconstruct":
            s.add_argument("--k", type=int, default=None)
        s.set_defaults(func=func)

    c = sub.add_parser("compare", parents=[common], help="compare PGA variants")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--methods", default="ccm,tangent,exact")
    c.add_argument("--L", type=int, default=1)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_compare)

    ig = sub.add_parser("infogeo", help="Gaussian and SPD mappings")
    isub = ig.add_subparsers(dest="infogeo_command", required=True)
    iw = isub.add_parser("iwasawa", parents=[common], help="Iwasawa coordinates of SPD matrices")
    iw.add_argument("--in", dest="input", required=True)
    iw.add_argument("--jitter", type=float, default=0.0, help="add jitter * I before use")
    iw.add_argument("--roundtrip-check", action="store_true")
    iw.set_defaults(func=cmd_iwasawa)
    ga = isub.add_parser("gaussians", parents=[common],
                         help="diagonal Gaussians to hyperboloid points")
    ga.add_argument("--in", dest="input", required=True)
    ga.add_argument("--mode", choices=("product", "concat"), default="concat")
    ga.add_argument("--out", default=None)
    ga.set_defaults(func=cmd_gaussians)
    fc = isub.add_parser("fisher-check", parents=[common],
                         help="Fisher-Rao length versus sqrt(2) x half-plane distance")
    fc.add_argument("--g1", default=None, help="'mean,std'")
    fc.add_argument("--g2", default=None, help="'mean,std'")
    fc.add_argument("--random", type=int, default=10, help="number of random pairs")
    fc.set_defaults(func=cmd_fisher_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            args.func(args)
    except NumericalFailure as err:
        print(f"ccmpga: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidArgumentError, DomainError, OSError) as err:
        print(f"ccmpga: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
