"""Side-by-side runs of the PGA variants on one dataset."""

import time

import numpy as np

from .errors import DomainError, InvalidArgumentError, NumericalFailure
from .frechet import MeanConfig, as_dataset, frechet_mean, frechet_variance
from .pga import DirectionSearchConfig, run_pga, subspace_projection_error

SHORT_NAMES = {"ccm": "ccm-epga", "tangent": "tangent-pca", "pga": "tangent-pca",
               "exact": "exact-pga-baseline"}
TIMING_KEYS = ("elapsed_s",)


def parse_methods(text):
    """``"ccm,tangent,exact"`` to full method tags (order kept, duplicates dropped)."""
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        tag = SHORT_NAMES.get(tok, tok)
        if tag not in SHORT_NAMES.values():
            raise InvalidArgumentError(f"unknown method {tok!r}")
        if tag not in out:
            out.append(tag)
    if not out:
        raise InvalidArgumentError("no methods given")
    return out


def run_compare(M, X, methods, L=1, seed=0, dataset=None, cfg=None, mean_cfg=None):
    """Run every method on ``X`` and collect a JSON-ready report.

    The Fréchet mean is computed once and shared.  A method that raises a
    numerical or domain error gets ``avg_proj_error = None`` and an
    ``error`` message; the remaining methods still run.
    """
    X = as_dataset(M, X)
    cfg = cfg or DirectionSearchConfig(seed=seed)
    mu = frechet_mean(M, X, mean_cfg or MeanConfig())
    var = frechet_variance(M, X, mu)
    rows = []
    for name in methods:
        t0 = time.perf_counter()
        row = {"name": name, "frechet_variance": var}
        try:
            res = run_pga(name, M, X, L, cfg=cfg, mean=mu)
            row["avg_proj_error"] = subspace_projection_error(M, X, mu, res.directions)
            row["directions"] = res.directions.tolist()
        except (NumericalFailure, DomainError) as err:
            row.update(avg_proj_error=None, directions=[], error=str(err))
        row["elapsed_s"] = time.perf_counter() - t0
        rows.append(row)
    info = {"model": M.name, "dim": M.dim, "n": len(X), "L": int(L),
            "mean": np.asarray(mu).tolist()}
    info.update(dataset or {})
    return {"dataset": info, "methods": rows, "seed": int(seed)}


def strip_timings(report):
    """Copy of ``report`` without wall-clock fields (for determinism checks)."""
    out = dict(report)
    out["methods"] = [{k: v for k, v in m.items() if k not in TIMING_KEYS}
                      for m in report["methods"]]
    return out
