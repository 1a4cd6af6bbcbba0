"""Plain-text file formats.

Point CSV::

    # model=sphere dim=2
    0.99500416527802582,0.099833416646828155,0
    ...

one point per row in ambient coordinates, 17 significant digits so values
round-trip exactly.  Loading re-validates every point against its model.

SPD CSV: header ``# spd n=<N>``, one matrix per row flattened row-major.
Gaussian CSV: header ``# gaussian dim=<N>``, each row ``means..., stds...``.
"""

import io as _io
import json

import numpy as np

from .errors import InvalidArgumentError
from .infogeo import DiagonalGaussian, check_spd
from .manifolds import make_manifold

FLOAT_FMT = "%.17g"


def _parse_header(line, kind=None):
    """``# [kind] key=value ...`` to a dict; ``kind`` must match if given."""
    text = line.strip()
    if not text.startswith("#"):
        raise InvalidArgumentError(f"missing '# ...' header line, got {text!r}")
    tokens = text[1:].split()
    if kind is not None:
        if not tokens or tokens[0] != kind:
            raise InvalidArgumentError(f"expected a '# {kind} ...' header, got {text!r}")
        tokens = tokens[1:]
    if not all("=" in t for t in tokens):
        raise InvalidArgumentError(f"malformed header {text!r}")
    return dict(t.split("=", 1) for t in tokens)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        body = fh.read()
    if not header:
        raise InvalidArgumentError(f"{path}: empty file")
    return header, body


def _rows(body, width, path):
    if not body.strip():
        return np.zeros((0, width))
    try:
        data = np.loadtxt(_io.StringIO(body), delimiter=",", ndmin=2)
    except ValueError as exc:
        raise InvalidArgumentError(f"{path}: malformed numeric data ({exc})") from exc
    if data.shape[1] != width:
        raise InvalidArgumentError(
            f"{path}: expected {width} columns per row, got {data.shape[1]}")
    if not np.all(np.isfinite(data)):
        raise InvalidArgumentError(f"{path}: non-finite values")
    return data


def _write(path, header, rows):
    buf = _io.StringIO()
    buf.write(header + "\n")
    if len(rows):
        np.savetxt(buf, np.atleast_2d(rows), fmt=FLOAT_FMT, delimiter=",")
    text = buf.getvalue()
    if path is None or path == "-":
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


def save_points(path, M, X):
    """Write points of ``M``; ``path=None`` returns the text instead."""
    X = M.check_point(np.atleast_2d(X), tol=1e-10)
    return _write(path, f"# model={M.name} dim={M.dim}", X)


def load_points(path, tol=1e-12):
    """Read a point CSV; returns ``(M, X)``."""
    header, body = _read(path)
    fields = _parse_header(header)
    try:
        M = make_manifold(fields["model"], int(fields["dim"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{path}: bad header {header.strip()!r}") from exc
    X = _rows(body, M.ambient_dim, path)
    if not len(X):
        raise InvalidArgumentError(f"{path}: no points")
    bad = np.abs(M.constraint_residual(X)) > tol
    if M.curvature < 0:
        bad |= X[:, 0] <= 0
    if np.any(bad):
        raise InvalidArgumentError(
            f"{path}: row(s) {list(np.flatnonzero(bad)[:5] + 1)} are not on {M!r}")
    return M, X


def save_spd(path, mats):
    mats = [check_spd(V) for V in mats]
    n = len(mats[0])
    if any(len(V) != n for V in mats):
        raise InvalidArgumentError("all matrices must have the same size")
    return _write(path, f"# spd n={n}", np.array([V.ravel() for V in mats]))


def load_spd(path, jitter=0.0):
    """Read SPD matrices; ``jitter`` adds ``jitter * I`` before validation."""
    header, body = _read(path)
    try:
        n = int(_parse_header(header, "spd")["n"])
    except (KeyError, ValueError) as exc:
        raise InvalidArgumentError(f"{path}: bad header {header.strip()!r}") from exc
    rows = _rows(body, n * n, path)
    out = []
    for i, r in enumerate(rows):
        V = r.reshape(n, n) + jitter * np.eye(n)
        try:
            out.append(check_spd(V))
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"{path}: matrix {i + 1}: {exc}") from exc
    return out


def save_gaussians(path, gs):
    dim = gs[0].dim
    rows = np.array([list(g.means) + list(g.stds) for g in gs])
    return _write(path, f"# gaussian dim={dim}", rows)


def load_gaussians(path):
    header, body = _read(path)
    try:
        dim = int(_parse_header(header, "gaussian")["dim"])
    except (KeyError, ValueError) as exc:
        raise InvalidArgumentError(f"{path}: bad header {header.strip()!r}") from exc
    rows = _rows(body, 2 * dim, path)
    return [DiagonalGaussian(r[:dim], r[dim:]) for r in rows]


def dump_json(obj, path=None):
    """Stable JSON text (sorted keys, full float precision)."""
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
