"""Experiment configuration and time-series files.

Config files are INI-style (``[section]`` headers, ``key = value`` lines)
and are read with :mod:`configparser`.  Recognised keys::

    [space_form]         kind = euclidean|spherical|hyperbolic ; K0 = <float>
    [initial_condition]  name = <generator> ; any other key is a generator parameter
    [run]                N, dt, T_end, base_index, reproject_every,
                         certify, convergence_levels, output_every
    [output]             path = <csv> ; summary = <txt>

Time series are CSV with a fixed header and every float written with 17
significant digits, so reading a file back reproduces the in-memory
doubles exactly.
"""

import ast
import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import UsageError
from .geometry import KINDS, SpaceForm

CSV_HEADER = "t,s,kappa,tau,psi_re,psi_im,A,gauge,nls_residual,arc_drift,constraint_res"
CSV_COLUMNS = tuple(CSV_HEADER.split(","))
FLOAT_FMT = "%.17g"


@dataclass
class ExperimentConfig:
    kind: str
    K0: float
    name: str
    params: dict
    N: int
    dt: float
    T_end: float
    base_index: int = 0
    reproject_every: int = 0
    certify: bool = False
    convergence_levels: int = 2
    output_every: int = 1
    path: Path = Path("vfe_timeseries.csv")
    summary: Path = None
    source: dict = field(default_factory=dict, repr=False)

    @property
    def space_form(self):
        return SpaceForm(self.kind, self.K0)


def _literal(text):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _get(cp, section, key, conv, default=None):
    if not cp.has_option(section, key):
        if default is None:
            raise UsageError(f"config is missing [{section}] {key}")
        return default
    raw = cp.get(section, key)
    try:
        return conv(raw)
    except ValueError:
        raise UsageError(f"[{section}] {key} = {raw!r} is not a valid {conv.__name__}") from None


def _bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


_bool.__name__ = "bool"


def load_config(path):
    """Parse and validate a config file.

    Raises
    ------
    UsageError
        For a missing file, a missing section or key, or an invalid value.
    """
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"config file not found: {path}")
    cp = configparser.ConfigParser()
    cp.optionxform = str  # parameter names are case sensitive
    try:
        cp.read(path)
    except configparser.Error as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from None
    for sec in ("space_form", "initial_condition", "run"):
        if not cp.has_section(sec):
            raise UsageError(f"config is missing section [{sec}]")

    kind = _get(cp, "space_form", "kind", str).strip().lower()
    if kind not in KINDS:
        raise UsageError(f"unknown space form {kind!r}; expected one of {list(KINDS)}")
    default_K0 = {"euclidean": 0.0, "spherical": 1.0, "hyperbolic": -1.0}[kind]
    K0 = _get(cp, "space_form", "K0", float, default_K0)

    name = _get(cp, "initial_condition", "name", str).strip()
    params = {k: _literal(v) for k, v in cp.items("initial_condition") if k != "name"}

    cfg = ExperimentConfig(
        kind=kind,
        K0=K0,
        name=name,
        params=params,
        N=_get(cp, "run", "N", int),
        dt=_get(cp, "run", "dt", float),
        T_end=_get(cp, "run", "T_end", float),
        base_index=_get(cp, "run", "base_index", int, 0),
        reproject_every=_get(cp, "run", "reproject_every", int, 0),
        certify=_get(cp, "run", "certify", _bool, False),
        convergence_levels=_get(cp, "run", "convergence_levels", int, 2),
        output_every=_get(cp, "run", "output_every", int, 1),
        path=Path(cp.get("output", "path", fallback="vfe_timeseries.csv")),
        source={s: dict(cp.items(s)) for s in cp.sections()},
    )
    summary = cp.get("output", "summary", fallback=None)
    cfg.summary = Path(summary) if summary else cfg.path.with_suffix(".summary.txt")
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    """Checks that do not need the initial filament (the step bound does)."""
    if cfg.N < 16 or cfg.N & (cfg.N - 1):
        raise UsageError(f"N must be a power of two >= 16, got {cfg.N}")
    if not cfg.T_end > 0:
        raise UsageError(f"T_end must be positive, got {cfg.T_end}")
    if not cfg.dt > 0:
        raise UsageError(f"dt must be positive, got {cfg.dt}")
    if not 0 <= cfg.base_index < cfg.N:
        raise UsageError(f"base_index must lie in [0, N), got {cfg.base_index}")
    if cfg.reproject_every < 0 or cfg.output_every < 1:
        raise UsageError("reproject_every must be >= 0 and output_every >= 1")
    if cfg.certify and cfg.convergence_levels < 2:
        raise UsageError("certification needs convergence_levels >= 2")


# --- time series -----------------------------------------------------------------


def trajectory_table(traj, every=1):
    """Rows ``(t, s, ...)`` of a :class:`~vfe.hasimoto.Trajectory`, one per (t, s)."""
    idx = np.arange(0, traj.t.size, every)
    if idx[-1] != traj.t.size - 1:
        idx = np.append(idx, traj.t.size - 1)
    n = traj.kappa.shape[1]
    per_time = np.stack([traj.t, traj.A, traj.gauge, traj.residual, traj.drift, traj.constraint], axis=1)[idx]
    rep = np.repeat(per_time, n, axis=0)
    psi = traj.psi[idx]
    return np.column_stack([
        rep[:, 0],
        np.tile(traj.s, idx.size),
        traj.kappa[idx].ravel(),
        traj.tau[idx].ravel(),
        psi.real.ravel(),
        psi.imag.ravel(),
        rep[:, 1],
        rep[:, 2],
        rep[:, 3],
        rep[:, 4],
        rep[:, 5],
    ])


def write_timeseries(path, table):
    table = np.asarray(table, dtype=float)
    if table.ndim != 2 or table.shape[1] != len(CSV_COLUMNS):
        raise UsageError(f"time-series table needs {len(CSV_COLUMNS)} columns")
    np.savetxt(path, table, fmt=FLOAT_FMT, delimiter=",", header=CSV_HEADER, comments="")


def read_timeseries(path):
    """Read a time-series CSV back into an ``(rows, 11)`` float array."""
    with open(path) as fh:
        header = fh.readline().strip()
    if header != CSV_HEADER:
        raise UsageError(f"{path}: unexpected header {header!r}")
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def write_points(path, filament):
    """Filament samples as CSV with columns ``x0, x1, ...`` plus a model line."""
    M = filament.M
    cols = ",".join(f"x{i}" for i in range(M.dim))
    header = f"# kind={M.kind} K0={FLOAT_FMT % M.K0}\n{cols}"
    np.savetxt(path, filament.points, fmt=FLOAT_FMT, delimiter=",", header=header, comments="")


def read_points(path):
    """Inverse of :func:`write_points`; returns ``(SpaceForm, points)``."""
    with open(path) as fh:
        meta = fh.readline().strip()
    try:
        fields = dict(item.split("=", 1) for item in meta.lstrip("# ").split())
        M = SpaceForm(fields["kind"], float(fields["K0"]))
    except (KeyError, ValueError):
        raise UsageError(f"{path}: first line must be '# kind=<kind> K0=<value>'") from None
    return M, np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
