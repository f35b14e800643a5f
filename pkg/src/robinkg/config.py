"""Run configuration files (JSON) and bundled presets.

Schema::

    {
      "physics": {"kappa": 1, "lambda1": 1, "lambda2": 1},
      "gamma1": {"kind": "ellipse", "a": 1.3, "b": 1},
      "gamma2": {"kind": "trig", "x1_cos": [0.5], "x2_const": -0.15,
                 "x2_sin": [0.4], "x2_cos": [0, 0.15]},
      "data": {"kind": "fundamental", "y_star": [4, 0]},
      "M": 16,
      "m_list": [4, 8, 16, 32, 64],
      "probes": [[0, 0.5], [1, 0]],
      "grid": {"bbox": [x0, y0, x1, y1], "nx": 50, "ny": 50},
      "oversample": 4,
      "split": "analytic"
    }

Only ``physics``, ``gamma1``, ``gamma2`` and ``data`` are required.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .exceptions import DomainError
from .geometry import curve_from_dict
from .kernels import SPLITS, PhysicsParams
from .solver import ProblemSpec, RobinData
from .validation import check_m, check_m_list

PRESETS = ("example1a", "example1b", "example2")

_KEYS = {"physics", "gamma1", "gamma2", "data", "M", "m_list", "probes", "grid", "oversample", "split"}


class ConfigError(DomainError):
    """The configuration file is missing, malformed or describes an invalid problem."""


@dataclass(frozen=True)
class GridSpec:
    bbox: tuple
    nx: int
    ny: int

    def points(self):
        x0, y0, x1, y1 = self.bbox
        xs = np.linspace(x0, x1, self.nx)
        ys = np.linspace(y0, y1, self.ny)
        X, Y = np.meshgrid(xs, ys, indexing="xy")
        return np.column_stack([X.ravel(), Y.ravel()])


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemSpec
    M: int = 16
    m_list: tuple = ()
    probes: np.ndarray = field(default=None, compare=False)
    grid: GridSpec = None
    oversample: int = 4
    split: str = "analytic"

    @property
    def exact_known(self):
        return self.problem.data.kind == "fundamental"


def _physics(d):
    try:
        return PhysicsParams(float(d["kappa"]), float(d["lambda1"]), float(d["lambda2"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad physics block: {exc}") from exc


def _data(d):
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("data block must be an object with a 'kind' key")
    kind = d["kind"]
    if kind == "fundamental":
        return RobinData.fundamental(d.get("y_star", ()))
    if kind == "polynomial_example2":
        return RobinData.polynomial_example2()
    if kind == "nodal":
        return RobinData.nodal(d.get("f1"), d.get("f2"))
    raise ConfigError(f"unknown data kind {kind!r}")


def _grid(d):
    try:
        bbox = tuple(float(v) for v in d["bbox"])
        nx, ny = int(d["nx"]), int(d["ny"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad grid block: {exc}") from exc
    if len(bbox) != 4 or not all(np.isfinite(bbox)) or nx < 1 or ny < 1:
        raise ConfigError("grid needs a finite 4-value bbox and nx, ny >= 1")
    return GridSpec(bbox, nx, ny)


def parse_config(raw):
    """Build a :class:`RunConfig` from a decoded JSON object."""
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(raw) - _KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    for key in ("physics", "gamma1", "gamma2", "data"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}")
    try:
        problem = ProblemSpec(
            _physics(raw["physics"]),
            curve_from_dict(raw["gamma1"]),
            curve_from_dict(raw["gamma2"]),
            _data(raw["data"]),
        )
        M = check_m(raw.get("M", 16))
        m_list = tuple(check_m_list(raw["m_list"])) if "m_list" in raw else ()
        probes = None
        if "probes" in raw:
            probes = np.asarray(raw["probes"], dtype=float).reshape(-1, 2)
            if not np.all(np.isfinite(probes)):
                raise ConfigError("probe points must be finite")
        grid = _grid(raw["grid"]) if "grid" in raw else None
        oversample = check_m(raw.get("oversample", 4), minimum=1)
    except ConfigError:
        raise
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    split = raw.get("split", "analytic")
    if split not in SPLITS:
        raise ConfigError(f"split must be one of {SPLITS}")
    return RunConfig(problem, M, m_list, probes, grid, oversample, split)


def load_config(source):
    """Load a configuration from a file path or a preset name."""
    try:
        if source in PRESETS:
            text = resources.files("robinkg.presets").joinpath(f"{source}.json").read_text()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        raw = json.loads(text)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {source!r}: {exc}") from exc
    return parse_config(raw)
