"""Command-line front end.

    robinkg solve --config example1a --out results/
    robinkg convergence --config example1a --m-list 4,8,16,32,64 --out example1a.csv
    robinkg field --config example1b --grid 50 50 --bbox -2.2 -2.2 2.2 2.2 --out field.csv

``--config`` takes a JSON file path or a bundled preset name. Exit codes:
0 success, 1 configuration or validation error, 2 numerical failure.
"""

import argparse
import csv
import logging
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import PRESETS, ConfigError, GridSpec, load_config
from .exceptions import DomainError, NumericalFailure
from .field import eval_interior, fundamental_solution, inside_domain
from .solver import solve_problem
from .validation import check_m_list

logger = logging.getLogger("robinkg")


def _fmt(v):
    return "" if v is None or (isinstance(v, float) and np.isnan(v)) else format(float(v), ".17g")


def _write_csv(path, header, rows):
    """Write rows atomically (temp file + rename), LF line endings."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _label(p):
    return f"({p[0]:g},{p[1]:g})"


def _probe_points(cfg):
    probes = cfg.probes if cfg.probes is not None else np.empty((0, 2))
    if probes.size:
        ok = inside_domain(cfg.problem, probes)
        if not np.all(ok):
            raise ConfigError(f"probe point {tuple(probes[~ok][0])} is not inside the domain")
    return probes


def _exact(cfg, pts):
    return fundamental_solution(pts, np.asarray(cfg.problem.data.y_star), cfg.problem.physics.kappa)


def _evaluate(sol, pts, oversample):
    if pts.shape[0] == 0:
        return np.empty(0)
    return eval_interior(sol, pts, oversample=oversample)


def cmd_solve(config, out_dir):
    """Solve at the configured M; write ``densities.csv`` and ``probes.csv``."""
    cfg = load_config(config)
    probes = _probe_points(cfg)
    if os.path.exists(out_dir) and not os.path.isdir(out_dir):
        raise ConfigError(f"output path {out_dir!r} is not a directory")
    sol = solve_problem(cfg.problem, cfg.M, cfg.split)
    u = _evaluate(sol, probes, cfg.oversample)

    os.makedirs(out_dir, exist_ok=True)
    t = sol.nodes
    rows = [(1, j, _fmt(t[j]), _fmt(sol.psi1[j])) for j in range(t.size)]
    rows += [(2, j, _fmt(t[j]), _fmt(sol.psi2[j])) for j in range(t.size)]
    _write_csv(os.path.join(out_dir, "densities.csv"), ["curve", "j", "t_j", "psi"], rows)

    header = ["x1", "x2", "u"]
    if cfg.exact_known:
        header.append("abs_error")
        err = np.abs(u - _exact(cfg, probes)) if probes.size else np.empty(0)
        prow = [(_fmt(p[0]), _fmt(p[1]), _fmt(v), _fmt(e)) for p, v, e in zip(probes, u, err)]
    else:
        prow = [(_fmt(p[0]), _fmt(p[1]), _fmt(v)) for p, v in zip(probes, u)]
    _write_csv(os.path.join(out_dir, "probes.csv"), header, prow)

    print(f"solved M={sol.M} ({4 * sol.M} unknowns); {len(prow)} probe(s) -> {out_dir}")
    for row in prow:
        print("  " + "  ".join(str(c) for c in row))
    return sol, u


def _threads():
    raw = os.environ.get("BEM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("ignoring non-integer BEM_THREADS=%r", raw)
    return os.cpu_count() or 1


def convergence_rows(cfg, m_list):
    """Rows of (M, label, x1, x2, u, error-or-difference) for a convergence study."""
    probes = _probe_points(cfg)
    if probes.shape[0] == 0:
        raise ConfigError("convergence study needs probe points")

    def run(M):
        sol = solve_problem(cfg.problem, M, cfg.split)
        return _evaluate(sol, probes, cfg.oversample)

    workers = min(_threads(), len(m_list))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(run, m_list))

    exact = _exact(cfg, probes) if cfg.exact_known else None
    rows = []
    prev = None
    for M, u in zip(m_list, values):
        if exact is not None:
            extra = np.abs(u - exact)
        else:
            extra = np.abs(u - prev) if prev is not None else [None] * len(u)
        for p, v, e in zip(probes, u, extra):
            rows.append((M, _label(p), p[0], p[1], v, e))
        prev = u
    return rows


def cmd_convergence(config, m_list, out_path):
    cfg = load_config(config)
    ms = check_m_list(m_list if m_list else cfg.m_list)
    rows = convergence_rows(cfg, ms)
    last = "abs_error" if cfg.exact_known else "successive_diff"
    _write_csv(
        out_path,
        ["M", "probe", "x1", "x2", "u", last],
        [(M, lab, _fmt(a), _fmt(b), _fmt(v), _fmt(e)) for M, lab, a, b, v, e in rows],
    )
    print(f"convergence study M={ms} -> {out_path}")
    print(f"  {'M':>4}  {'probe':<14} {'u':>22}  {last}")
    for M, lab, _, _, v, e in rows:
        print(f"  {M:>4}  {lab:<14} {v:>22.15g}  {_fmt(e)}")
    return rows


def cmd_field(config, out_path, grid=None, bbox=None):
    """Evaluate u on a rectangular grid; points outside D get an empty value."""
    cfg = load_config(config)
    if grid is not None or bbox is not None:
        if grid is None or bbox is None:
            raise ConfigError("--grid and --bbox must be given together")
        spec = GridSpec(tuple(float(v) for v in bbox), int(grid[0]), int(grid[1]))
        if spec.nx < 1 or spec.ny < 1 or not all(np.isfinite(spec.bbox)):
            raise ConfigError("grid needs nx, ny >= 1 and a finite bbox")
    elif cfg.grid is not None:
        spec = cfg.grid
    else:
        raise ConfigError("no grid given on the command line or in the configuration")

    pts = spec.points()
    u = np.full(pts.shape[0], np.nan)
    mask = inside_domain(cfg.problem, pts)
    if np.any(mask):
        sol = solve_problem(cfg.problem, cfg.M, cfg.split)
        u[mask] = eval_interior(sol, pts[mask], oversample=cfg.oversample)
    _write_csv(
        out_path,
        ["x1", "x2", "u"],
        [(_fmt(p[0]), _fmt(p[1]), _fmt(v)) for p, v in zip(pts, u)],
    )
    print(f"field {spec.nx}x{spec.ny}: {int(mask.sum())} of {pts.shape[0]} points inside D -> {out_path}")
    return pts, u


def _m_list_arg(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad M list {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="robinkg",
        description="Nystrom solver for a Robin problem of the modified Helmholtz equation "
        "in a doubly connected planar domain.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    config_help = f"JSON configuration file or preset name ({', '.join(PRESETS)})"

    p = sub.add_parser("solve", help="solve once and write densities and probe values")
    p.add_argument("--config", required=True, help=config_help)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("convergence", help="probe values/errors over a list of M")
    p.add_argument("--config", required=True, help=config_help)
    p.add_argument("--m-list", type=_m_list_arg, default=None, help="e.g. 4,8,16,32,64")
    p.add_argument("--out", required=True, help="output CSV file")

    p = sub.add_parser("field", help="solution on a rectangular grid as CSV")
    p.add_argument("--config", required=True, help=config_help)
    p.add_argument("--grid", nargs=2, type=int, metavar=("NX", "NY"))
    p.add_argument("--bbox", nargs=4, type=float, metavar=("X0", "Y0", "X1", "Y1"))
    p.add_argument("--out", required=True, help="output CSV file")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "solve":
            cmd_solve(args.config, args.out)
        elif args.command == "convergence":
            cmd_convergence(args.config, args.m_list, args.out)
        else:
            cmd_field(args.config, args.out, args.grid, args.bbox)
    except NumericalFailure as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
