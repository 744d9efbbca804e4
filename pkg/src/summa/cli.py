"""Command-line front end ``summa``.

Subcommands: kernel, means, maxop, norm, verify, figure.  Exit status is
0 on success, 1 on a computation error (or a failed verification) and 2
on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import __version__, harness, norms, svg
from . import theta as theta_mod
from .errors import SpecError, SummaError
from .kernels import KernelSpec, kernel_on_grid
from .maximal import maximal_function, poisson_maximal
from .spectral import GridFunction, grid_points, summability_mean
from .testfuncs import names as testfunc_names, test_function

FORMATS = ("csv", "json", "svg")
FIGURES = {
    "f13": ("Dirichlet kernel D_n, n=5", {"kind": "kernel", "d": 1, "method": "dirichlet", "n": 5}),
    "f14": ("Fejer kernel K_n, n=5", {"kind": "kernel", "d": 1, "method": "fejer", "n": 5}),
    "f15": ("Dirichlet kernel, d=2, q=1, n=4", {"kind": "kernel", "d": 2, "method": "dirichlet", "n": 4, "q": 1}),
    "f16": ("Dirichlet kernel, d=2, q=2, n=4", {"kind": "kernel", "d": 2, "method": "dirichlet", "n": 4, "q": 2}),
    "f17": ("Dirichlet kernel, d=2, q=inf, n=4",
            {"kind": "kernel", "d": 2, "method": "dirichlet", "n": 4, "q": math.inf}),
    "f18": ("Riesz kernel, d=2, q=1, n=4, alpha=1, gamma=1",
            {"kind": "kernel", "d": 2, "method": "riesz", "n": 4, "q": 1, "alpha": 1.0, "gamma": 1.0}),
    "f19": ("Riesz kernel, d=2, q=inf, n=4, alpha=1, gamma=1",
            {"kind": "kernel", "d": 2, "method": "riesz", "n": 4, "q": math.inf, "alpha": 1.0, "gamma": 1.0}),
    "f20": ("Riesz kernel, d=2, q=2, n=4, alpha=1, gamma=1",
            {"kind": "kernel", "d": 2, "method": "riesz", "n": 4, "q": 2, "alpha": 1.0, "gamma": 1.0}),
    "f21": ("Bochner-Riesz kernel, d=2, n=4, alpha=1, gamma=2",
            {"kind": "kernel", "d": 2, "method": "riesz", "n": 4, "q": 2, "alpha": 1.0, "gamma": 2.0}),
    "f22": ("Bochner-Riesz kernel, d=2, n=4, alpha=1/2, gamma=2",
            {"kind": "kernel", "d": 2, "method": "riesz", "n": 4, "q": 2, "alpha": 0.5, "gamma": 2.0}),
    "f23": ("Rectangular Dirichlet kernel, n=(3,5)", {"kind": "kernel", "d": 2, "method": "dirichlet", "n": [3, 5]}),
    "f24": ("Rectangular Fejer kernel, n=(3,5)", {"kind": "kernel", "d": 2, "method": "fejer", "n": [3, 5]}),
    "f25": ("Riesz summability function, alpha=1, gamma=2",
            {"kind": "theta", "factory": lambda: theta_mod.riesz(1.0, 2.0, "radial")}),
    "f26": ("Weierstrass summability function exp(-|t|^2)",
            {"kind": "theta", "factory": lambda: theta_mod.weierstrass(2.0, "radial")}),
    "f27": ("exp(1-(1+|t|_2^2)^gamma), gamma=2",
            {"kind": "theta", "factory": lambda: theta_mod.exp_composite(2.0, 2.0, "radial")}),
    "f28": ("Picard-Bessel summability function, alpha=2, gamma=2",
            {"kind": "theta", "factory": lambda: theta_mod.picard_bessel(2.0, 2.0, "radial")}),
}
NORMS = ("lp", "weak", "llogl", "herz-E", "herz-Eprime", "dp", "wiener")
MAXOPS = ("cube", "cone", "strong", "poisson")


class UsageError(Exception):
    """Bad flag value; carries the flag name for the message."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"argument {flag}: {message}")
        self.flag = flag


# ------------------------------------------------------------------ flag types

def positive_int(s) -> int:
    try:
        v = int(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}") from None
    if v != float(s) or v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}")
    return v


def nonneg_int(s) -> int:
    try:
        v = int(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s!r}")
    return v


def grid_size(s) -> int:
    v = positive_int(s)
    if v < 4 or v & (v - 1):
        raise argparse.ArgumentTypeError(f"grid size must be a power of two >= 4, got {s!r}")
    return v


def q_value(s) -> float:
    if str(s).lower() in ("inf", "infinity"):
        return math.inf
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected 1, 2 or inf, got {s!r}") from None
    if v not in (1.0, 2.0) and not math.isinf(v):
        raise argparse.ArgumentTypeError(f"expected 1, 2 or inf, got {s!r}")
    return v


def positive_float(s) -> float:
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s!r}")
    return v


def nonneg_float(s) -> float:
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {s!r}") from None
    if not v >= 0 or math.isnan(v):
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {s!r}")
    return v


def p_value(s) -> float:
    if str(s).lower() in ("inf", "infinity"):
        return math.inf
    return positive_float(s)


# flag name -> (type, default); shared by the command line and --config
COMMON = {
    "d": (positive_int, 1),
    "q": (q_value, math.inf),
    "method": (str, "dirichlet"),
    "alpha": (nonneg_float, None),
    "gamma": (positive_float, None),
    "n": (positive_int, None),
    "theta": (str, None),
    "grid": (grid_size, 256),
    "tau": (lambda s: _at_least_one(s), 2.0),
    "format": (str, "csv"),
    "out": (str, None),
    "seed": (nonneg_int, 0),
}
EXTRA = {
    "kernel": {},
    "means": {"function": (str, "bump")},
    "maxop": {"function": (str, "jump"), "variant": (str, "cube")},
    "norm": {"function": (str, "bump"), "norm": (str, "lp"), "p": (p_value, 2.0), "variant": (str, "E")},
    "verify": {"suite": (str, "all"), "report": (str, None)},
    "figure": {"id": (str, None)},
}
CHOICES = {
    "method": ("dirichlet", "fejer", "riesz", "cesaro", "theta"),
    "format": FORMATS,
    "function": tuple(testfunc_names()),
    "variant": None,  # depends on subcommand
    "norm": NORMS,
    "suite": tuple(sorted(harness.SUITES)) + ("all",),
    "id": tuple(FIGURES),
    "theta": tuple(theta_mod.catalog_names()),
}


def _at_least_one(s) -> float:
    v = positive_float(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"cone aperture must be >= 1, got {s!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="summa", description="Summability kernels, means, maximal operators and norms on the torus.")
    parser.add_argument("--version", action="version", version=f"summa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "kernel": "evaluate a summability kernel on the grid",
        "means": "apply a summability mean to a built-in test function",
        "maxop": "maximal function of a built-in test function",
        "norm": "function-space norm of a test function or theta",
        "verify": "run verification suites",
        "figure": "emit figure data (CSV) or an SVG plot",
    }
    for name, extra in EXTRA.items():
        p = sub.add_parser(name, help=helps[name])
        for flag, (typ, _default) in {**COMMON, **extra}.items():
            kw = {"type": typ, "default": argparse.SUPPRESS}
            choices = CHOICES.get(flag)
            if flag == "variant":
                choices = MAXOPS if name == "maxop" else ("E", "Eprime")
            if choices:
                kw["choices"] = choices
            if flag == "n":
                kw["action"] = "append"
                kw["help"] = "mean index; repeat for a rectangular multi-index"
            p.add_argument(f"--{flag}", **kw)
        p.add_argument("--config", default=None, help="JSON file with flag values; flags override it")
        if name == "verify":
            p.add_argument("--no-timing", dest="no_timing", action="store_true",
                           help="omit runtime_seconds so reports are byte-identical across runs")
    return parser


def _merge_config(command: str, ns: argparse.Namespace) -> dict:
    table = {**COMMON, **EXTRA[command]}
    values = {k: v for k, v in table.items()}
    merged = {k: default for k, (_t, default) in table.items()}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("--config", f"cannot read {ns.config!r}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("--config", "top level must be a JSON object")
        for key, raw in cfg.items():
            flag = key.replace("_", "-")
            if key not in values:
                raise UsageError("--config", f"unknown key {key!r}")
            typ = values[key][0]
            try:
                if key == "n":
                    merged[key] = [typ(v) for v in (raw if isinstance(raw, list) else [raw])]
                else:
                    merged[key] = typ(raw)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"--{flag}", str(exc)) from None
            choices = CHOICES.get(key)
            if choices and merged[key] not in choices and key != "variant":
                raise UsageError(f"--{flag}", f"invalid choice {merged[key]!r}")
    for key in table:
        if hasattr(ns, key):
            merged[key] = getattr(ns, key)
    merged["no_timing"] = getattr(ns, "no_timing", False)
    return merged


# ------------------------------------------------------------------ helpers

def kernel_spec(cfg: dict) -> KernelSpec:
    """KernelSpec from merged flags; raises UsageError on inconsistent flags."""
    n = cfg["n"]
    if n is None:
        raise UsageError("--n", "required")
    d = cfg["d"]
    method = cfg["method"]
    theta = None
    if method == "theta":
        if cfg["theta"] is None:
            raise UsageError("--theta", "required when --method theta")
        theta = theta_mod.from_catalog(cfg["theta"])
    elif cfg["theta"] is not None:
        raise UsageError("--theta", "only valid with --method theta")
    if len(n) > 1 or method == "theta":
        nn = tuple(n) if len(n) > 1 else (n[0],) * d
        if len(nn) != d:
            raise UsageError("--n", f"got {len(nn)} values for d = {d}")
        region, q, nval = "rectangular", math.inf, nn
    else:
        region, q, nval = "ellq", cfg["q"], n[0]
    alpha = cfg["alpha"] if cfg["alpha"] is not None else (1.0 if method in ("riesz", "cesaro") else 0.0)
    gamma = cfg["gamma"] if cfg["gamma"] is not None else 1.0
    try:
        return KernelSpec(d, method, nval, region=region, q=q, alpha=alpha, gamma_exp=gamma, theta=theta)
    except SpecError as exc:
        raise UsageError("--method", str(exc)) from None


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _param_string(cfg: dict, keys) -> str:
    parts = []
    for k in keys:
        v = cfg.get(k)
        if v is None:
            continue
        if isinstance(v, list):
            v = "x".join(_fmt(a) for a in v)
        parts.append(f"{k}={_fmt(v)}")
    return " ".join(parts)


def format_csv(command: str, params: str, columns: list, rows: np.ndarray) -> str:
    lines = [f"# summa v1, {command}, {params}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def grid_rows(values: np.ndarray, G: int, d: int) -> tuple[list, np.ndarray]:
    pts = grid_points(G, d).reshape(-1, d)
    cols = ["x", "y", "z"][:d] if d <= 3 else [f"x{i}" for i in range(1, d + 1)]
    return cols + ["value"], np.column_stack([pts, np.asarray(values, dtype=float).reshape(-1)])


def write_output(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


PARAM_KEYS = {
    "kernel": ["d", "method", "q", "alpha", "gamma", "n", "theta", "grid"],
    "means": ["d", "method", "q", "alpha", "gamma", "n", "theta", "grid", "function"],
    "maxop": ["d", "function", "variant", "tau", "grid"],
}


def emit_grid(command: str, cfg: dict, values: np.ndarray, G: int, d: int, title: str, extra: dict = None):
    params = _param_string(cfg, PARAM_KEYS[command])
    fmt = cfg["format"]
    if fmt == "csv":
        cols, rows = grid_rows(values, G, d)
        text = format_csv(command, params, cols, rows)
    elif fmt == "json":
        doc = {"summa": "v1", "command": command, "params": params, "grid": G, "d": d,
               "values": np.asarray(values, dtype=float).ravel().tolist()}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=1, allow_nan=False) + "\n"
    else:
        if d == 1:
            text = svg.line_plot(grid_points(G, 1)[:, 0], values, title)
        elif d == 2:
            text = svg.heat_map(values, title=title)
        else:
            raise UsageError("--format", "svg output needs d <= 2")
    write_output(text, cfg["out"])


# ------------------------------------------------------------------ subcommands

def cmd_kernel(cfg: dict) -> int:
    spec = kernel_spec(cfg)
    G = cfg["grid"]
    _check_cells(G, spec.d)
    values = kernel_on_grid(spec, G)
    emit_grid("kernel", cfg, values, G, spec.d, spec.label())
    return 0


def _check_cells(G: int, d: int):
    if G**d > 2**24:
        raise UsageError("--grid", f"grid {G}^{d} is too large (more than 2^24 points)")


def cmd_means(cfg: dict) -> int:
    spec = kernel_spec(cfg)
    G = cfg["grid"]
    _check_cells(G, spec.d)
    f = test_function(cfg["function"], spec.d)
    vals = summability_mean(f.spectrum(G), spec).samples.real
    err = float(np.max(np.abs(vals - f.grid_values(G))))
    emit_grid("means", cfg, vals, G, spec.d, f"{spec.label()} mean of {f.name}", {"sup_error": err})
    return 0


def cmd_maxop(cfg: dict) -> int:
    G, d = cfg["grid"], cfg["d"]
    _check_cells(G, d)
    f = GridFunction(test_function(cfg["function"], d).grid_values(G))
    if cfg["variant"] == "poisson":
        vals = poisson_maximal(f).samples
    else:
        vals = maximal_function(f, cfg["variant"], cfg["tau"]).samples
    emit_grid("maxop", cfg, vals, G, d, f"{cfg['variant']} maximal function of {cfg['function']}")
    return 0


def cmd_norm(cfg: dict) -> int:
    G, d, p, kind = cfg["grid"], cfg["d"], cfg["p"], cfg["norm"]
    _check_cells(G, d)
    if kind == "wiener":
        if cfg["theta"] is None:
            raise UsageError("--theta", "required for --norm wiener")
        rep = norms.wiener_amalgam_norm(theta_mod.from_catalog(cfg["theta"]), 64, d)
        value, extra = rep.value, {"truncation": rep.truncation}
    else:
        f = GridFunction(test_function(cfg["function"], d).grid_values(G))
        extra = {}
        if kind == "lp":
            value = norms.lp_norm(f, p)
        elif kind == "weak":
            value = norms.lp_norm(f, p, "weak")
        elif kind == "llogl":
            if p != int(p) or p < 1:
                raise UsageError("--p", "L log L power must be a positive integer")
            value = norms.llogl_norm(f, int(p))
        elif kind in ("herz-E", "herz-Eprime"):
            value = norms.herz_norm(f, p, "E" if kind == "herz-E" else "Eprime")
        else:
            value = norms.dp_norm(f, p)
    params = _param_string(cfg, ["d", "function", "norm", "p", "theta", "grid"])
    fmt = cfg["format"]
    if fmt == "csv":
        text = format_csv("norm", params, ["norm", "p", "value"], [])
        text += f"{kind},{_fmt(float(p))},{float(value):.17g}\n"
    elif fmt == "json":
        text = json.dumps({"summa": "v1", "command": "norm", "params": params, "norm": kind,
                           "p": _fmt(float(p)), "value": float(value), **extra}, indent=1) + "\n"
    else:
        raise UsageError("--format", "norm output is csv or json")
    write_output(text, cfg["out"])
    return 0


def cmd_verify(cfg: dict) -> int:
    names = sorted(harness.SUITES) if cfg["suite"] == "all" else [cfg["suite"]]
    reports = [harness.run_suite(n) for n in names]
    timing = not cfg["no_timing"]
    for r in reports:
        print(r.summary_line(), file=sys.stderr)
    if cfg["report"] is not None:
        if len(reports) == 1:
            text = reports[0].to_json(timing)
        else:
            text = json.dumps([r.to_dict(timing) for r in reports], indent=2, allow_nan=False) + "\n"
        with open(cfg["report"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0 if all(r.passed for r in reports) else 1


def figure_data(fig_id: str, G: int = 0) -> tuple[str, list, np.ndarray, int]:
    """(title, columns, rows, d) for a catalog figure."""
    title, desc = FIGURES[fig_id]
    if desc["kind"] == "kernel":
        n = desc["n"]
        d = desc["d"]
        if isinstance(n, list):
            spec = KernelSpec(d, desc["method"], tuple(n), region="rectangular")
        else:
            spec = KernelSpec(d, desc["method"], n, q=desc.get("q", math.inf),
                              alpha=desc.get("alpha", 0.0), gamma_exp=desc.get("gamma", 1.0))
        G = G or (512 if d == 1 else 128)
        cols, rows = grid_rows(kernel_on_grid(spec, G), G, d)
        return title, cols, rows, d
    theta = desc["factory"]()
    m = 101
    t = np.linspace(-2.0, 2.0, m)
    pts = np.stack(np.meshgrid(t, t, indexing="ij"), axis=-1)
    vals = theta(pts)
    rows = np.column_stack([pts.reshape(-1, 2), np.asarray(vals).reshape(-1)])
    return title, ["t1", "t2", "value"], rows, 2


def cmd_figure(cfg: dict) -> int:
    fig_id = cfg["id"]
    if fig_id is None:
        raise UsageError("--id", "required")
    title, cols, rows, d = figure_data(fig_id)
    fmt = cfg["format"]
    if fmt == "csv":
        text = format_csv("figure", f"id={fig_id}", cols, rows)
    elif fmt == "svg":
        if d == 1:
            text = svg.line_plot(rows[:, 0], rows[:, 1], title)
        else:
            side = int(round(math.sqrt(len(rows))))
            lo, hi = float(rows[:, 0].min()), float(rows[:, 0].max())
            text = svg.heat_map(rows[:, -1].reshape(side, side), (lo, hi, lo, hi), title)
    else:
        raise UsageError("--format", "figure output is csv or svg")
    write_output(text, cfg["out"])
    return 0


COMMANDS = {"kernel": cmd_kernel, "means": cmd_means, "maxop": cmd_maxop, "norm": cmd_norm,
            "verify": cmd_verify, "figure": cmd_figure}


def _check_threads():
    raw = os.environ.get("SUMMA_THREADS")
    if raw is None:
        return None
    try:
        v = int(raw)
        if v < 1:
            raise ValueError
    except ValueError:
        raise UsageError("SUMMA_THREADS", f"expected a positive integer, got {raw!r}") from None
    return v


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        _check_threads()
        cfg = _merge_config(ns.command, ns)
        return COMMANDS[ns.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"summa {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except (SummaError, OSError) as exc:
        print(f"summa {ns.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
