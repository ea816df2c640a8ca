"""Command-line interface: ``qcat report|sweep|figure|verify``.

Exit codes are 0 on success, 1 when ``verify`` finds a failing derived
check and 2 for usage or domain errors. Any option may also come from a
JSON file passed with ``--config``; explicit flags win over the file,
which wins over built-in defaults.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from collections import OrderedDict

import numpy as np

from . import _kernels
from . import observables as obs
from .errors import NonNormalizable, NullState, QcatError, UndefinedAtVacuum
from .oracle import GRID_ALPHA, GRID_KINDS, GRID_Q, OracleConfig, default_grid
from .qmath import as_q
from .states import KINDS, StateSpec, build_state, choose_truncation, photon_distribution
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
REPORT_LEVELS = 32

# reason codes written into cells that have no numeric value
NON_NORMALIZABLE = "non_normalizable"
NULL_STATE = "null_state"
UNDEFINED_AT_VACUUM = "undefined_at_vacuum"
NOT_APPLICABLE = "not_applicable"

QUANTITIES = (
    "var_x", "var_y", "g_q", "gur_lhs_sq", "gur_rhs_sq", "y_squeezed", "gur_satisfied",
    "mean_adaga", "mean_aadag", "mean_adagaadaga", "mean_adagaadaga_paper",
    "mean_n", "var_n_paper", "var_n_derived", "mandel_paper", "mandel_derived",
    "mandel_ordinary", "F", "R",
)
ALIASES = {"gur_rhs": "gur_rhs_sq", "gur_lhs": "gur_lhs_sq", "var_X": "var_x", "var_Y": "var_y",
           "G_q": "g_q", "mandel": "mandel_derived"}
DEFAULT_OUTPUTS = ("var_x", "var_y", "g_q", "gur_lhs_sq", "gur_rhs_sq", "y_squeezed",
                   "mean_n", "var_n_paper", "var_n_derived", "mandel_paper", "mandel_derived", "F", "R")
NUMBER_FIELDS = ("mean_n", "var_n_paper", "var_n_derived", "mandel_paper", "mandel_derived", "F", "R")
DEFAULT_Q_LIST = (0.8, 0.9, 0.99)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Point evaluation
# ---------------------------------------------------------------------------

def _reason(exc: Exception) -> str:
    if isinstance(exc, NonNormalizable):
        return NON_NORMALIZABLE
    if isinstance(exc, NullState):
        return NULL_STATE
    if isinstance(exc, UndefinedAtVacuum):
        return UNDEFINED_AT_VACUUM
    raise exc


def canonical_outputs(names) -> list[str]:
    out = []
    for raw in names:
        name = ALIASES.get(raw.strip(), raw.strip())
        if not name:
            continue
        if name not in QUANTITIES and not (name.startswith("p_") and name[2:].isdigit()):
            raise UsageError(f"unknown output {raw!r}; choose from {', '.join(QUANTITIES)} or p_<n>")
        out.append(name)
    if not out:
        raise UsageError("no outputs requested")
    return out


def evaluate_point(alpha: complex, q: float, kind: str, outputs) -> dict:
    """Requested quantities at one point; failures become reason-code strings."""
    spec = StateSpec(alpha, q, kind)
    try:
        spec.validate()
    except (NonNormalizable, NullState) as exc:
        return {name: _reason(exc) for name in outputs}

    parity = spec.parity
    if parity is None:
        moments = obs.coherent_moments(spec.alpha, spec.q)
        quad = obs.coherent_quadratures(spec.alpha, spec.q)
    else:
        moments = obs.cat_moments(spec.alpha, spec.q, parity)
        quad = obs.cat_quadratures(spec.alpha, spec.q, parity)
    try:
        if parity is None:
            num = obs.coherent_number_report(spec.alpha, spec.q).as_dict()
        else:
            num = obs.cat_number_report(spec.alpha, spec.q, parity).as_dict()
    except UndefinedAtVacuum as exc:
        num = {k: _reason(exc) for k in NUMBER_FIELDS}

    fourth_paper = moments.mean_AdagAAdagA_paper
    values = {
        "var_x": quad.var_X, "var_y": quad.var_Y, "g_q": quad.G_q,
        "gur_lhs_sq": quad.gur_lhs_sq, "gur_rhs_sq": quad.gur_rhs_sq,
        "y_squeezed": quad.y_squeezed, "gur_satisfied": quad.gur_satisfied,
        "mean_adaga": moments.mean_AdagA, "mean_aadag": moments.mean_AAdag,
        "mean_adagaadaga": moments.mean_AdagAAdagA,
        "mean_adagaadaga_paper": moments.mean_AdagAAdagA if fourth_paper is None else fourth_paper,
        **num,
    }
    if any(n == "mandel_ordinary" for n in outputs):
        if parity is None:
            values["mandel_ordinary"] = NOT_APPLICABLE
        else:
            try:
                values["mandel_ordinary"] = obs.ordinary_mandel(spec.alpha, parity)
            except UndefinedAtVacuum as exc:
                values["mandel_ordinary"] = _reason(exc)
    levels = [int(n[2:]) for n in outputs if n.startswith("p_")]
    if levels:
        N = max(choose_truncation(spec), max(levels))
        p = photon_distribution(build_state(spec, N))
        for k in levels:
            values[f"p_{k}"] = float(p[k])
    return {name: values[name] for name in outputs}


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        raise ValueError("NaN reached the writer; out-of-domain cells must carry a reason code")
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, complex):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def render_table(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(format_cell(c) for c in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        data = {"columns": list(columns), "rows": [[_json_value(c) for c in row] for row in rows]}
        return json.dumps(data, indent=1) + "\n"
    cells = [list(columns)] + [[format_cell(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def write_output(text: str, path: str | None):
    """Write to ``path`` through a temporary file in the same directory, or to stdout."""
    if not path or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".qcat-", suffix=".tmp", dir=directory)
    try:
        with io.open(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Sweeps and figure presets
# ---------------------------------------------------------------------------

def sweep_table(variable: str, start: float, stop: float, steps: int, q: float | None,
                alpha: complex | None, kind: str, outputs) -> tuple[list, list]:
    if variable not in ("alpha", "q"):
        raise UsageError("--var must be 'alpha' or 'q'")
    if steps < 2:
        raise UsageError("--steps must be >= 2")
    if not start < stop:
        raise UsageError("--from must be smaller than --to")
    if kind not in KINDS:
        raise UsageError(f"--kind must be one of {KINDS}")
    outputs = canonical_outputs(outputs)
    grid = np.linspace(start, stop, steps)
    rows = []
    if variable == "alpha":
        if q is None:
            raise UsageError("sweeping alpha needs --q")
        _check_q(q)
        for a in grid:
            vals = evaluate_point(complex(a), q, kind, outputs)
            rows.append([float(a)] + [vals[k] for k in outputs])
    else:
        if alpha is None:
            raise UsageError("sweeping q needs --alpha-re")
        if not (0.0 < start and stop <= 1.0):
            raise UsageError("q sweep must stay inside (0, 1]")
        for qv in grid:
            vals = evaluate_point(alpha, float(qv), kind, outputs)
            rows.append([float(qv)] + [vals[k] for k in outputs])
    return [variable] + outputs, rows


def _check_q(q):
    try:
        as_q(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _qtag(q: float) -> str:
    return f"q{q:g}"


def _multi_q_table(alphas, qs, kind, quantities, extra=None):
    columns = ["alpha"]
    for name in quantities:
        columns += [f"{name}_{_qtag(q)}" for q in qs]
    if extra:
        columns += [name for name, _ in extra]
    rows = []
    for a in alphas:
        per_q = {q: evaluate_point(complex(a), q, kind, quantities) for q in qs}
        row = [float(a)]
        for name in quantities:
            row += [per_q[q][name] for q in qs]
        for _, fn in extra or ():
            row.append(fn(float(a)))
        rows.append(row)
    return columns, rows


def _distribution_table(q, alpha):
    coh = StateSpec(alpha, q, "coherent")
    cat = StateSpec(alpha, q, "cat-even")
    N = max(choose_truncation(coh), choose_truncation(cat))
    pc = photon_distribution(build_state(coh, N))
    pe = photon_distribution(build_state(cat, N))
    rows = [[n, float(pc[n]), float(pe[n])] for n in range(N + 1)]
    return ["n", "p_n_coherent", "p_n_cat_even"], rows


def _mandel_table(parity, qs):
    kind = f"cat-{parity}"
    alphas = np.linspace(0.05, 2.2, 216)
    extra = [("mandel_ordinary", lambda a: obs.ordinary_mandel(a, parity))]
    return _multi_q_table(alphas, qs, kind, ["mandel_derived", "mandel_paper"], extra)


FIGURES = {
    "fig1a": "even cat, GUR sides vs |alpha| at q=0.8",
    "fig1b": "even cat, GUR sides vs q at |alpha|=0.8",
    "fig2": "even cat, var_y / var_x / g_q vs |alpha| per q",
    "fig3": "even cat, Y uncertainty vs q at |alpha|=0.9",
    "fig4a": "photon distributions at q=0.9, |alpha|=2.1",
    "fig4b": "photon distributions at q=0.9, |alpha|=1.8",
    "fig5a": "even cat Mandel vs |alpha| per q, plus q=1 closed form",
    "fig5b": "odd cat Mandel vs |alpha| per q, plus q=1 closed form",
}


def figure_table(preset: str, q_list=None) -> tuple[list, list]:
    qs = tuple(q_list) if q_list else DEFAULT_Q_LIST
    for q in qs:
        _check_q(q)
    gur = ["gur_lhs_sq", "gur_rhs_sq", "var_x", "var_y", "g_q"]
    if preset == "fig1a":
        return sweep_table("alpha", 0.01, 1.6, 160, 0.8, None, "cat-even", gur)
    if preset == "fig1b":
        return sweep_table("q", 0.5, 1.0, 101, None, 0.8 + 0j, "cat-even", gur)
    if preset == "fig2":
        return _multi_q_table(np.linspace(0.01, 2.2, 220), qs, "cat-even", ["var_y", "var_x", "g_q"])
    if preset == "fig3":
        return sweep_table("q", 0.5, 1.0, 101, None, 0.9 + 0j, "cat-even",
                           ["var_y", "g_q", "gur_rhs_sq", "y_squeezed"])
    if preset == "fig4a":
        return _distribution_table(0.9, 2.1 + 0j)
    if preset == "fig4b":
        return _distribution_table(0.9, 1.8 + 0j)
    if preset == "fig5a":
        return _mandel_table("even", qs)
    if preset == "fig5b":
        return _mandel_table("odd", qs)
    raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(FIGURES)}")


# ---------------------------------------------------------------------------
# Single-point report
# ---------------------------------------------------------------------------

def point_report(q: float, alpha: complex, kind: str) -> OrderedDict:
    """Every closed-form quantity at one point. Domain errors propagate."""
    spec = StateSpec(alpha, q, kind)
    spec.validate()
    rep = OrderedDict()
    rep["state"] = OrderedDict(kind=kind, q=spec.q.q, alpha=spec.alpha, abs_alpha_sq=spec.x,
                               radius=spec.q.radius, backend=_kernels.BACKEND)
    if spec.parity is None:
        moments = obs.coherent_moments(spec.alpha, spec.q)
        quad = obs.coherent_quadratures(spec.alpha, spec.q)
    else:
        moments = obs.cat_moments(spec.alpha, spec.q, spec.parity)
        quad = obs.cat_quadratures(spec.alpha, spec.q, spec.parity)
    rep["moments"] = OrderedDict((k, v) for k, v in moments.as_dict().items() if v is not None)
    rep["quadratures"] = OrderedDict(quad.as_dict())
    try:
        if spec.parity is None:
            num = obs.coherent_number_report(spec.alpha, spec.q)
        else:
            num = obs.cat_number_report(spec.alpha, spec.q, spec.parity)
        rep["number"] = OrderedDict(num.as_dict())
        sub = num.mandel_derived < 0
    except UndefinedAtVacuum:
        rep["number"] = OrderedDict((k, UNDEFINED_AT_VACUUM) for k in NUMBER_FIELDS)
        sub = False
    state = build_state(spec)
    p = photon_distribution(state)
    rep["distribution"] = OrderedDict(truncation=state.truncation, tail_residual=state.tail_residual,
                                      p_head=[float(v) for v in p[:REPORT_LEVELS]])
    rep["flags"] = OrderedDict(y_squeezed=quad.y_squeezed, gur_satisfied=quad.gur_satisfied,
                               sub_poissonian=bool(sub))
    return rep


def render_report(rep: OrderedDict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_json_value(rep), indent=1) + "\n"
    if fmt != "text":
        raise UsageError("report supports --format text or json")
    out = []
    for section, body in rep.items():
        out.append(f"[{section}]")
        for k, v in body.items():
            if k == "p_head":
                for n, pn in enumerate(v):
                    out.append(f"  P_{n:<3d} {format_cell(pn)}")
                continue
            if isinstance(v, complex):
                v = f"{format_cell(v.real)}{'+' if v.imag >= 0 else '-'}{format_cell(abs(v.imag))}j"
            elif not isinstance(v, str):
                v = format_cell(v)
            out.append(f"  {k:<24s}{v}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def parse_grid(items) -> list:
    """``--grid q=1 --grid alpha=0.3,0.8 --grid kind=coherent`` -> grid points."""
    axes = {"q": GRID_Q, "alpha": GRID_ALPHA, "kind": GRID_KINDS}
    for item in items or ():
        key, sep, vals = item.partition("=")
        key = key.strip()
        if not sep or key not in axes:
            raise UsageError(f"--grid expects q=..., alpha=... or kind=..., got {item!r}")
        parts = [v.strip() for v in vals.split(",") if v.strip()]
        if not parts:
            raise UsageError(f"--grid {key}= needs at least one value")
        if key == "kind":
            bad = [p for p in parts if p not in KINDS]
            if bad:
                raise UsageError(f"unknown kind(s) {bad}")
            axes[key] = tuple(parts)
        else:
            try:
                axes[key] = tuple(float(p) for p in parts)
            except ValueError:
                raise UsageError(f"--grid {key}= needs numbers, got {vals!r}") from None
    for q in axes["q"]:
        _check_q(q)
    return default_grid(axes["q"], axes["alpha"], axes["kind"])


def _summarise(records):
    groups = OrderedDict()
    for r in records:
        g = groups.setdefault(r.quantity_name, {"n": 0, "failed": 0, "abs": 0.0, "rel": 0.0, "ctx": ""})
        g["n"] += 1
        if not r.passed:
            g["failed"] += 1
            if not g["ctx"]:
                g["ctx"] = r.context
        if math.isnan(r.abs_gap) or r.abs_gap > g["abs"]:
            g["abs"] = r.abs_gap
        if math.isnan(r.rel_gap) or r.rel_gap > g["rel"]:
            g["rel"] = r.rel_gap
    return groups


def _record_table(records, verbose: bool) -> list[str]:
    if verbose:
        head = f"{'quantity':<62s} {'closed_form':>24s} {'oracle':>24s} {'abs_gap':>10s} {'rel_gap':>10s}  ok  context"
        lines = [head]
        for r in records:
            lines.append(f"{r.quantity_name:<62s} {r.closed_form:>24.17g} {r.oracle:>24.17g} "
                         f"{r.abs_gap:>10.3g} {r.rel_gap:>10.3g}  {'y' if r.passed else 'n':>2s}  {r.context}")
        return lines
    lines = [f"{'quantity':<62s} {'checks':>6s} {'failed':>6s} {'max_abs_gap':>11s} {'max_rel_gap':>11s}  first_failure"]
    for name, g in _summarise(records).items():
        lines.append(f"{name:<62s} {g['n']:>6d} {g['failed']:>6d} {g['abs']:>11.3g} {g['rel']:>11.3g}  {g['ctx']}")
    return lines


def render_verification(res, verbose: bool = False) -> str:
    out = [f"backend: {_kernels.BACKEND}", "", "derived checks"]
    out += _record_table(res.derived, verbose)
    out += ["", f"derived: {len(res.derived)} checks, {len(res.failures)} failed", ""]
    out.append("paper discrepancies")
    if res.paper_discrepancies:
        out += _record_table(res.paper_discrepancies, verbose)
    else:
        out.append("(none)")
    out += ["", f"paper: {len(res.paper)} comparisons, {len(res.paper_discrepancies)} differ",
            "status: " + ("PASS" if res.ok else "FAIL")]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _names(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcat", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def state_opts(p, need_alpha=True):
        p.add_argument("--q", type=float, default=None)
        p.add_argument("--alpha-re", type=float, default=None if not need_alpha else 0.0)
        p.add_argument("--alpha-im", type=float, default=0.0)
        p.add_argument("--kind", choices=KINDS, default="coherent")

    p = sub.add_parser("report", help="all quantities at one (q, alpha, kind)")
    state_opts(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sweep", help="tabulate quantities along alpha or q")
    state_opts(p, need_alpha=False)
    p.add_argument("--var", choices=("alpha", "q"), default="alpha")
    p.add_argument("--from", dest="start", type=float, default=None)
    p.add_argument("--to", dest="stop", type=float, default=None)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--outputs", type=_names, default=list(DEFAULT_OUTPUTS))
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    p = sub.add_parser("figure", help="data behind one figure preset")
    p.add_argument("--preset", required=True)
    p.add_argument("--q-list", type=_floats, default=list(DEFAULT_Q_LIST))
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    p = sub.add_parser("verify", help="closed forms against the Fock-space oracle")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--tol", type=float, default=1e-15, help="oracle truncation tolerance")
    p.add_argument("--grid", action="append", default=None, help="axis override, e.g. q=1 or alpha=0.3,0.8")
    p.add_argument("--grid-only", action="store_true", help="skip algebra, displacement and q=1 suites")
    p.add_argument("--verbose", action="store_true", help="one line per record")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.config:
        return args
    cfg = _load_config(args.config)
    # re-parse with the file's values as defaults so explicit flags still win
    sub_parser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub_parser._actions}
    renames = {"from": "start", "to": "stop"}
    defaults = {}
    for k, v in cfg.items():
        k = renames.get(k, k)
        if k in known:
            if k in ("outputs",) and isinstance(v, str):
                v = _names(v)
            if k == "q_list" and isinstance(v, str):
                v = _floats(v)
            if k == "grid" and isinstance(v, str):
                v = [v]
            defaults[k] = v
    sub_parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _alpha(args) -> complex | None:
    if args.alpha_re is None:
        return None
    return complex(args.alpha_re, args.alpha_im or 0.0)


def cmd_report(args) -> int:
    if args.q is None:
        raise UsageError("report needs --q")
    _check_q(args.q)
    rep = point_report(args.q, _alpha(args), args.kind)
    sys.stdout.write(render_report(rep, args.format))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.start is None or args.stop is None:
        raise UsageError("sweep needs --from and --to")
    cols, rows = sweep_table(args.var, args.start, args.stop, args.steps, args.q, _alpha(args),
                             args.kind, args.outputs)
    write_output(render_table(cols, rows, args.format), args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    cols, rows = figure_table(args.preset, args.q_list)
    write_output(render_table(cols, rows, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = parse_grid(args.grid) if args.grid else default_grid()
    try:
        cfg = OracleConfig(tol=args.tol, grid=grid, rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = run_verification(cfg, full=not args.grid_only)
    if args.format == "json":
        data = {"ok": res.ok, "derived": [r.as_dict() for r in res.derived],
                "paper_discrepancies": [r.as_dict() for r in res.paper_discrepancies]}
        sys.stdout.write(json.dumps(_json_value(data), indent=1) + "\n")
    else:
        sys.stdout.write(render_verification(res, args.verbose))
    return EXIT_OK if res.ok else EXIT_FAIL


COMMANDS = {"report": cmd_report, "sweep": cmd_sweep, "figure": cmd_figure, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:       # argparse exits 2 on bad usage already
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"qcat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, NonNormalizable, NullState, ValueError) as exc:
        print(f"qcat {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QcatError as exc:
        print(f"qcat {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
