"""Command-line front end.

Exit codes: 0 success, 2 domain or parse error, 3 convergence failure,
4 I/O failure.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import svg
from .errors import ConvergenceError, DomainError
from .molecules import (
    PRINTED_DELTA_W,
    builtin_table,
    default_beta_grid,
    load_table,
    mass_fit,
    sweep_figures,
    toy_delta_w,
    toy_fit,
)
from .oracle import ground_state_energy, scaled_energy, shooting_ground_state
from .variational import (
    minimize_lab,
    minimize_rel,
    numeric_minimize_lab,
    numeric_minimize_rel,
    virial_report,
)

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 2, 3, 4
OUTPUT_DIR_ENV = "CMVIRIAL_OUTPUT_DIR"
COMMANDS = ("variational", "exact", "sweep", "molecules", "report")


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: float | None = None
    tol: float = 1e-9
    grid_points: int = 50
    output_dir: str = "."
    format: str = "csv"
    emit_plots: bool = False
    input: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.grid_points < 2:
            raise DomainError(f"grid_points must be at least 2, got {self.grid_points}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        return self


def num(value):
    """Nine significant digits, the precision of every printed number."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    return f"{value:.9g}"


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

_CONVERTERS = {
    "beta": float,
    "tol": float,
    "grid_points": int,
    "output_dir": str,
    "format": str,
    "emit_plots": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
    "input": str,
}


def read_config_file(path):
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONVERTERS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CONVERTERS[key](value)
            except ValueError:
                raise DomainError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def resolve_config(args, environ=os.environ):
    """Built-in defaults < environment < config file < command-line flags."""
    settings = {}
    if environ.get(OUTPUT_DIR_ENV):
        settings["output_dir"] = environ[OUTPUT_DIR_ENV]
    if args.config:
        settings.update(read_config_file(args.config))
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if f.name != "command" and value is not None:
            settings[f.name] = value
    return replace(RunConfig(args.command), **settings).validate()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--tol", type=float, help="absolute tolerance (default 1e-9)")
    common.add_argument("--output-dir", dest="output_dir", help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")
    common.add_argument("--format", choices=("csv", "json"), help="printed report format (default csv)")

    parser = argparse.ArgumentParser(
        prog="cmvirial",
        description="Centre-of-mass contamination of variational energies in a quartic toy model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("variational", parents=[common], help="optimized relative and lab-frame Gaussians")
    p.add_argument("--beta", type=float, help="mass ratio m1/m2 (default 1)")

    p = sub.add_parser("exact", parents=[common], help="accurate ground state of the relative Hamiltonian")
    p.add_argument("--beta", type=float, help="mass ratio m1/m2 (default 1)")

    for name, text in (("sweep", "energy curves over beta"), ("report", "full reproduction report")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--grid-points", dest="grid_points", type=int, help="number of beta values (default 50)")
        if name == "sweep":
            p.add_argument("--emit-plots", dest="emit_plots", action="store_const", const=True, help="also write SVG")

    p = sub.add_parser("molecules", parents=[common], help="isotopologue table and 1/A fit")
    p.add_argument("--input", help="delimited table: name,w_reference,w_test,mass_number[,w_alt]")
    p.add_argument("--emit-plots", dest="emit_plots", action="store_const", const=True, help="also write SVG")
    return parser


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def render_pairs(pairs, fmt):
    if fmt == "json":
        return json.dumps({k: (json.loads(num(v)) if isinstance(v, (int, float)) else v) for k, v in pairs}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "value"])
    for key, value in pairs:
        writer.writerow([key, num(value) if isinstance(value, (int, float)) else value])
    return buf.getvalue()


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([num(v) if isinstance(v, (int, float)) else ("" if v is None else v) for v in row])
    return buf.getvalue()


def write_outputs(output_dir, files):
    """Write ``{name: text}`` into ``output_dir``, all or nothing."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, text in files.items():
            fd, tmp = tempfile.mkstemp(dir=out, prefix=f".{name}.", suffix=".tmp")
            staged.append((tmp, out / name))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        for tmp, final in staged:
            os.replace(tmp, final)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.remove(tmp)
        raise
    return [out / name for name in files]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def variational_pairs(beta, tol):
    rel, lab = minimize_rel(beta), minimize_lab(beta)
    rel_num = numeric_minimize_rel(beta, tol=min(tol, 1e-10))
    lab_num = numeric_minimize_lab(beta, tol=min(tol, 1e-10))
    pairs = [("beta", beta), ("w_rel", rel.energy), ("w_lab", lab.energy), ("delta_w", lab.energy - rel.energy)]
    pairs += [("rel_a", rel.widths[0]), ("lab_a", lab.widths[0]), ("lab_b", lab.widths[1])]
    for tag, res in (("rel", rel), ("lab", lab)):
        dec = res.decomposition
        vir = virial_report(res)
        pairs += [
            (f"{tag}_t_cm", dec.t_cm),
            (f"{tag}_t_rel", dec.t_rel),
            (f"{tag}_v", dec.v),
            (f"{tag}_total", dec.total),
            (f"{tag}_virial_total", vir.total),
            (f"{tag}_virial_relative_only", vir.relative_only),
        ]
    pairs += [
        ("rel_numeric_gap", abs(rel_num.energy - rel.energy)),
        ("lab_numeric_gap", abs(lab_num.energy - lab.energy)),
    ]
    return pairs


def cmd_variational(cfg, stdout):
    beta = 1.0 if cfg.beta is None else cfg.beta
    stdout.write(render_pairs(variational_pairs(beta, cfg.tol), cfg.format))


def cmd_exact(cfg, stdout):
    beta = 1.0 if cfg.beta is None else cfg.beta
    res = ground_state_energy(beta, max(cfg.tol, 1e-12))
    pairs = [
        ("beta", res.beta),
        ("e0", res.energy),
        ("basis_size", res.basis_size),
        ("residual", res.residual),
        ("basis_frequency", res.basis_frequency),
        ("scaled_e0", scaled_energy(res)),
    ]
    stdout.write(render_pairs(pairs, cfg.format))


def _fig2_chart(rows):
    betas = [r.beta for r in rows]
    return svg.Chart(
        "Ground-state energy of the quartic oscillator",
        "beta",
        "W",
        [
            svg.Series("W_rel (relative Gaussian)", betas, [r.w_rel for r in rows], "line"),
            svg.Series("W_lab (product Gaussian)", betas, [r.w_lab for r in rows], "dashed"),
            svg.Series("E0 (exact)", betas, [r.e0_exact for r in rows], "markers"),
        ],
    )


def _fig3_chart(rows):
    x = [r.beta_over_1p_beta for r in rows]
    return svg.Chart(
        "W_lab - W_rel vs beta/(1+beta)",
        "beta/(1+beta)",
        "delta W",
        [svg.Series("delta W", x, [r.delta_w for r in rows], "line")],
    )


def sweep_files(cfg):
    rows = sweep_figures(default_beta_grid(cfg.grid_points), cfg.tol)
    files = {
        "fig2.csv": csv_text(["beta", "w_rel", "w_lab", "e0_exact"], [(r.beta, r.w_rel, r.w_lab, r.e0_exact) for r in rows]),
        "fig3.csv": csv_text(
            ["beta", "beta_over_1p_beta", "delta_w"], [(r.beta, r.beta_over_1p_beta, r.delta_w) for r in rows]
        ),
    }
    if cfg.emit_plots:
        files["fig2.svg"] = svg.render(_fig2_chart(rows))
        files["fig3.svg"] = svg.render(_fig3_chart(rows))
    return rows, files


def cmd_sweep(cfg, stdout):
    rows, files = sweep_files(cfg)
    bad = [r.beta for r in rows if not (r.w_lab > r.w_rel > r.e0_exact)]
    if bad:
        raise ConvergenceError(f"ordering W_lab > W_rel > E0 violated at beta = {bad}")
    for path in write_outputs(cfg.output_dir, files):
        stdout.write(f"wrote {path}\n")


def molecule_files(cfg):
    records = builtin_table() if cfg.input is None else load_table(cfg.input)
    if len(records) < 2:
        raise DomainError(f"need at least 2 molecules, got {len(records)}")
    fit = mass_fit(records)
    printed = PRINTED_DELTA_W if cfg.input is None else {}
    table = csv_text(
        ["name", "w_reference", "w_test", "mass_number", "w_alt", "delta_w", "delta_w_printed"],
        [(r.name, r.w_ka, r.w_to, r.mass_number, r.w_kw, r.delta_w, printed.get(r.name)) for r in records],
    )
    fig1 = csv_text(
        ["inv_mass_number", "delta_w", "fit_prediction"],
        [(r.inverse_mass_number, r.delta_w, float(fit.predict(r.inverse_mass_number))) for r in records],
    )
    files = {"table1.csv": table, "fig1.csv": fig1}
    if cfg.emit_plots:
        xs = [r.inverse_mass_number for r in records]
        lo, hi = min(xs), max(xs)
        files["fig1.svg"] = svg.render(
            svg.Chart(
                "delta W vs 1/A",
                "1/A",
                "delta W (hartree)",
                [
                    svg.Series("delta W", xs, [r.delta_w for r in records], "markers"),
                    svg.Series("least-squares line", [lo, hi], [float(fit.predict(lo)), float(fit.predict(hi))]),
                ],
            )
        )
    return records, fit, files


def cmd_molecules(cfg, stdout):
    _, fit, files = molecule_files(cfg)
    paths = write_outputs(cfg.output_dir, files)
    stdout.write(render_pairs([("slope", fit.slope), ("intercept", fit.intercept), ("r_squared", fit.r_squared)], cfg.format))
    for path in paths:
        sys.stderr.write(f"wrote {path}\n")


def report_text(cfg):
    """The reproduction report as a deterministic Markdown document."""
    lines = ["# Centre-of-mass contamination: reproduction report", ""]

    records = builtin_table()
    fit1 = mass_fit(records)
    lines += ["## Isotopologue energies (hartree)", ""]
    lines += ["| molecule | A | W reference | W test | delta W | printed delta W | difference |", "|---|---|---|---|---|---|---|"]
    for r in records:
        printed = PRINTED_DELTA_W[r.name]
        lines.append(
            f"| {r.name} | {r.mass_number} | {num(r.w_ka)} | {num(r.w_to)} | {num(r.delta_w)} | {num(printed)} | {num(r.delta_w - printed)} |"
        )
    mismatched = [r.name for r in records if abs(r.delta_w - PRINTED_DELTA_W[r.name]) > 5e-7]
    lines += [
        "",
        "Printed delta W reproduced to 5e-7: " + ("all" if not mismatched else "no, differs for " + ", ".join(mismatched)),
        "",
    ]
    decreasing = all(a.delta_w > b.delta_w for a, b in zip(records, records[1:]))
    lines += [f"delta W strictly decreasing along the table: {'yes' if decreasing else 'no'}", ""]

    lines += ["## Toy model at beta = 1", ""]
    lines += [f"- {k}: {num(v)}" for k, v in variational_pairs(1.0, cfg.tol) if not k.endswith("numeric_gap")]
    exact = ground_state_energy(1.0, max(cfg.tol, 1e-12))
    shoot = shooting_ground_state(1.0)
    lines += [
        f"- e0 (basis, {exact.basis_size} functions): {num(exact.energy)}",
        f"- e0 (Numerov shooting): {num(shoot)}",
        "",
    ]

    lines += ["## Ordering W_lab > W_rel > E0", ""]
    rows = sweep_figures(default_beta_grid(cfg.grid_points), cfg.tol)
    failures = [r.beta for r in rows if not (r.w_lab - r.w_rel >= 1e-6 and r.w_rel - r.e0_exact >= 1e-6)]
    lines.append(f"grid: {len(rows)} values of beta in [{num(rows[0].beta)}, {num(rows[-1].beta)}]")
    lines.append(
        "all ordering checks passed" if not failures else "ordering FAILED at beta = " + ", ".join(num(b) for b in failures)
    )
    lines.append("")

    betas = [0.2 + 0.8 * i / 49 for i in range(50)]
    fit3 = toy_fit(betas)
    monotone = all(toy_delta_w(a) < toy_delta_w(b) for a, b in zip(default_beta_grid(100), default_beta_grid(100)[1:]))
    lines += ["## Regressions", ""]
    lines += [
        f"- delta W vs 1/A (six molecules): slope {num(fit1.slope)}, intercept {num(fit1.intercept)}, r^2 {num(fit1.r_squared)}",
        f"- toy delta W vs beta/(1+beta), beta in [0.2, 1] (50 points): slope {num(fit3.slope)}, "
        f"intercept {num(fit3.intercept)}, r^2 {num(fit3.r_squared)}",
        f"- toy delta W increasing on (0, 1]: {'yes' if monotone else 'no'}",
        "",
    ]
    return "\n".join(lines)


def cmd_report(cfg, stdout):
    (path,) = write_outputs(cfg.output_dir, {"report.md": report_text(cfg)})
    stdout.write(f"wrote {path}\n")


HANDLERS = {
    "variational": cmd_variational,
    "exact": cmd_exact,
    "sweep": cmd_sweep,
    "molecules": cmd_molecules,
    "report": cmd_report,
}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        HANDLERS[cfg.command](cfg, stdout)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        sys.stderr.write(f"convergence error: {exc}\n")
        return EXIT_CONVERGENCE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
