"""Batch command-line front end.

Subcommands:

  pmf        full pmf/cdf table for one ensemble        (--n, --z)
  moments    exact moments and the tail ratio H_n       (--n, --z)
  asymptote  exact vs leading-order moments on an n-grid
             (--alpha, --beta, --grid)
  clt        KS distance to the limit law on an n-grid  (--alpha, --beta,
             --grid)
  sample     Monte Carlo summary, optionally raw draws  (--n, --z,
             --samples, --seed, --raw PATH)
  verify     quick self-check suite with pass/fail counts

Common flags: --format {csv,json}, --out PATH, --config PATH (threshold
overrides as key=value lines).  CSV output is UTF-8 with a header row and
LF line endings; JSON output is one object with command, params, rows,
and warnings.  Floats are serialized with 17 significant digits in both
formats, so the two renderings of a run carry identical numeric text.
Numerical-precision warnings raised during computation are collected into
the report (trailing "# warning:" lines in CSV); they never change the
exit status.

Exit status: 0 on success (for verify: all checks passed), 1 on failed
verify checks, 2 on usage errors, 3 on invalid (alpha, beta) paths.

n-grids accept a comma list ("100,1000,10000") or the geometric shorthand
"10^2..10^4 x3" (N points log-uniform between the powers); entries must
be strictly increasing integers >= 2.  Grid points are evaluated
concurrently; rows always come out in grid order.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .asymptotics import (FugacityPath, asymptotic_mean, asymptotic_variance,
                          classify, conditional_normal_moments)
from .config import DEFAULT, Thresholds, load_config
from .errors import (DomainError, GridError, SizeError, ValidityError)
from .gamma import eta, reg_gamma_q
from .limits import kappa, ks_distance, law_for_regime, limit_cdf
from .sampling import chi_square_gof, mc_moments, sample_lengths
from .saw import (SawEnsemble, distribution, exact_mean, exact_moment,
                  exact_variance, h_n, log_h_n, pmf, tail)

_GRID_SHORTHAND = re.compile(
    r"^10\^(?P<lo>-?\d+(?:\.\d+)?)\.\.10\^(?P<hi>-?\d+(?:\.\d+)?)"
    r"\s*[xX](?P<count>\d+)$")


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def parse_grid(text: str) -> list[int]:
    """Parse an n-grid: comma list or '10^a..10^b xN' shorthand."""
    text = text.strip()
    match = _GRID_SHORTHAND.match(text)
    if match:
        lo = float(match.group("lo"))
        hi = float(match.group("hi"))
        count = int(match.group("count"))
        if count < 1:
            raise ValueError("grid needs at least one point")
        if count == 1:
            exponents = [lo]
        else:
            step = (hi - lo) / (count - 1)
            exponents = [lo + i * step for i in range(count)]
        values = [round(10.0 ** e) for e in exponents]
    else:
        try:
            values = [int(part.strip()) for part in text.split(",") if part.strip()]
        except ValueError:
            raise ValueError(f"cannot parse grid {text!r}") from None
    if not values:
        raise ValueError("empty grid")
    if any(v < 2 for v in values):
        raise ValueError("grid entries must be >= 2")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("grid entries must be strictly increasing")
    return values


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation."""

    command: str
    fmt: str = "csv"
    out: str | None = None
    thresholds: Thresholds = DEFAULT
    n: int | None = None
    z: float | None = None
    alpha: float | None = None
    beta: float | None = None
    grid: list[int] | None = None
    grid_text: str | None = None
    samples: int = 1000
    seed: int = 0
    raw_path: str | None = None


@dataclass
class Report:
    command: str
    params: dict
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


# ----------------------------------------------------------------------
# serialization


def _render_csv(report: Report) -> str:
    lines_io = []

    class _Sink:
        def write(self, s):
            lines_io.append(s)

    writer = csv.writer(_Sink(), lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_fmt(v) for v in row])
    for msg in report.warnings:
        lines_io.append(f"# warning: {msg}\n")
    return "".join(lines_io)


def _json_scalar(value) -> str:
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return "null"
        return _fmt(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return json.dumps(str(value))


def _render_json(report: Report) -> str:
    # hand-rolled so floats carry the same 17-digit text as the CSV cells
    parts = ['{\n  "command": ', json.dumps(report.command), ',\n  "params": {']
    items = []
    for key, val in report.params.items():
        items.append(f"\n    {json.dumps(key)}: {_json_scalar(val)}")
    parts.append(",".join(items))
    parts.append("\n  },\n  \"rows\": [")
    row_texts = []
    for row in report.rows:
        cells = ", ".join(
            f"{json.dumps(col)}: {_json_scalar(v)}"
            for col, v in zip(report.columns, row))
        row_texts.append("\n    {" + cells + "}")
    parts.append(",".join(row_texts))
    parts.append("\n  ],\n  \"warnings\": [")
    parts.append(",".join(f"\n    {json.dumps(w)}" for w in report.warnings))
    parts.append("\n  ]\n}\n")
    return "".join(parts)


def _write_report(report: Report, config: RunConfig) -> None:
    text = _render_json(report) if config.fmt == "json" else _render_csv(report)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# subcommand bodies


def _cmd_pmf(config: RunConfig) -> Report:
    ens = SawEnsemble(config.n, config.z)
    dist = distribution(ens, config.thresholds)
    values = dist.pmf_values
    cdf = dist.cdf_values()
    report = Report("pmf",
                    {"n": config.n, "z": config.z, "nu": ens.nu},
                    ["k", "pmf", "cdf"])
    report.rows = [[k, float(values[k]), float(cdf[k])]
                   for k in range(ens.n)]
    return report


def _cmd_moments(config: RunConfig) -> Report:
    ens = SawEnsemble(config.n, config.z)
    thr = config.thresholds
    mean = exact_mean(ens, thr)
    var = exact_variance(ens, thr)
    report = Report(
        "moments",
        {"n": config.n, "z": config.z, "nu": ens.nu},
        ["n", "z", "nu", "mean", "variance", "moment_2", "moment_3",
         "h_n", "log_h_n"])
    report.rows = [[
        config.n, config.z, ens.nu, mean, var,
        var + mean * mean,
        exact_moment(ens, 3, thr),
        h_n(ens.n, ens.nu, thr),
        log_h_n(ens.n, ens.nu, thr),
    ]]
    return report


def _path(config: RunConfig) -> FugacityPath:
    return FugacityPath(config.alpha, config.beta)


def _cmd_asymptote(config: RunConfig) -> Report:
    path = _path(config)
    thr = config.thresholds

    def one(n: int):
        ens = path.ensemble_at(n)
        em = exact_mean(ens, thr)
        am = asymptotic_mean(path, n)
        ev = exact_variance(ens, thr)
        av = asymptotic_variance(path, n)
        return [n, em, am, em / am, ev, av, ev / av]

    report = Report(
        "asymptote",
        {"alpha": config.alpha, "beta": config.beta,
         "regime": classify(path).value, "grid": config.grid_text},
        ["n", "exact_mean", "asymptotic_mean", "mean_ratio",
         "exact_variance", "asymptotic_variance", "variance_ratio"])
    with ThreadPoolExecutor(max_workers=min(8, len(config.grid))) as pool:
        report.rows = list(pool.map(one, config.grid))
    return report


def _cmd_clt(config: RunConfig) -> Report:
    path = _path(config)
    thr = config.thresholds

    def one(n: int):
        rep = ks_distance(path, n, thresholds=thr)
        return [n, rep.regime.value, rep.ks_distance, rep.grid]

    report = Report(
        "clt",
        {"alpha": config.alpha, "beta": config.beta,
         "regime": classify(path).value, "grid": config.grid_text},
        ["n", "regime", "ks_distance", "grid"])
    with ThreadPoolExecutor(max_workers=min(8, len(config.grid))) as pool:
        report.rows = list(pool.map(one, config.grid))
    return report


def _cmd_sample(config: RunConfig) -> Report:
    ens = SawEnsemble(config.n, config.z)
    stats = mc_moments(ens, config.samples, config.seed, config.thresholds)
    if config.raw_path:
        lengths = sample_lengths(ens, config.samples, config.seed,
                                 config.thresholds)
        with open(config.raw_path, "w", encoding="utf-8", newline="") as fh:
            fh.write("length\n")
            fh.writelines(f"{int(v)}\n" for v in lengths)
    report = Report(
        "sample",
        {"n": config.n, "z": config.z, "samples": config.samples,
         "seed": config.seed},
        ["count", "mean", "variance", "std_error_of_mean"])
    report.rows = [[stats.count, stats.mean, stats.variance,
                    stats.std_error_of_mean]]
    return report


def _verify_checks(thresholds: Thresholds, seed: int):
    """(name, passed, detail) triples for the quick equivalence suite."""
    checks = []

    worst = 0.0
    for n in (2, 3, 7, 20, 40):
        for z in (0.5, 1.0, 2.0):
            ens = SawEnsemble(n, z)
            exact = oracle.brute_force_pmf(n, Fraction(z))
            for k in range(n):
                ref = float(exact[k])
                err = abs(pmf(ens, k, thresholds) - ref) / ref
                worst = max(worst, err)
    checks.append(("pmf_vs_enumeration", worst <= 1e-12,
                   f"worst rel err {worst:.3e} (tol 1e-12)"))

    worst = 0.0
    for n in (1, 10, 100, 500):
        for lam in (0.5, 1.0, 2.0):
            ref = float(oracle.q_highprec(n, n * lam))
            got = reg_gamma_q(n, n * lam, thresholds=thresholds)
            worst = max(worst, abs(got - ref) / ref)
    checks.append(("reg_gamma_q_vs_highprec", worst <= 1e-10,
                   f"worst rel err {worst:.3e} (tol 1e-10)"))

    worst = 0.0
    for z in (0.5, 1.0, 2.0):
        ens = SawEnsemble(500, z)
        dist = distribution(ens, thresholds)
        worst = max(worst,
                    abs(exact_mean(ens, thresholds) / dist.mean() - 1.0),
                    abs(exact_variance(ens, thresholds) / dist.variance() - 1.0))
    checks.append(("moments_vs_summation", worst <= 1e-10,
                   f"worst rel err {worst:.3e} (tol 1e-10)"))

    worst = 0.0
    for lam in (0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0):
        lhs = eta(lam, thresholds) ** 2 / 2.0
        rhs = lam - 1.0 - math.log(lam)
        if rhs != 0.0:
            worst = max(worst, abs(lhs / rhs - 1.0))
        else:
            worst = max(worst, abs(lhs))
    checks.append(("eta_identity", worst <= 1e-12,
                   f"worst rel err {worst:.3e} (tol 1e-12)"))

    worst = 0.0
    for n, lam in ((50, 0.6), (200, 1.9), (1000, 1.0), (400, 0.5)):
        a = log_h_n(n, n * lam, thresholds, form="eta")
        b = log_h_n(n, n * lam, thresholds, form="direct")
        worst = max(worst, abs(math.exp(a - b) - 1.0))
    checks.append(("h_n_dual_form", worst <= 1e-9,
                   f"worst rel err {worst:.3e} (tol 1e-9)"))

    worst = 0.0
    ens = SawEnsemble(60, 1.25)
    for k in range(ens.n):
        step = tail(ens, k - 1.0, thresholds) - tail(ens, float(k), thresholds)
        worst = max(worst, abs(step - pmf(ens, k, thresholds)))
    checks.append(("tail_pmf_telescoping", worst <= 1e-12,
                   f"worst abs err {worst:.3e} (tol 1e-12)"))

    r0, v0 = conditional_normal_moments(0.0)
    boundary = FugacityPath(0.0, 0.5)
    seam_ok = (asymptotic_mean(boundary, 10**4) == r0 * 100.0
               and asymptotic_variance(boundary, 10**4) == v0 * 10**4
               and limit_cdf(law_for_regime(classify(boundary), 0.0), 1.0)
               == limit_cdf(law_for_regime(classify(FugacityPath(0.0, 1.0)), 0.0), 1.0)
               and kappa(boundary, 10**4, 1.0) == kappa(FugacityPath(0.0, 1.0), 10**4, 1.0))
    checks.append(("critical_seam", seam_ok,
                   "alpha=0 boundary and critical-window coefficients share bits"))

    ens50 = SawEnsemble(50, 1.0)
    lengths = sample_lengths(ens50, 200_000, seed, thresholds)
    rep = chi_square_gof(ens50, lengths, thresholds=thresholds)
    repeat = sample_lengths(ens50, 200_000, seed, thresholds)
    det = bool((lengths == repeat).all())
    checks.append(("sampler_gof_and_determinism",
                   det and rep.p_value >= 1e-3,
                   f"chi2 p={rep.p_value:.4f} (need >= 1e-3), "
                   f"deterministic={det}"))
    return checks


def _cmd_verify(config: RunConfig) -> tuple[Report, bool]:
    checks = _verify_checks(config.thresholds, config.seed)
    passed = sum(1 for _, ok, _ in checks if ok)
    report = Report(
        "verify",
        {"checks": len(checks), "passed": passed,
         "failed": len(checks) - passed, "seed": config.seed},
        ["check", "status", "detail"])
    report.rows = [[name, "pass" if ok else "FAIL", detail]
                   for name, ok, detail in checks]
    return report, passed == len(checks)


# ----------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawlen",
        description="Walk-length statistics on the complete graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--config", metavar="PATH", default=None,
                       help="threshold overrides, key=value lines")

    p_pmf = sub.add_parser("pmf", help="full pmf/cdf table")
    p_pmf.add_argument("--n", type=int, required=True)
    p_pmf.add_argument("--z", type=float, required=True)
    common(p_pmf)

    p_mom = sub.add_parser("moments", help="exact moments and H_n")
    p_mom.add_argument("--n", type=int, required=True)
    p_mom.add_argument("--z", type=float, required=True)
    common(p_mom)

    for name, helptext in (("asymptote", "exact vs leading-order moments"),
                           ("clt", "KS distance to the limit law")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)
        p.add_argument("--grid", type=str, required=True,
                       help="comma list or '10^a..10^b xN'")
        common(p)

    p_sam = sub.add_parser("sample", help="Monte Carlo sampling")
    p_sam.add_argument("--n", type=int, required=True)
    p_sam.add_argument("--z", type=float, required=True)
    p_sam.add_argument("--samples", type=int, default=1000)
    p_sam.add_argument("--seed", type=int, default=0)
    p_sam.add_argument("--raw", metavar="PATH", default=None,
                       help="also write raw lengths to PATH (one per line)")
    common(p_sam)

    p_ver = sub.add_parser("verify", help="self-check suite")
    p_ver.add_argument("--seed", type=int, default=0)
    common(p_ver)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    thresholds = DEFAULT
    if getattr(args, "config", None):
        thresholds = load_config(args.config)
    grid = grid_text = None
    if getattr(args, "grid", None) is not None:
        try:
            grid = parse_grid(args.grid)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        grid_text = args.grid
    return RunConfig(
        command=args.command,
        fmt=getattr(args, "format", "csv"),
        out=getattr(args, "out", None),
        thresholds=thresholds,
        n=getattr(args, "n", None),
        z=getattr(args, "z", None),
        alpha=getattr(args, "alpha", None),
        beta=getattr(args, "beta", None),
        grid=grid,
        grid_text=grid_text,
        samples=getattr(args, "samples", 1000),
        seed=getattr(args, "seed", 0),
        raw_path=getattr(args, "raw", None),
    )


_BODIES = {
    "pmf": _cmd_pmf,
    "moments": _cmd_moments,
    "asymptote": _cmd_asymptote,
    "clt": _cmd_clt,
    "sample": _cmd_sample,
}


def run(config: RunConfig) -> int:
    """Execute one validated invocation; returns the exit status."""
    all_ok = True
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if config.command == "verify":
            report, all_ok = _cmd_verify(config)
        else:
            report = _BODIES[config.command](config)
    report.warnings = [str(w.message) for w in caught]
    _write_report(report, config)
    return 0 if all_ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except ValidityError as exc:
        print(f"sawlen: invalid path: {exc}", file=sys.stderr)
        return 3
    except (DomainError, GridError, SizeError, OSError) as exc:
        print(f"sawlen: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
