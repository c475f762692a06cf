"""Command-line front end.

Subcommands: verify (identity battery), symbol (covariant symbol of an
operator CSV), wigner (transforms of a state CSV against the vacuum window),
report (injectivity certificate, optionally swept over M).

Exit codes: 0 all checks passed / output written; 1 a numerical check failed;
2 invalid config or input.  Outputs land in --out with fixed names, each run
writing a manifest naming its files and residuals.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .core import ConfigError, HermiteState, OperatorMatrix, TruncationError
from .io import (config_to_dict, load_config, read_operator_csv,
                 read_state_csv, write_grid_csv, write_run_manifest)
from .schroedinger import RepresentationContext, gaussian_vector
from .symbols import covariant_symbol, injectivity_report
from .transforms import coefficient_map, inverse_fourier_orbit
from .verify import run_verification


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="berezin",
        description="Covariant-symbol calculus on the Heisenberg group: "
                    "verification battery, symbol/transform export, and "
                    "injectivity certification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True,
                        help="path to the JSON model config")
        sp.add_argument("--out", default="./out",
                        help="output directory (default ./out)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks (default 0)")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable stdout instead of the table")

    sp = sub.add_parser("verify", help="run the full identity battery")
    common(sp)
    sp = sub.add_parser("symbol", help="covariant symbol of an operator")
    common(sp)
    sp.add_argument("--operator", required=True,
                    help="CSV of M^n x M^n re,im pairs, row-major")
    sp = sub.add_parser("wigner",
                        help="ambiguity and Wigner transforms of a state")
    common(sp)
    sp.add_argument("--state", required=True,
                    help="CSV of M^n coefficients, one re,im per line")
    sp = sub.add_parser("report", help="injectivity certificate")
    common(sp)
    sp.add_argument("--sweep", default=None, metavar="M1..M2",
                    help="report a truncation range, e.g. 1..4")
    return p


def cmd_verify(cfg, args) -> int:
    report = run_verification(cfg, seed=args.seed)
    table_path = os.path.join(args.out, "verify_table.txt")
    with open(table_path, "w", encoding="utf-8") as fh:
        fh.write(report.table() + "\n")
    write_run_manifest(os.path.join(args.out, "verify_manifest.json"),
                       cfg, "verify", [table_path], report.residual_summary())
    if args.json:
        print(json.dumps({"passed": report.passed,
                          "failures": report.failures(),
                          "residual_summary": report.residual_summary()},
                         indent=2, sort_keys=True))
    else:
        print(report.table())
    if not report.passed:
        print("failed checks: %s" % ", ".join(report.failures()),
              file=sys.stderr)
        return 1
    return 0


def cmd_symbol(cfg, args) -> int:
    entries = read_operator_csv(args.operator, cfg.dim)
    A = OperatorMatrix(entries=entries)
    ctx = RepresentationContext(cfg)
    sym = covariant_symbol(ctx, A)
    csv_path = os.path.join(args.out, "berezin_symbol.csv")
    write_grid_csv(csv_path, sym, "berezin_symbol", cfg)
    write_run_manifest(os.path.join(args.out, "symbol_manifest.json"),
                       cfg, "symbol",
                       [csv_path, csv_path + ".manifest.json"], {})
    if args.json:
        print(json.dumps({"outputs": [csv_path]}, indent=2, sort_keys=True))
    else:
        print("wrote %s (quantity berezin_symbol)" % csv_path)
    return 0


def cmd_wigner(cfg, args) -> int:
    coeffs = read_state_csv(args.state, cfg.dim)
    f = HermiteState(coeffs=coeffs)
    ctx = RepresentationContext(cfg)
    amb = coefficient_map(ctx, f, gaussian_vector(cfg))
    wig = inverse_fourier_orbit(amb)
    amb_path = os.path.join(args.out, "ambiguity.csv")
    wig_path = os.path.join(args.out, "wigner.csv")
    write_grid_csv(amb_path, amb, "ambiguity", cfg)
    write_grid_csv(wig_path, wig, "wigner", cfg)
    outputs = [amb_path, amb_path + ".manifest.json",
               wig_path, wig_path + ".manifest.json"]
    write_run_manifest(os.path.join(args.out, "wigner_manifest.json"),
                       cfg, "wigner", outputs, {})
    if args.json:
        print(json.dumps({"outputs": [amb_path, wig_path]},
                         indent=2, sort_keys=True))
    else:
        print("wrote %s and %s" % (amb_path, wig_path))
    return 0


def _parse_sweep(text: str) -> tuple:
    parts = text.split("..")
    try:
        m1, m2 = (int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError("--sweep expects M1..M2, got %r" % text) from exc
    if len(parts) != 2 or m1 < 1 or m2 < m1:
        raise ConfigError("--sweep expects 1 <= M1 <= M2, got %r" % text)
    return m1, m2


def _flat_report(cfg, rep: dict) -> dict:
    return {"config": config_to_dict(cfg),
            "sigma_min": rep["sigma_min"], "sigma_max": rep["sigma_max"],
            "cond": rep["cond"], "verdict": rep["verdict"],
            "baselines": rep["baselines"]}


def cmd_report(cfg, args) -> int:
    json_path = os.path.join(args.out, "injectivity.json")
    if args.sweep is None:
        rep = injectivity_report(RepresentationContext(cfg))
        doc = _flat_report(cfg, rep)
        summary = {"sigma_min": rep["sigma_min"]}
        lines = ["sigma_min = %.12g" % rep["sigma_min"],
                 "sigma_max = %.12g" % rep["sigma_max"],
                 "cond      = %.12g" % rep["cond"],
                 "verdict   = %s" % rep["verdict"]]
    else:
        m1, m2 = _parse_sweep(args.sweep)
        rows, summary = [], {}
        for M in range(m1, m2 + 1):
            sub = dataclasses.replace(cfg, M=M)
            rep = injectivity_report(RepresentationContext(sub))
            rows.append({"M": M, "sigma_min": rep["sigma_min"],
                         "sigma_max": rep["sigma_max"], "cond": rep["cond"],
                         "verdict": rep["verdict"],
                         "baselines": rep["baselines"]})
            summary["sigma_min_M%d" % M] = rep["sigma_min"]
        doc = {"config": config_to_dict(cfg), "sweep": rows}
        lines = ["%3s  %14s  %14s  %12s  %s" %
                 ("M", "sigma_min", "sigma_max", "cond", "verdict")]
        for r in rows:
            lines.append("%3d  %14.8e  %14.8e  %12.6g  %s" %
                         (r["M"], r["sigma_min"], r["sigma_max"], r["cond"],
                          r["verdict"]))
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_run_manifest(os.path.join(args.out, "report_manifest.json"),
                       cfg, "report", [json_path], summary)
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


_COMMANDS = {"verify": cmd_verify, "symbol": cmd_symbol,
             "wigner": cmd_wigner, "report": cmd_report}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        os.makedirs(args.out, exist_ok=True)
        return _COMMANDS[args.command](cfg, args)
    except (ConfigError, TruncationError, ValueError, OSError, MemoryError,
            NotImplementedError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
