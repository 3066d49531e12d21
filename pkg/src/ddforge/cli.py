"""Command-line front end: ``ddforge {cell,table,sweep,export-schedule}``.

Frequencies on the command line are in units of 2*pi*MHz, so
``--epsilon 10`` means ``2*pi x 10 MHz``.  Exit codes: 0 success, 1 runtime
failure, 2 bad flags.
"""

import argparse
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import asdict

from . import __version__
from .gates import GATE_NAMES, get_gate, step_schedules
from .model import MHZ
from .montecarlo import TABLE_COLUMNS, TABLE_GATES, ExperimentConfig, reproduce_table, run_cell
from .schedule import PulseSchedule, schedule_to_dict

QUICK = (20, 100)

CSV_HEADER = ("gate,no_decoherence,no_dd,pdd_np12,cdd_nc3,"
              "no_dd_stderr,pdd_stderr,cdd_stderr")


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ddforge-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _manifest(configs, seed, wall, stats):
    return {
        "tool_version": __version__,
        "config_echo": [asdict(c) for c in configs],
        "master_seed": seed,
        "wall_time_s": wall,
        "cells": [s.as_dict() for s in stats],
    }


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _int_list(s):
    try:
        vals = [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {s!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("list must hold at least one positive integer")
    return vals


def _common(p, gate=True):
    p.add_argument("--case", choices=["1", "2", "custom"], default="1")
    if gate:
        p.add_argument("--gate", required=True, type=str.lower, choices=GATE_NAMES)
    p.add_argument("--epsilon", type=float, help="custom case, units of 2*pi*MHz")
    p.add_argument("--delta", type=float, help="custom case, units of 2*pi*MHz")
    p.add_argument("--jx", type=float, help="custom case, units of 2*pi*MHz")
    p.add_argument("--jz", type=float, help="custom case, units of 2*pi*MHz")


def _mc(p):
    p.add_argument("--states", type=_positive_int, default=100)
    p.add_argument("--noise", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help=f"use (states, noise) = {QUICK}")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="worker threads (default: DDFORGE_THREADS or CPU count, max 8)")


def build_parser():
    parser = argparse.ArgumentParser(prog="ddforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ddforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cell", help="estimate one fidelity cell")
    _common(p)
    _mc(p)
    p.add_argument("--dd", choices=["none", "pdd", "cdd"], default="none")
    p.add_argument("--np", dest="n_p", type=_positive_int)
    p.add_argument("--nc", dest="n_c", type=_positive_int)
    p.add_argument("--no-decoherence", action="store_true")
    p.add_argument("--out", help="write a JSON run manifest here")
    p.add_argument("--format", choices=["text", "csv", "md", "json"], default="text")

    p = sub.add_parser("table", help="full gate x column fidelity table")
    p.add_argument("--case", choices=["1", "2"], default="1")
    _mc(p)
    p.add_argument("--out", help="table file (a .manifest.json is written next to it)")
    p.add_argument("--format", choices=["csv", "md"], default="csv")

    p = sub.add_parser("sweep", help="fidelity versus DD order")
    _common(p)
    _mc(p)
    p.add_argument("--dd", choices=["pdd", "cdd"], required=True)
    p.add_argument("--np-list", type=_int_list)
    p.add_argument("--nc-list", type=_int_list)
    p.add_argument("--out")

    p = sub.add_parser("export-schedule", help="write the pulse schedule of a gate as JSON")
    _common(p)
    p.add_argument("--dd", choices=["none", "pdd", "cdd"], default="none")
    p.add_argument("--np", dest="n_p", type=_positive_int)
    p.add_argument("--nc", dest="n_c", type=_positive_int)
    p.add_argument("--out")
    return parser


def _dd_order(parser, args):
    if args.dd == "pdd":
        if args.n_p is None:
            parser.error("--dd pdd requires --np")
        return args.n_p
    if args.dd == "cdd":
        if args.n_c is None:
            parser.error("--dd cdd requires --nc")
        return args.n_c
    return None


def _system(parser, args):
    fields = {"epsilon": args.epsilon, "delta": args.delta, "j_x": args.jx, "j_z": args.jz}
    if args.case != "custom":
        if any(v is not None for v in fields.values()):
            parser.error("--epsilon/--delta/--jx/--jz are only valid with --case custom")
        return {}
    missing = [k for k, v in fields.items() if v is None]
    if missing:
        parser.error(f"--case custom requires {', '.join(missing)}")
    return {k: v * MHZ for k, v in fields.items()}


def _counts(args):
    return QUICK if args.quick else (args.states, args.noise)


def cmd_cell(parser, args):
    order = _dd_order(parser, args)
    system = _system(parser, args)
    n_states, n_noise = _counts(args)
    cfg = ExperimentConfig(gate=args.gate, case=args.case, dd=args.dd, dd_order=order,
                           n_states=n_states, n_noise=n_noise, master_seed=args.seed,
                           include_decoherence=not args.no_decoherence, **system)
    t0 = time.perf_counter()
    st = run_cell(cfg, args.workers)
    wall = time.perf_counter() - t0
    if args.format == "json":
        print(json.dumps({"gate": cfg.gate, "case": cfg.case, "dd": cfg.dd,
                          "order": order, **st.as_dict()}))
    elif args.format == "csv":
        print("gate,case,dd,order,mean,std_error,n_pairs")
        print(f"{cfg.gate},{cfg.case},{cfg.dd},{order or ''},{st.mean:.10f},{st.std_error:.10f},{st.n_pairs}")
    elif args.format == "md":
        print("| gate | case | dd | mean | std_error |\n|---|---|---|---|---|")
        print(f"| {cfg.gate} | {cfg.case} | {cfg.dd}{order or ''} | {st.mean:.4f} | {st.std_error:.4f} |")
    else:
        dd = cfg.dd + (f"({order})" if order else "")
        print(f"gate={cfg.gate} case={cfg.case} dd={dd} mean={st.mean:.6f} "
              f"std_error={st.std_error:.6f} n_pairs={st.n_pairs}")
    if args.out:
        atomic_write(args.out, json.dumps(_manifest([cfg], args.seed, wall, [st]), indent=2) + "\n")
    return 0


def format_table(table, fmt="csv"):
    buf = io.StringIO()
    if fmt == "csv":
        buf.write(CSV_HEADER + "\n")
        for g, row in table.items():
            means = [f"{row[c].mean:.10f}" for c in TABLE_COLUMNS]
            errs = [f"{row[c].std_error:.10f}" for c in ("no_dd", "pdd_np12", "cdd_nc3")]
            buf.write(",".join([g] + means + errs) + "\n")
    else:
        buf.write("| Gate | Without decoherence | Without DD | PDD (n_p=12) | CDD (n_c=3) |\n")
        buf.write("|---|---|---|---|---|\n")
        for g, row in table.items():
            buf.write(f"| {g} | " + " | ".join(f"{row[c].mean:.4f}" for c in TABLE_COLUMNS) + " |\n")
    return buf.getvalue()


def cmd_table(parser, args):
    n_states, n_noise = _counts(args)
    t0 = time.perf_counter()
    table = reproduce_table(f"case{args.case}", args.seed, n_states, n_noise, workers=args.workers)
    wall = time.perf_counter() - t0
    _emit(format_table(table, args.format), args.out)
    if args.out:
        cfgs, stats = [], []
        for g in TABLE_GATES:
            base = ExperimentConfig(gate=g, case=args.case, n_states=n_states, n_noise=n_noise,
                                    master_seed=args.seed)
            for col in TABLE_COLUMNS:
                cfgs.append(base.with_column(col))
                stats.append(table[g][col])
        atomic_write(args.out + ".manifest.json",
                     json.dumps(_manifest(cfgs, args.seed, wall, stats), indent=2) + "\n")
    return 0


def cmd_sweep(parser, args):
    values = args.np_list if args.dd == "pdd" else args.nc_list
    if not values:
        parser.error(f"--dd {args.dd} requires --{'np' if args.dd == 'pdd' else 'nc'}-list")
    system = _system(parser, args)
    n_states, n_noise = _counts(args)
    lines = ["n,mean,std_error"]
    for n in values:
        cfg = ExperimentConfig(gate=args.gate, case=args.case, dd=args.dd, dd_order=n,
                               n_states=n_states, n_noise=n_noise, master_seed=args.seed, **system)
        st = run_cell(cfg, args.workers)
        lines.append(f"{n},{st.mean:.10f},{st.std_error:.10f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def gate_schedule_document(gate, case="1", dd="none", order=None, **system):
    """Export document for a gate; composite gates concatenate their step schedules."""
    cfg = ExperimentConfig(gate=gate, case=case, **system)
    recipe = get_gate(gate)
    scheds = [s for _, s in step_schedules(recipe, cfg.params, (dd, order), cfg.reverse)]
    items = tuple(it for s in scheds for it in s.items)
    total = sum(s.total_time for s in scheds)
    doc = schedule_to_dict(PulseSchedule(total, items, dd, order or 0))
    doc = {"gate": recipe.name, **doc}
    if len(scheds) > 1:
        doc["steps"] = [{"name": st.name, "total_time_us": s.total_time, "n_items": len(s)}
                        for st, s in zip(recipe.steps, scheds)]
    return doc


def cmd_export_schedule(parser, args):
    order = _dd_order(parser, args)
    system = _system(parser, args)
    doc = gate_schedule_document(args.gate, args.case, args.dd, order, **system)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


COMMANDS = {
    "cell": cmd_cell,
    "table": cmd_table,
    "sweep": cmd_sweep,
    "export-schedule": cmd_export_schedule,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](parser, args)
    except (OSError, ValueError, KeyError, ArithmeticError) as exc:
        print(f"ddforge: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
