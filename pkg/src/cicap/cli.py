"""Command-line frontend.

Exit codes: 0 success, 1 usage error, 2 input validation error,
3 verification failure.
"""
import argparse
import csv
import io as _io
import logging
import os
import sys

import numpy as np

from . import io, verify
from .capopt import OptConfig, maximally_mixed_ci, maximize_ci
from .channels import STANDARD_KINDS, choi_state, standard_channel
from .coherent import coherent_info, hashing_rate
from .exceptions import CicapError
from .states import twirl_closed_form

log = logging.getLogger("cicap")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3
MONOTONE_TOL = 1e-4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.12f}"


def _channel_from_args(args):
    if args.channel:
        if args.kind:
            raise UsageError("give either --channel or --kind/--param, not both")
        return io.load_channel(args.channel), [args.channel]
    if not args.kind or args.param is None:
        raise UsageError("need --channel FILE or --kind KIND --param P")
    return standard_channel(args.kind, args.param), []


def cmd_ci(args) -> int:
    rho = io.load_state(args.state)
    ci = coherent_info(rho, args.side)
    print(f"side: {ci.side}")
    print(f"raw: {_fmt(ci.raw)}")
    print(f"clipped: {_fmt(ci.clipped)}")
    return EXIT_OK


def capacity_report(channel, cfg: OptConfig) -> dict:
    res = maximize_ci(channel, cfg)
    return {
        "channel": channel.name,
        "n": cfg.n,
        "label": res.label,
        "best_ci_per_copy": res.best_ci_per_copy,
        "maximally_mixed_ci": maximally_mixed_ci(channel, cfg.n),
        "best_restart": res.best_restart,
        "per_restart": [
            {"restart": t.index, "value": t.value, "raw": t.raw, "iterations": t.iterations, "converged": t.converged}
            for t in res.per_restart
        ],
        "best_input": io.state_to_dict(res.best_input),
    }


def cmd_capacity(args) -> int:
    channel, inputs = _channel_from_args(args)
    seed = 0 if args.seed is None else args.seed
    cfg = OptConfig(n=args.n, restarts=args.restarts, seed=seed)
    body = capacity_report(channel, cfg)
    print(f"{body['channel']}  n={cfg.n}  best CI per copy = {_fmt(body['best_ci_per_copy'])}  ({body['label']})")
    print(f"maximally mixed input: {_fmt(body['maximally_mixed_ci'])}")
    print("restart  value           iterations  converged")
    for row in body["per_restart"]:
        print(f"{row['restart']:>7}  {_fmt(row['value'])}  {row['iterations']:>10}  {row['converged']}")
    if args.out:
        params = {"kind": args.kind, "param": args.param, "n": cfg.n, "restarts": cfg.restarts}
        body["manifest"] = io.manifest("capacity", inputs, params, args.seed, args.out)
        io.write_json(args.out, body)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)} or 'all'")
    seed = 0 if args.seed is None else args.seed
    ok = True
    lines = []
    for name in names:
        trials = args.trials if args.trials is not None else DEFAULT_TRIALS[name]
        report = verify.run_suite(name, trials, seed)
        body = report.to_dict()
        path = os.path.join(args.out, f"{name}.json")
        body["manifest"] = io.manifest("verify", (), {"suite": name, "trials": trials}, args.seed, path)
        io.write_json(path, body)
        ok &= report.ok
        lines.append(report.summary_line())
        print(report.summary_line())
        for f in report.failures()[:5]:
            print(f"  failed: {f.description}: lhs={f.lhs!r} rhs={f.rhs!r} margin={f.margin!r}")
    if len(names) > 1:
        passed = sum(1 for line in lines if ": PASS" in line)
        print(f"all: {passed}/{len(names)} suites passed; " + "; ".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


DEFAULT_TRIALS = {
    "lemma": 0,
    "theorem1": 0,
    "hashing": 100,
    "reduction": 10_000,
    "infoloss": 1000,
    "properties": 10_000,
}


def sweep_rows(kind: str, start: float, stop: float, step: float, n: int, seed: int) -> list:
    if step <= 0 or not (0 <= start <= stop <= 1):
        raise UsageError(f"invalid range: need 0 <= from <= to <= 1 and step > 0 (got {start}, {stop}, {step})")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    rows = []
    for k in range(count):
        p = round(start + k * step, 12)
        ch = standard_channel(kind, p)
        best = maximize_ci(ch, OptConfig(n=n, seed=seed)).best_ci_per_copy
        mm = maximally_mixed_ci(ch, n)
        if ch.d_in == ch.d_out:
            hr = hashing_rate(twirl_closed_form(choi_state(ch)))
        else:
            hr = float("nan")
        rows.append((p, best, mm, hr))
    for (p0, c0, _, _), (p1, c1, _, _) in zip(rows, rows[1:]):
        if c1 > c0 + MONOTONE_TOL:
            log.warning("maximize_ci increases from %.6g at %g to %.6g at %g", c0, p0, c1, p1)
    return rows


def cmd_sweep(args) -> int:
    if not args.kind:
        raise UsageError("sweep needs --kind")
    if args.out is None:
        raise UsageError("sweep needs --out CSV")
    seed = 0 if args.seed is None else args.seed
    rows = sweep_rows(args.kind, args.start, args.stop, args.step, args.n, seed)
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "maximize_ci", "maximally_mixed_ci", "twirled_choi_hashing_rate"])
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    io.atomic_write(args.out, buf.getvalue())
    params = {"kind": args.kind, "from": args.start, "to": args.stop, "step": args.step, "n": args.n}
    io.write_json(args.out + ".manifest.json", io.manifest("sweep", (), params, args.seed, args.out))
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cicap", description="Coherent information of states and channels.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ci", help="coherent information of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--side", choices=("A", "B"), default="B")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("capacity", help="finite-n CI lower bound of a channel")
    p.add_argument("--channel")
    p.add_argument("--kind", choices=STANDARD_KINDS)
    p.add_argument("--param", type=float)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", help=f"one of {', '.join(verify.SUITES)} or 'all'")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="reports", help="directory for report JSON files")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CI lower bound versus noise parameter, as CSV")
    p.add_argument("--kind", choices=STANDARD_KINDS)
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=0.5)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cicap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CicapError, ValueError, OSError) as exc:
        print(f"cicap: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
