"""Command-line front door: construct codes, sweep bounds, verify symmetry,
simulate ML erasure decoding, and collect conjecture evidence.

Every command that writes an output file also writes `<out>.manifest.json`
echoing the fully resolved configuration; re-running from a manifest
reproduces the outputs byte for byte.

Exit codes: 0 success, 2 validation error, 3 infeasible design, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .bec import polar_code_bec, simulate_fer
from .construction import (
    DesignSpec,
    bound_curve,
    check_conjecture,
    construct,
    lower_bound,
    verify_symmetry,
)
from .monomials import (
    MonomialCode,
    code_params,
    load_code,
    reed_muller,
    serialize_code,
)
from .symmetry import is_invariant, is_weakly_decreasing

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    """Resolved configuration of one command invocation; the manifest."""

    command: str
    options: dict = field(default_factory=dict)
    version: str = __version__

    def write_manifest(self, out_path: str) -> None:
        path = out_path + ".manifest.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PSC_LAB_WORKERS", "1")))
    except ValueError:
        return 1


def parse_eps_grid(text: str) -> list[float]:
    """Grid syntax: a single value, a comma list, or start:stop:step
    (endpoints included within half a step)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"bad grid {text!r}, expected start:stop:step", EXIT_VALIDATION)
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise CliError(f"bad grid {text!r}", EXIT_VALIDATION)
        out = []
        i = 0
        while True:
            val = start + i * step
            if val > stop + step / 2:
                break
            out.append(round(val, 12))
            i += 1
        return out
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError(f"bad erasure probability list {text!r}", EXIT_VALIDATION) from None


def _parse_spec_string(text: str) -> DesignSpec:
    """Parse 'm=9,t=7,k=256,d=5' (d optional, defaults to m)."""
    fields = {}
    for tok in text.split(","):
        if not tok.strip():
            continue
        if "=" not in tok:
            raise CliError(f"bad spec token {tok!r}", EXIT_VALIDATION)
        key, val = tok.split("=", 1)
        try:
            fields[key.strip()] = int(val)
        except ValueError:
            raise CliError(f"bad spec value {tok!r}", EXIT_VALIDATION) from None
    try:
        m = fields.pop("m")
        t = fields.pop("t")
        k = fields.pop("k")
        d = fields.pop("d", m)
    except KeyError as exc:
        raise CliError(f"spec missing field {exc}", EXIT_VALIDATION) from None
    if fields:
        raise CliError(f"unknown spec fields {sorted(fields)}", EXIT_VALIDATION)
    return _design_spec(m, t, k, d)


def _design_spec(m: int, t: int, k: int, d: int | None) -> DesignSpec:
    try:
        return DesignSpec(m, t, k, m if d is None else d)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None


def _load_code_file(path: str) -> MonomialCode:
    try:
        return load_code(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_VALIDATION) from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


# --- construct ---------------------------------------------------------------


def cmd_construct(args) -> int:
    spec = _design_spec(args.m, args.t, args.k, args.d)
    trace = lower_bound(spec)
    code = construct(spec)
    n, k, dmin = code_params(code)
    _write_text(args.out, serialize_code(code))
    trace_path = args.trace or args.out + ".trace"
    _write_text(trace_path, "\n".join(trace.log_lines()) + "\n")
    config = RunConfig(
        "construct",
        {"m": spec.m, "t": spec.t, "k": spec.k_target, "d": spec.d,
         "out": args.out, "trace": trace_path},
    )
    config.write_manifest(args.out)
    print(f"({n},{k},{dmin}) kproj={trace.kproj}")
    if not trace.achieved:
        print(
            f"warning: k={spec.k_target} not achievable at this granularity; "
            f"wrote nearest achievable k={trace.k}",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    return EXIT_OK


# --- bound -------------------------------------------------------------------

BOUND_COLUMNS = ["m", "t", "d", "k", "rate", "k_proj", "proj_rate"]


def cmd_bound(args) -> int:
    if args.t_all:
        ts = list(range(1, args.m + 1))
    elif args.t:
        ts = sorted(set(itertools.chain.from_iterable(args.t)))
    else:
        raise CliError("need -t or --t-all", EXIT_VALIDATION)
    if not all(1 <= t <= args.m for t in ts):
        raise CliError(f"t values must lie in 1..{args.m}", EXIT_VALIDATION)
    d = args.d if args.d is not None else args.m
    if not 1 <= d <= args.m:
        raise CliError(f"d must lie in 1..{args.m}", EXIT_VALIDATION)
    rows = []
    for t in ts:
        rows.extend(bound_curve(args.m, t, d))
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=BOUND_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from None
    config = RunConfig("bound", {"m": args.m, "t": ts, "d": d, "out": args.out})
    config.write_manifest(args.out)
    print(f"wrote {len(rows)} rows for {len(ts)} curve(s) to {args.out}")
    return EXIT_OK


# --- simulate ----------------------------------------------------------------

FER_COLUMNS = [
    "code_id", "n", "k", "dmin", "epsilon", "trials", "failures",
    "fer", "ci_low", "ci_high", "seed",
]


def _gather_codes(args) -> list[tuple[str, MonomialCode]]:
    sources: list[tuple[str, MonomialCode]] = []
    for path in args.code or []:
        stem = os.path.splitext(os.path.basename(path))[0]
        sources.append((stem, _load_code_file(path)))
    if args.rm:
        r, m = args.rm
        if not 0 <= r <= m:
            raise CliError(f"bad RM order r={r}, m={m}", EXIT_VALIDATION)
        sources.append((f"rm{r}_{m}", reed_muller(r, m)))
    for text in args.spec or []:
        spec = _parse_spec_string(text)
        trace = lower_bound(spec)
        if not trace.achieved:
            print(
                f"warning: spec {text}: k={spec.k_target} unachievable, "
                f"simulating nearest k={trace.k}",
                file=sys.stderr,
            )
        sources.append((f"psc_m{spec.m}t{spec.t}k{trace.k}d{spec.d}", construct(spec)))
    return sources


def cmd_simulate(args) -> int:
    sources = _gather_codes(args)
    if not sources and not args.polar_adaptive:
        raise CliError("no code sources given", EXIT_VALIDATION)
    grid = parse_eps_grid(args.epsilon)
    if not grid or not all(0.0 <= e <= 1.0 for e in grid):
        raise CliError("erasure probabilities must lie in [0, 1]", EXIT_VALIDATION)
    if args.trials < 1:
        raise CliError("need at least one trial", EXIT_VALIDATION)
    workers = args.workers
    rows = []
    for code_id, code in sources:
        n, k, dmin = code_params(code)
        for eps in grid:
            est = simulate_fer(code, eps, args.trials, args.seed, workers)
            rows.append(_fer_row(code_id, n, k, dmin, est, args.seed))
    if args.polar_adaptive:
        if sources:
            m, k = sources[0][1].m, sources[0][1].k
        elif args.polar_params:
            m, k = args.polar_params
        else:
            raise CliError(
                "--polar-adaptive needs another source or --polar-params M K",
                EXIT_VALIDATION,
            )
        for eps in grid:
            code = polar_code_bec(m, k, eps)
            n, kk, dmin = code_params(code)
            est = simulate_fer(code, eps, args.trials, args.seed, workers)
            rows.append(_fer_row("polar_adaptive", n, kk, dmin, est, args.seed))
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=FER_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from None
    config = RunConfig(
        "simulate",
        {
            "code": list(args.code or []),
            "rm": list(args.rm) if args.rm else None,
            "spec": list(args.spec or []),
            "polar_adaptive": bool(args.polar_adaptive),
            "polar_params": list(args.polar_params) if args.polar_params else None,
            "epsilon": args.epsilon,
            "trials": args.trials,
            "seed": args.seed,
            "workers": workers,
            "out": args.out,
        },
    )
    config.write_manifest(args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _fer_row(code_id, n, k, dmin, est, seed):
    return {
        "code_id": code_id,
        "n": n,
        "k": k,
        "dmin": dmin,
        "epsilon": est.epsilon,
        "trials": est.trials,
        "failures": est.failures,
        "fer": est.fer,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "seed": seed,
    }


# --- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    code = _load_code_file(args.codefile)
    n, k, dmin = code_params(code)
    print(f"n={n} k={k} dmin={dmin}")
    report = verify_symmetry(code)
    print("projection dims:", " ".join(str(v) for v in report.dims))
    print("weakly decreasing:", "yes" if is_weakly_decreasing(code) else "no")
    ts = args.t or _auto_query_ts(report.dims)
    for t in ts:
        if not 1 <= t <= code.m:
            raise CliError(f"queried t={t} outside 1..{code.m}", EXIT_VALIDATION)
        inv = _mt_invariance(code, t)
        print(f"t={t}: invariant under M_t permutations: {'yes' if inv else 'no'}")
        verdict = report.verdicts[t]
        print(f"t={t}: partially symmetric per strict definition: "
              f"{'yes' if verdict else 'no'}")
    return EXIT_OK


def _auto_query_ts(dims) -> list[int]:
    if not dims:
        return []
    lo = min(dims)
    prefix = 0
    for v in dims:
        if v != lo:
            break
        prefix += 1
    return [max(1, prefix)]


def _mt_invariance(code: MonomialCode, t: int, sample: int = 120) -> bool:
    """Invariance under permutations of the first t variables; exhaustive up
    to t = 5, deterministic sample beyond."""
    rest = list(range(t, code.m))
    perms = itertools.permutations(range(t))
    if t > 5:
        import random

        rng = random.Random(0)
        perms = [tuple(rng.sample(range(t), t)) for _ in range(sample)]
    return all(is_invariant(code, list(p) + rest) for p in perms)


# --- conjecture --------------------------------------------------------------


def cmd_conjecture(args) -> int:
    spec = _design_spec(args.m, args.t, args.k, args.d)
    trace = lower_bound(spec)
    code = construct(spec)
    lines = [
        f"spec m={spec.m} t={spec.t} k={trace.k} d={spec.d} "
        f"(flow step: {'yes' if trace.needs_flow else 'no'})"
    ]
    for pair in check_conjecture(code, spec.t):
        if pair.equivalent:
            lines.append(
                f"projections {pair.h1},{pair.h2}: equivalent via variable "
                f"relabeling {pair.witness}"
            )
        else:
            lines.append(
                f"projections {pair.h1},{pair.h2}: no variable relabeling found"
            )
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, text)
        RunConfig(
            "conjecture",
            {"m": spec.m, "t": spec.t, "k": spec.k_target, "d": spec.d, "out": args.out},
        ).write_manifest(args.out)
    sys.stdout.write(text)
    return EXIT_OK


# --- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psc-lab",
        description="Construct and evaluate partially symmetric monomial codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write its file")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, default=None, help="degree cap, default m")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", default=None, help="trace log path, default <out>.trace")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="projected-dimension bound curves as CSV")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-t", type=int, nargs="+", action="append", default=None)
    p.add_argument("--t-all", action="store_true")
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("simulate", help="Monte-Carlo ML frame error rates")
    p.add_argument("--code", action="append", default=None, help="code file path")
    p.add_argument("--rm", type=int, nargs=2, metavar=("R", "M"), default=None)
    p.add_argument("--spec", action="append", default=None,
                   help="construction spec, e.g. m=9,t=7,k=256,d=5")
    p.add_argument("--polar-adaptive", action="store_true",
                   help="add a polar baseline rebuilt for every epsilon")
    p.add_argument("--polar-params", type=int, nargs=2, metavar=("M", "K"),
                   default=None)
    p.add_argument("-e", "--epsilon", required=True,
                   help="single value, comma list, or start:stop:step")
    p.add_argument("-N", "--trials", type=int, required=True)
    p.add_argument("-s", "--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="symmetry report for a code file")
    p.add_argument("codefile")
    p.add_argument("-t", type=int, action="append", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="projection equivalence evidence")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_conjecture)

    return parser


def run_from_manifest(path: str) -> int:
    """Re-run a command from its manifest; outputs are byte-identical."""
    with open(path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    command = manifest["command"]
    opts = manifest["options"]
    argv = [command]
    if command == "construct":
        argv += ["-m", str(opts["m"]), "-t", str(opts["t"]), "-k", str(opts["k"]),
                 "-d", str(opts["d"]), "--out", opts["out"], "--trace", opts["trace"]]
    elif command == "bound":
        argv += ["-m", str(opts["m"]), "-d", str(opts["d"]), "--out", opts["out"]]
        argv += ["-t"] + [str(t) for t in opts["t"]]
    elif command == "simulate":
        for path_ in opts["code"]:
            argv += ["--code", path_]
        if opts["rm"]:
            argv += ["--rm", str(opts["rm"][0]), str(opts["rm"][1])]
        for text in opts["spec"]:
            argv += ["--spec", text]
        if opts["polar_adaptive"]:
            argv += ["--polar-adaptive"]
        if opts["polar_params"]:
            argv += ["--polar-params", str(opts["polar_params"][0]),
                     str(opts["polar_params"][1])]
        argv += ["-e", opts["epsilon"], "-N", str(opts["trials"]),
                 "-s", str(opts["seed"]), "--workers", str(opts["workers"]),
                 "--out", opts["out"]]
    elif command == "conjecture":
        argv += ["-m", str(opts["m"]), "-t", str(opts["t"]), "-k", str(opts["k"]),
                 "-d", str(opts["d"]), "--out", opts["out"]]
    else:
        raise CliError(f"manifest command {command!r} not replayable", EXIT_VALIDATION)
    return main(argv)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
