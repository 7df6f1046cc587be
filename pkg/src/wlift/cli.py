"""Command-line front end.

    wlift degreeset    --p 2 --e 4 --eta 2 --d 14 --format ascii
    wlift dim-table    --p 2 --eta 2 --c 4 --e 5-10
    wlift bounds       --p 2 --eta 2 --c 6
    wlift local-exp    --p 2 --e 4 --eta 2 --d 8 --delta 0.05 0.1 --trials 1000
    wlift pir-demo     --p 2 --e 4 --eta 2 --d 11 --b 1 --u 1
    wlift privacy-audit --p 2 --e 3 --eta 2 --d 6 --tau 2

Output goes to --out (default stdout).  Every run is a pure function of its
arguments; --seed defaults to DEFAULT_SEED.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import bounds, viz
from .codes import MonomialCode, wrm_code, wrm_degree_set
from .gf import Field
from .lift import lift_code, lift_degree_set
from .local import ERROR_MODELS, results_to_csv, success_rate_experiment
from .pir import STRATEGIES, Adversary, pir_init, pir_retrieve, privacy_audit

DEFAULT_SEED = 20240601


class CliError(Exception):
    pass


def resolve_degree(args, q: int, p: int, e: int) -> int:
    """d from exactly one of --d / --alpha / --c / --gamma."""
    given = [k for k in ("d", "alpha", "c", "gamma") if getattr(args, k, None) is not None]
    if len(given) != 1:
        raise CliError("give exactly one of --d, --alpha, --c, --gamma")
    if args.d is not None:
        d = args.d
    elif args.alpha is not None:
        d = q - args.alpha
    elif args.c is not None:
        if args.c > e:
            raise CliError(f"--c {args.c} exceeds --e {e}")
        d = q - p ** (e - args.c)
    else:
        d = math.floor(args.gamma * q)
    if not 0 <= d <= q - 1:
        raise CliError(f"degree {d} outside [0, {q - 1}]")
    return d


def parse_range(text: str) -> list[int]:
    """'3-10' -> [3..10], '5' -> [5], '3,5,7' -> [3, 5, 7]."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise CliError(f"bad range {text!r}") from None
    if not out:
        raise CliError(f"empty range {text!r}")
    return out


def _field(args) -> Field:
    if args.e is None:
        raise CliError("--e is required")
    try:
        return Field(args.p, args.e)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _code(args) -> MonomialCode:
    F = _field(args)
    d = resolve_degree(args, F.q, F.p, F.e)
    return (wrm_code if args.kind == "wrm" else lift_code)(F, args.eta, d)


# --- subcommands ----------------------------------------------------------------

def cmd_degreeset(args) -> bytes:
    F = _field(args)
    d = resolve_degree(args, F.q, F.p, F.e)
    ds = (wrm_degree_set if args.kind == "wrm" else lift_degree_set)(F, args.eta, d)
    fmt = args.format or "pgm"
    if fmt == "ascii":
        if args.shade:
            raise CliError("--shade needs a PGM format")
        return viz.to_ascii(ds).encode()
    if fmt not in ("pgm", "pgm5"):
        raise CliError(f"degreeset cannot write {fmt!r}")
    if args.shade:
        img = viz.shaded_image(ds, F.p, args.eta, F.q - d)
    else:
        img = viz.degree_image(ds)
    return viz.to_pgm(img, binary=fmt == "pgm5")


def cmd_dimtable(args) -> bytes:
    if (args.alpha is None) == (args.c is None):
        raise CliError("dim-table needs exactly one of --alpha, --c")
    if args.e is None:
        raise CliError("--e is required (e.g. 3-10)")
    rows = []
    for e in parse_range(args.e):
        try:
            rows.append(bounds.dim_row(args.p, args.eta, e, alpha=args.alpha, c=args.c))
        except ValueError as exc:
            raise CliError(f"e={e}: {exc}") from None
    if (args.format or "csv") == "json":
        return (json.dumps(rows) + "\n").encode()
    return bounds.rows_to_csv(rows).encode()


def cmd_bounds(args) -> bytes:
    if args.c is None:
        raise CliError("bounds needs --c")
    m = args.c if args.m is None else args.m
    rate = bounds.asymptotic_rate_lb(args.p, args.eta, args.c)
    row = {"p": args.p, "eta": args.eta, "c": args.c, "rate_lb": f"{float(rate):.4f}",
           "rate_lb_exact": str(rate)}
    if (args.format or "csv") == "json":
        row["N"] = bounds.n_terms(m, args.p, args.eta)
        row["T"] = [bounds.t_seq(k, args.p, args.eta) for k in range(m + 1)]
        return (json.dumps(row) + "\n").encode()
    return bounds.rows_to_csv([row], fields=tuple(row)).encode()


def cmd_localexp(args) -> bytes:
    code = _code(args)
    deltas = args.delta or [0.05, 0.1]
    models = ERROR_MODELS if args.model == "all" else (args.model,)
    results = [success_rate_experiment(code, dl, args.trials, m, seed=args.seed)
               for m in models for dl in deltas]
    if (args.format or "csv") == "json":
        return (json.dumps([vars(r) for r in results]) + "\n").encode()
    return results_to_csv(results).encode()


def _adversary(args, q: int) -> Adversary:
    if args.b + args.u > q:
        raise CliError("more faulty servers than servers")
    rng = np.random.default_rng([args.seed, 1])
    picked = [int(t) for t in rng.permutation(q)[:args.b + args.u]]
    return Adversary(byzantine=tuple(sorted(picked[:args.b])),
                     unresponsive=tuple(sorted(picked[args.b:])), strategy=args.strategy)


def cmd_pirdemo(args) -> bytes:
    code = _code(args)
    q = code.field.q
    adv = _adversary(args, q)
    rng = np.random.default_rng([args.seed, 0])
    db = rng.integers(0, q, size=code.dim)
    sys_ = pir_init(db, code, adv)
    n = args.trials or 1
    lines = []
    for r in range(n):
        idx = args.index if args.index is not None else r % code.dim
        tr = pir_retrieve(sys_, idx, seed=args.seed + r)
        lines.append(tr.to_json())
    return ("\n".join(lines) + "\n").encode()


def cmd_privacy(args) -> bytes:
    code = _code(args)
    rng = np.random.default_rng([args.seed, 0])
    db = rng.integers(0, code.field.q, size=code.dim)
    rep = privacy_audit(pir_init(db, code), args.tau, seed=args.seed,
                        force_sampled=args.sampled)
    tv = rep.max_tv
    out = {"q": code.field.q, "eta": code.eta, "d": code.d, "tau": rep.tau,
           "exact": rep.exact, "max_tv": str(tv) if isinstance(tv, Fraction) else tv,
           "worst_set": rep.worst_set, "worst_pair": rep.worst_pair,
           "uniform": rep.uniform, "certified_private": rep.certified_private,
           "n_sets": rep.n_sets, "n_indices": rep.n_indices}
    return (json.dumps(out) + "\n").encode()


COMMANDS = {
    "degreeset": cmd_degreeset,
    "dim-table": cmd_dimtable,
    "bounds": cmd_bounds,
    "local-exp": cmd_localexp,
    "pir-demo": cmd_pirdemo,
    "privacy-audit": cmd_privacy,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wlift", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, e_type=int, degree=True):
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--e", type=e_type)
        sp.add_argument("--eta", type=int, default=2)
        if degree:
            g = sp.add_argument_group("degree (exactly one)")
            g.add_argument("--d", type=int)
            g.add_argument("--alpha", type=int)
            g.add_argument("--c", type=int)
            g.add_argument("--gamma", type=float)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out")
        sp.add_argument("--kind", choices=("lift", "wrm"), default="lift")

    sp = sub.add_parser("degreeset", help="render a degree set")
    common(sp)
    sp.add_argument("--format", choices=("pgm", "pgm5", "ascii"))
    sp.add_argument("--shade", action="store_true", help="grey level per block depth")

    sp = sub.add_parser("dim-table", help="dimension table over a range of e")
    common(sp, e_type=str, degree=False)
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--c", type=int)
    sp.add_argument("--format", choices=("csv", "json"))

    sp = sub.add_parser("bounds", help="asymptotic rate lower bound")
    common(sp, degree=False)
    sp.add_argument("--c", type=int)
    sp.add_argument("--m", type=int, help="number of sequence terms in json output")
    sp.add_argument("--format", choices=("csv", "json"))

    sp = sub.add_parser("local-exp", help="local-correction Monte-Carlo experiment")
    common(sp)
    sp.add_argument("--delta", type=float, nargs="+")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--model", choices=(*ERROR_MODELS, "all"), default="uniform")
    sp.add_argument("--format", choices=("csv", "json"))

    sp = sub.add_parser("pir-demo", help="seeded PIR retrievals as JSON lines")
    common(sp)
    sp.add_argument("--b", type=int, default=0, help="byzantine servers")
    sp.add_argument("--u", type=int, default=0, help="unresponsive servers")
    sp.add_argument("--strategy", choices=STRATEGIES, default="offset")
    sp.add_argument("--index", type=int)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--format", choices=("json",))

    sp = sub.add_parser("privacy-audit", help="query-distribution audit")
    common(sp)
    sp.add_argument("--tau", type=int, default=1)
    sp.add_argument("--sampled", action="store_true")
    sp.add_argument("--format", choices=("json",))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = COMMANDS[args.subcommand](args)
    except (CliError, ValueError, IndexError) as exc:
        print(f"wlift {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
