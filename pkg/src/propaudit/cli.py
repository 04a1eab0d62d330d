"""Command-line entry point.

Thin adapters only: every subcommand parses arguments, delegates to the
library, and serializes the result.  Audit exit codes are 0 when the
axiom is satisfied, 1 on a violation, and 2 on any input or usage error,
so shell pipelines can gate on proportionality.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, gen
from .approval import ApprovalInstance
from .baselines import (kmeans_cost, kmeans_lloyd_snapped, kmedian_cost,
                        kmedian_local_search)
from .core import (ConfigError, InfeasibleLevel, InputError, SizeError,
                   UnsupportedBackend, Instance, dump_instance, load_instance,
                   validate_metric)
from .embedding import embed_approval
from .oracle import oracle_mpjr
from .sear import run_sear
from .verify import (dc_violations, verify_dc_mpjr_plus, verify_fixed_ell_dc,
                     verify_mpjr_plus_smallk)

AUDIT_AXIOMS = ("dc-mpjr+", "mpjr+", "mpjr-oracle", "fixed-ell-dc")


def _read_selection(args, instance) -> tuple:
    if args.selection_file:
        with open(args.selection_file) as fh:
            data = json.load(fh)
        raw = data["selection"] if isinstance(data, dict) else data
    elif args.selection:
        raw = [int(tok) for tok in args.selection.split(",") if tok.strip()]
    else:
        raise InputError("provide --selection or --selection-file")
    return tuple(int(c) for c in raw)


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_audit(args) -> int:
    instance = load_instance(args.instance)
    selection = _read_selection(args, instance)
    if args.axiom == "dc-mpjr+":
        if args.all_witnesses:
            wits = dc_violations(instance, selection, args.gamma, args.eps)
            _emit({"axiom": "dc-mpjr+", "gamma": args.gamma,
                   "satisfied": not wits,
                   "witnesses": [w.to_dict() for w in wits]}, args.out)
            return 0 if not wits else 1
        verdict = verify_dc_mpjr_plus(instance, selection, args.gamma, args.eps)
    elif args.axiom == "mpjr+":
        verdict = verify_mpjr_plus_smallk(instance, selection, args.gamma,
                                          max_k=args.max_k, eps=args.eps)
    elif args.axiom == "mpjr-oracle":
        verdict = oracle_mpjr(instance, selection, max_agents=args.max_agents)
    elif args.axiom == "fixed-ell-dc":
        if args.ell is None:
            raise InputError("--ell is required for fixed-ell-dc")
        verdict = verify_fixed_ell_dc(instance, selection, args.ell, args.gamma,
                                      args.eps)
    else:
        raise InputError(f"unknown axiom {args.axiom!r}")
    if args.format == "json":
        _emit(verdict.to_dict(), args.out)
    else:
        wit = verdict.witness
        extra = ""
        if wit is not None:
            extra = (f" (center={wit.center}, level={wit.level},"
                     f" radius={wit.radius})")
        print(f"{verdict.axiom} gamma={verdict.gamma}: {verdict.status}{extra}")
    return 0 if verdict.satisfied else 1


def _cmd_sear(args) -> int:
    result = run_sear(load_instance(args.instance))
    _emit(result.to_dict(), args.out)
    return 0


def _cmd_generate(args) -> int:
    if args.kind == "gaussian":
        if args.n is None or args.g is None:
            raise InputError("gaussian generation needs --n and --g")
        cfg = gen.GaussianConfig(n=args.n, g=args.g, sigma=args.sigma,
                                 seed=args.seed, k=args.k)
        instance, selection = gen.gen_gaussian_instance(cfg), None
    elif args.kind in ("prop3-1", "prop3-2"):
        instance, selection = gen.fixture_incomparability(int(args.kind[-1]))
    elif args.kind == "fig2":
        instance, selection = gen.fixture_objective_failure(), None
    else:
        raise InputError(f"unknown kind {args.kind!r}")
    if args.out:
        dump_instance(instance, args.out)
    else:
        _emit(instance.to_dict())
    summary = {"kind": args.kind, "out": args.out,
               "selection": list(selection) if selection else None}
    if args.out:
        _emit(summary)
    return 0


def _cmd_experiment(args) -> int:
    cfg = bench.ExperimentConfig(
        n_values=tuple(int(v) for v in args.n_values.split(",")),
        g_values=tuple(int(v) for v in args.g_values.split(",")),
        instances_per_cell=args.instances,
        selections_per_instance=args.selections,
        k=args.k, sigma=args.sigma, master_seed=args.seed,
        axioms=tuple(args.axioms.split(",")), gamma=args.gamma)
    progress = None
    if args.verbose:
        progress = lambda done, total: print(f"{done}/{total} instances audited",
                                             file=sys.stderr)
    report = bench.run_experiment(cfg, threads=args.threads, progress=progress)
    text = report.plot_data() if args.plot_data else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_baseline(args) -> int:
    instance = load_instance(args.instance)
    objective = kmedian_cost if args.objective == "kmedian" else kmeans_cost
    best, best_cost = None, None
    for restart in range(args.restarts):
        seed = args.seed + restart
        if args.objective == "kmedian":
            sel = kmedian_local_search(instance, seed, exhaustive=args.exhaustive)
        else:
            sel = kmeans_lloyd_snapped(instance, seed)
        cost = objective(instance, sel)
        if best_cost is None or cost < best_cost:
            best, best_cost = sel, cost
        if args.exhaustive:
            break
    _emit({"objective": args.objective, "selection": list(best),
           "cost": best_cost}, args.out)
    return 0


def _cmd_embed(args) -> int:
    with open(args.approval) as fh:
        inst = ApprovalInstance.from_dict(json.load(fh))
    embedded = embed_approval(inst)
    if args.out:
        dump_instance(embedded, args.out)
    else:
        _emit(embedded.to_dict())
    return 0


def _cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    if instance.metric != "explicit":
        instance = instance.to_explicit()
    check = validate_metric(instance, check_triangle=args.triangle)
    _emit({"ok": check.ok, "violation": check.violation,
           "points": list(check.points) if check.points else None}, args.out)
    return 0 if check.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propaudit",
        description="Audit center selections for proportional representation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="verify a selection under one axiom")
    p.add_argument("instance")
    p.add_argument("--selection", help="comma-separated candidate indices")
    p.add_argument("--selection-file", help="JSON file with a selection array")
    p.add_argument("--axiom", choices=AUDIT_AXIOMS, default="dc-mpjr+")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--max-k", type=int, default=24)
    p.add_argument("--max-agents", type=int, default=16)
    p.add_argument("--all-witnesses", action="store_true",
                   help="list every violating (center, level) pair (dc-mpjr+)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("sear", help="compute a proportional selection")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sear)

    p = sub.add_parser("generate", help="emit a benchmark instance")
    p.add_argument("--kind", choices=("gaussian", "prop3-1", "prop3-2", "fig2"),
                   required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--sigma", type=float, default=0.04)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("experiment", help="run the satisfaction-rate grid")
    p.add_argument("--n-values", default="20,50,80,100")
    p.add_argument("--g-values", default="4,5,6")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--selections", type=int, default=1000)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--sigma", type=float, default=0.04)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--axioms", default="mpjr+,dc-mpjr+")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--plot-data", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("baseline", help="objective-driven selections")
    p.add_argument("instance")
    p.add_argument("--objective", choices=("kmedian", "kmeans"), default="kmedian")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("embed", help="approval profile to explicit metric instance")
    p.add_argument("approval")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("validate", help="check metric axioms of an instance")
    p.add_argument("instance")
    p.add_argument("--triangle", action="store_true",
                   help="include the cubic triangle-inequality scan")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SizeError, InfeasibleLevel, UnsupportedBackend,
            ConfigError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
