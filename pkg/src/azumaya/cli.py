"""Command-line front end.

Subcommands: construct (validate a config and echo canonical forms),
check <name> (run one configured check), suite <name> (run a builtin theorem
suite), search counterexample (randomized hunt per config).

Reports go to stdout as newline-delimited JSON restricted to the
deterministic fields, so identical (config, seed) runs are byte-identical;
a human-readable summary with timings goes to stderr.  Exit codes: 0 all
pass/not-found, 1 any fail, 2 invalid input, 3 contradicts-theorem.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import homs as homs_mod
from . import identities as idn
from .algebras import (
    AlgebraError,
    env_map_bijective,
    ideal_intersection_check,
    is_azumaya,
    square_rank_check,
)
from .configio import ConfigError, load_run_config
from .reports import FAIL, PASS, CheckReport, worst_exit_code
from .rings import RingError, RingIdeal
from .suites import SeedRequired, SuiteError, builtin_suites, run_suite

EXIT_INVALID = 2


def _emit(reports, as_json, started):
    if as_json:
        print(json.dumps({"reports": [r.comparable_dict() for r in reports]}, sort_keys=True))
    else:
        for r in reports:
            print(json.dumps(r.comparable_dict(), sort_keys=True))
    counts = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    print(
        f"{len(reports)} checks ({summary}) in {time.perf_counter() - started:.2f}s",
        file=sys.stderr,
    )
    for r in reports:
        if r.status not in (PASS, "not-found"):
            print(f"  {r.status.upper()}: {r.check}", file=sys.stderr)
    return worst_exit_code(reports)


def _invalid(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INVALID


def _load(args):
    if not args.config:
        raise ConfigError("--config is required for this subcommand")
    cfg = load_run_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.max_tuples is not None:
        cfg.max_tuples = args.max_tuples
    if args.max_elements is not None:
        cfg.max_elements = args.max_elements
    return cfg


def _hom_verification_reports(cfg):
    """Fail reports for configured homs that did not verify."""
    out = []
    for name, hom in cfg.homs.items():
        if not hom.is_verified:
            out.append(
                CheckReport(
                    check=f"verify_hom:{name}",
                    status=FAIL,
                    witness=hom.refutation,
                )
            )
    return out


def cmd_construct(args):
    started = time.perf_counter()
    cfg = _load(args)
    lines = []
    for name, ring in cfg.rings.items():
        lines.append({"object": name, "type": "ring", "canonical": ring.to_config()})
    for name, alg in cfg.algebras.items():
        lines.append(
            {
                "object": name,
                "type": "algebra",
                "canonical": {
                    "base": alg.base.to_config(),
                    "rank": alg.rank,
                    "unit": alg.unit_flat.tolist(),
                },
            }
        )
    for name, hom in cfg.homs.items():
        lines.append(
            {
                "object": name,
                "type": "hom",
                "canonical": {"matrix": hom.matrix.tolist(), "status": hom.status},
            }
        )
    for name, ident in cfg.identities.items():
        lines.append({"object": name, "type": "identity", "canonical": ident.to_config()})
    payload = lines if not args.json else [{"objects": lines}]
    for line in payload:
        print(json.dumps(line, sort_keys=True))
    print(f"{len(lines)} objects validated in {time.perf_counter() - started:.2f}s", file=sys.stderr)
    bad = _hom_verification_reports(cfg)
    if bad:
        return _emit(bad, False, started)
    return 0


def _run_check(cfg, desc):
    kind = desc["check"]
    params = desc

    def algebra(key="algebra"):
        name = params.get(key)
        if name not in cfg.algebras:
            raise ConfigError(f"unknown algebra {name!r}", f"checks.{desc['name']}")
        return cfg.algebras[name]

    def hom(key="hom"):
        name = params.get(key)
        if name not in cfg.homs:
            raise ConfigError(f"unknown hom {name!r}", f"checks.{desc['name']}")
        return cfg.homs[name]

    if kind == "is_azumaya":
        return is_azumaya(algebra())
    if kind == "square_rank":
        return square_rank_check(algebra())
    if kind == "env_bijective":
        A = algebra()
        bij = env_map_bijective(A)
        expected = params.get("expected", True)
        ok = bij == expected
        return CheckReport(
            check="env_bijective",
            status=PASS if ok else FAIL,
            witness=None if ok else {"bijective": bij, "expected": expected},
            details={"bijective": bij},
        )
    if kind == "ideal_intersection":
        A = algebra()
        ideals = [RingIdeal(A.base, d) for d in params.get("ideals", [])]
        if len(ideals) < 2:
            raise ConfigError("ideal_intersection needs >= 2 ideals", f"checks.{desc['name']}")
        return ideal_intersection_check(A, ideals)
    if kind == "center_preservation":
        rep, _ = homs_mod.center_preservation_check(hom())
        return rep
    if kind == "rank_comparison":
        return homs_mod.rank_comparison_check(hom())
    if kind == "isomorphism":
        return homs_mod.isomorphism_check(hom())
    if kind == "endo_auto":
        return homs_mod.endo_auto_check(hom())
    if kind == "kernel_ideal":
        _, rep = homs_mod.kernel_ideal(hom())
        return rep
    if kind == "jordan_obstruction":
        return homs_mod.jordan_obstruction_probe(
            int(params.get("n", 2)), algebra(), samples=int(params.get("samples", 10**4)), seed=cfg.seed
        )
    if kind == "al_vanishing":
        return idn.al_vanishing_check(
            algebra(),
            int(params.get("n", 2)),
            mode=params.get("mode", "exhaustive"),
            count=int(params.get("count", 2000)),
            seed=cfg.seed,
            max_tuples=cfg.max_tuples,
        )
    if kind == "nonvanishing_witness":
        _, rep = idn.nonvanishing_witness(
            algebra(), int(params.get("k", 2)), budget=int(params.get("budget", 10000)), seed=cfg.seed or 0
        )
        return rep
    if kind == "identity_transfer":
        name = params.get("identity")
        if name not in cfg.identities:
            raise ConfigError(f"unknown identity {name!r}", f"checks.{desc['name']}")
        return idn.identity_transfer_check(
            hom(), cfg.identities[name], trials=int(params.get("trials", 100)), seed=cfg.seed or 0
        )
    raise ConfigError(f"unknown check kind {kind!r}", f"checks.{desc['name']}")


def cmd_check(args):
    started = time.perf_counter()
    cfg = _load(args)
    descs = [c for c in cfg.checks if args.name in (c["name"], "all")]
    if not descs:
        raise ConfigError(f"no configured check named {args.name!r}")
    reports = _hom_verification_reports(cfg)
    for desc in descs:
        try:
            rep = _run_check(cfg, desc)
        except (homs_mod.PreconditionUnmet, idn.BudgetExceeded) as e:
            rep = CheckReport(
                check=desc["name"], status="precondition-unmet", details={"reason": str(e)}
            )
        rep.check = desc["name"]
        reports.append(rep)
    return _emit(reports, args.json, started)


def cmd_suite(args):
    started = time.perf_counter()
    kwargs = {}
    if args.max_tuples is not None:
        kwargs["max_tuples"] = args.max_tuples
    if args.max_elements is not None:
        kwargs["max_elements"] = args.max_elements
    reports = run_suite(args.name, seed=args.seed, **kwargs)
    return _emit(reports, args.json, started)


def cmd_search(args):
    started = time.perf_counter()
    if args.target != "counterexample":
        return _invalid(f"unknown search target {args.target!r}; expected 'counterexample'")
    cfg = _load(args)
    spec = getattr(cfg, "search", None)
    if not spec:
        raise ConfigError("config needs a 'search' section with source/target/budget")
    if cfg.seed is None:
        raise ConfigError("counterexample search requires --seed (or a seed in the config)")
    src = cfg.algebras.get(spec.get("source"))
    tgt = cfg.algebras.get(spec.get("target"))
    if src is None or tgt is None:
        raise ConfigError("search source/target must name configured algebras")
    budget = int(spec.get("budget", 1000))
    known = [cfg.homs[n] for n in spec.get("known_homs", []) if n in cfg.homs]
    rep = homs_mod.counterexample_search(src, tgt, budget=budget, seed=cfg.seed, known_homs=known)
    return _emit([rep], args.json, started)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="azumaya",
        description="Exact-arithmetic checks for Azumaya algebras over finite rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="path to a JSON run config")
        p.add_argument("--seed", type=int, default=None, help="root seed for sampled checks")
        p.add_argument("--json", action="store_true", help="emit one JSON document instead of NDJSON")
        p.add_argument("--max-tuples", type=int, default=None, dest="max_tuples")
        p.add_argument("--max-elements", type=int, default=None, dest="max_elements")

    p = sub.add_parser("construct", help="validate a config and echo canonical forms")
    add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run one configured check (or 'all')")
    p.add_argument("name")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help=f"run a builtin suite: {', '.join(builtin_suites())}")
    p.add_argument("name")
    add_common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("search", help="randomized counterexample search")
    p.add_argument("target", help="what to search for; only 'counterexample' is supported")
    add_common(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SuiteError, SeedRequired, RingError, AlgebraError) as e:
        return _invalid(str(e))
    except homs_mod.PreconditionUnmet as e:
        return _invalid(str(e))
    except homs_mod.HomError as e:
        return _invalid(str(e))


if __name__ == "__main__":
    sys.exit(main())
