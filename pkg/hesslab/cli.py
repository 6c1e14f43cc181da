"""Command-line front end: `python -m hesslab <command> ...`.

Every command prints {"command", "config", "results"} (JSON by default) and
exits 0 on success, 1 when an internal check fails and 2 on bad input.
"""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple
from hesslab.config import settings
from hesslab.models import CheckStatus, Flavor, OutputFormat
from hesslab.schemas import Partition, RunConfig
from hesslab.services.cohomology_service import cohomology_service
from hesslab.services.finitefield_service import finitefield_service
from hesslab.services.hessenberg_service import hessenberg_service
from hesslab.services.monodromy_service import monodromy_service
from hesslab.services.orbit_service import orbit_service
from hesslab.services.springer_service import springer_service
from hesslab.services.verify_service import verify_service

logger = logging.getLogger(__name__)

SUITES = ("dims", "pavings", "counts", "springer", "all")


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {number}")
    return number


def _parts(value: str) -> Partition:
    try:
        parts = sorted((int(v) for v in value.replace("+", ",").split(",") if v.strip()), reverse=True)
        return Partition(parts=tuple(parts))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad partition {value!r}: {e}")


def _make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--q', type=int, default=None, help='odd prime for counts and evaluations')
    common.add_argument('--seed', type=int, default=None, help=f'PRNG seed (default {settings.seed})')
    common.add_argument('--trials', type=_positive, default=None, help='random tuples per configuration')
    common.add_argument('--threads', type=_positive, default=None, help='worker threads (env HESSLAB_THREADS)')
    common.add_argument('--format', choices=[f.value for f in OutputFormat], default=None)
    common.add_argument('--json', action='store_true', help='shorthand for --format json')
    common.add_argument('--budget', type=_positive, default=None, help='flag-oracle subspace budget')

    p = argparse.ArgumentParser(prog='hesslab', description='Springer correspondence toolkit for (SL(2n+1), SO(2n+1))')
    sub = p.add_subparsers(dest='cmd', required=True)

    s = sub.add_parser('orbits', parents=[common], help='N_1^3 orbit table')
    s.add_argument('--n', type=_positive, required=True)

    s = sub.add_parser('decompose', parents=[common], help='decomposition of primitive cohomology')
    s.add_argument('--n', type=_positive, required=True)
    s.add_argument('--m', type=_positive, required=True)
    s.add_argument('--tilde', action='store_true', help='decompose the sigma = -id part of Xtilde_m')

    s = sub.add_parser('catalog', parents=[common], help='local-system catalog and identifications')
    s.add_argument('--n', type=_positive, required=True)

    s = sub.add_parser('fiber', parents=[common], help='paving polynomial of a Hessenberg fiber')
    s.add_argument('--n', type=_positive, required=True)
    s.add_argument('--m', type=_positive, required=True)
    s.add_argument('--flavor', choices=[Flavor.E.value, Flavor.O.value], default=Flavor.E.value)
    s.add_argument('--partition', type=_parts, required=True, help='e.g. 3,2,2 or 3+2+2')
    s.add_argument('--oracle', action='store_true', help='compare with the brute-force flag count at q')

    s = sub.add_parser('counts', parents=[common], help='point counts on X_m and Xtilde_m for a seeded tuple')
    s.add_argument('--n', type=_positive, required=True)
    s.add_argument('--m', type=_positive, required=True)

    s = sub.add_parser('springer', parents=[common], help='Fourier matching map and consistency report')
    s.add_argument('--n', type=_positive, required=True)

    s = sub.add_parser('verify', parents=[common], help='run verification suites')
    s.add_argument('suite', choices=SUITES)
    s.add_argument('--n-max', type=_positive, default=3)
    return p


def _run_config(args: argparse.Namespace) -> RunConfig:
    fmt = OutputFormat.JSON if args.json else OutputFormat(args.format or settings.default_format)
    command = args.cmd if args.cmd != 'verify' else f"verify {args.suite}"
    return RunConfig(
        command=command,
        n=getattr(args, 'n', None),
        n_max=getattr(args, 'n_max', None),
        m=getattr(args, 'm', None),
        q=args.q,
        seed=args.seed if args.seed is not None else settings.seed,
        trials=args.trials or settings.trials,
        threads=args.threads or settings.threads,
        format=fmt,
        budget=args.budget,
        tilde=getattr(args, 'tilde', False),
    )


def cmd_orbits(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    return orbit_service.orbit_table(config.n), True


def cmd_decompose(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    report = monodromy_service.decomposition_report(2 * config.n + 1, config.m, config.tilde)
    return report.model_dump(), report.match


def cmd_catalog(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    N = 2 * config.n + 1
    labels = monodromy_service.catalog(N)
    union = monodromy_service.catalog_from_decompositions(N)
    results = {
        "catalog": [label.to_row() for label in labels],
        "identifications": [
            {"left": pair.left.to_row(), "right": pair.right.to_row()}
            for pair in monodromy_service.identifications(N)
        ],
        "size": len(labels),
        "from_decompositions": len(union),
    }
    return results, len(labels) == len(union) == config.n * (config.n + 1) + 1


def cmd_fiber(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    N = 2 * config.n + 1
    flavor = Flavor(args.flavor)
    poly = hessenberg_service.fiber_poincare(flavor, config.m, N, args.partition)
    results: Dict[str, Any] = {
        "flavor": flavor.value,
        "m": config.m,
        "N": N,
        "partition": list(args.partition.parts),
        "coeffs": list(poly.coeffs),
        "polynomial": str(poly),
    }
    ok = True
    if config.q is not None:
        results["value"] = poly.evaluate(config.q)
        if args.oracle:
            rep = finitefield_service.nilpotent_representative(args.partition, config.q)
            results["oracle"] = finitefield_service.brute_fiber_count(
                flavor, config.m, rep, threads=config.threads, budget=config.budget)
            ok = results["oracle"] == results["value"]
    elif args.oracle:
        raise ValueError("--oracle needs --q")
    return results, ok


def cmd_counts(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    N, m = 2 * config.n + 1, config.m
    q = config.q or 7
    if not 1 <= m <= N - 1:
        raise ValueError(f"m must lie in [1, {N - 1}], got {m}")
    a = finitefield_service.random_regular_tuple(N, q, config.seed)
    x_prim = cohomology_service.primitive_middle_betti(cohomology_service.x_profile(N, m))
    xt_prim = cohomology_service.primitive_middle_betti(cohomology_service.xtilde_profile(N, m))
    x_count = finitefield_service.count_quadric_intersection(N, m, a, threads=config.threads)
    xt_count = finitefield_service.count_quadric_intersection(N, m, a, doubled=True, threads=config.threads)
    D = N - 1 - m
    results = {
        "N": N, "m": m, "q": q, "a": list(a.a),
        "X": {"count": x_count, "dim": D, "primitive": x_prim,
              "weil_band": finitefield_service.weil_band(x_count, q, D, x_prim)},
        "Xtilde": {"count": xt_count, "dim": D, "primitive": xt_prim,
                   "weil_band": finitefield_service.weil_band(xt_count, q, D, xt_prim)},
        "double_cover": finitefield_service.double_cover_consistency(N, m, a, threads=config.threads),
        "torsor": finitefield_service.torsor_identity(a),
    }
    ok = results["X"]["weil_band"] and results["Xtilde"]["weil_band"] and results["double_cover"] and results["torsor"]
    return results, ok


def cmd_springer(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    report = springer_service.consistency_suite(config.n)
    return report.to_row(), report.passed


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> Tuple[Any, bool]:
    results = verify_service.run(
        args.suite, config.n_max, config.q or 3, config.seed, config.trials,
        threads=config.threads, budget=config.budget,
    )
    rows = [r.to_row() for r in results]
    return rows, all(r.status != CheckStatus.FAIL for r in results)


COMMANDS = {
    'orbits': cmd_orbits,
    'decompose': cmd_decompose,
    'catalog': cmd_catalog,
    'fiber': cmd_fiber,
    'counts': cmd_counts,
    'springer': cmd_springer,
    'verify': cmd_verify,
}


def _flat(row: Dict[str, Any]) -> Dict[str, Any]:
    return {k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in row.items()}


def render(payload: Dict[str, Any], fmt: OutputFormat) -> str:
    """Serialise the output envelope in the requested format."""
    if fmt == OutputFormat.JSON:
        return json.dumps(payload, sort_keys=True, indent=2)
    results = payload["results"]
    rows: List[Dict[str, Any]] = results if isinstance(results, list) else [results]
    if fmt == OutputFormat.CSV:
        fields = sorted({key for row in rows for key in row})
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(_flat(row))
        return buffer.getvalue().rstrip("\n")
    lines = [f"# {payload['command']}"]
    for row in rows:
        lines.append("  ".join(f"{k}={v}" for k, v in sorted(_flat(row).items())))
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    p = _make_parser()
    args = p.parse_args(argv)
    try:
        config = _run_config(args)
        results, ok = COMMANDS[args.cmd](config, args)
    except ValueError as e:
        print(f"hesslab: error: {e}", file=sys.stderr)
        return 2
    payload = {
        "command": config.command,
        "config": config.model_dump(mode="json", exclude={"threads"}),
        "results": results,
    }
    print(render(payload, config.format))
    if not ok:
        logger.warning(f"{config.command}: internal check failed")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
