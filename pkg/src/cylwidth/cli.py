"""Command-line front end.

Subcommands::

    tnorm         Gaussian norm-ratio statistics over a dimension grid
    scaling       dyadic-measure width integrals across (d, k) pairs
    lowerbound    adversarial minimal width against the harmonic witness
    realize       complex-to-real reduction on an enumerated group orbit
    selberg-fuzz  randomized checks of the Gram row-sum bound
    rip-fuzz      randomized checks of greedy/exhaustive column selection

Every subcommand requires ``--seed``; identical invocations produce
byte-identical output.  Reports are JSON (versioned envelope with
``schema``, ``command``, ``config`` and ``rows``) or CSV (header plus
rows, column order as documented in each subcommand's help).  Exit codes:
0 success, 2 invalid configuration or input, 3 a theoretical guarantee was
missed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .errors import (
    CertificationFailedError,
    CylwidthError,
    EmptyDyadicIndexError,
    GroupTooLargeError,
    GuaranteeMissedError,
    OrbitTooLargeError,
    RankDeficientError,
)
from .groups import enumerate_orbit, load_group_json
from .lowerbound import adversarial_min_width, selberg_check, witness_vector
from .measures import (
    desk_scale_j_min,
    dyadic_alt_measure,
    sample_uniform,
)
from .rip import realize_real_subspace, select_columns
from .tnorm import gaussian_tnorm_statistics, lipschitz_bound
from .width import altmax_evaluator, estimate_f_integral, width_altmax, width_orbit

SCHEMA_VERSION = 1
REALIZE_RATIO_CAP = 2.0 + 1e-6
LOWERBOUND_FLOOR = 0.1

COLUMNS = {
    "tnorm": [
        "d",
        "trials",
        "mean_ratio",
        "max_ratio",
        "q50_ratio",
        "q90_ratio",
        "q99_ratio",
        "mean_ratio_sum_zero",
        "max_ratio_sum_zero",
        "q50_ratio_sum_zero",
        "q90_ratio_sum_zero",
        "q99_ratio_sum_zero",
        "lipschitz_bound",
    ],
    "scaling": [
        "d",
        "k",
        "j_count",
        "trials",
        "mean_sup2_random",
        "stderr_random",
        "normalized_random",
        "mean_sup2_witness",
        "stderr_witness",
        "normalized_witness",
    ],
    "lowerbound": [
        "d",
        "k",
        "restarts",
        "steps",
        "min_width",
        "normalized",
        "ok",
    ],
    "realize": [
        "d",
        "k",
        "orbit_size",
        "draws",
        "complex_width",
        "real_width",
        "ratio",
        "selected_columns",
        "s_2k",
        "achieved",
        "target",
        "ok",
    ],
    "selberg-fuzz": [
        "trial",
        "family",
        "m",
        "d",
        "lhs",
        "rhs",
        "margin",
        "holds",
    ],
    "rip-fuzz": [
        "k",
        "trial",
        "achieved",
        "target",
        "ratio",
        "greedy_achieved",
        "exhaustive_achieved",
        "ok",
    ],
}


def _epilog(command: str) -> str:
    return "CSV column order: " + ", ".join(COLUMNS[command])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylwidth",
        description=(
            "Empirical width experiments: tail-weighted norms, dyadic "
            "subspace measures, adversarial lower bounds, and the "
            "complex-to-real reduction."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, required=True, help="master seed")
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="report format (default json)",
    )
    common.add_argument(
        "--out", default=None, help="output path (default: stdout)"
    )

    p = sub.add_parser(
        "tnorm",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="Gaussian norm-ratio statistics",
        epilog=_epilog("tnorm"),
    )
    p.add_argument(
        "--d", action="append", type=int, required=True, help="dimension (repeatable)"
    )
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser(
        "scaling",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="dyadic measure width integrals",
        epilog=_epilog("scaling"),
    )
    p.add_argument("--d", action="append", type=int, required=True)
    p.add_argument("--k", action="append", type=int, default=None)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument(
        "--delta",
        type=int,
        default=1,
        help="scale-window offset: j_min = ceil(log2(2k)) + delta",
    )
    p.add_argument("--restarts", type=int, default=20)

    p = sub.add_parser(
        "lowerbound",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="adversarial minimal width",
        epilog=_epilog("lowerbound"),
    )
    p.add_argument("--d", action="append", type=int, default=None)
    p.add_argument("--k", action="append", type=int, default=None)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--inner-restarts", type=int, default=6)

    p = sub.add_parser(
        "realize",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="complex-to-real reduction on a group orbit",
        epilog=_epilog("realize"),
    )
    p.add_argument("--group", required=True, help="group JSON file")
    p.add_argument(
        "--base-point",
        required=True,
        help="comma-separated real coordinates of the orbit base point",
    )
    p.add_argument("--k", type=int, default=1, help="real target dimension")
    p.add_argument("--draws", type=int, default=32)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--max-orbit", type=int, default=5000)

    p = sub.add_parser(
        "selberg-fuzz",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="randomized Gram row-sum checks",
        epilog=_epilog("selberg-fuzz"),
    )
    p.add_argument("--trials", type=int, default=1000)

    p = sub.add_parser(
        "rip-fuzz",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        help="randomized column-selection checks",
        epilog=_epilog("rip-fuzz"),
    )
    p.add_argument("--k", action="append", type=int, default=None)
    p.add_argument("--trials", type=int, default=100)

    return parser


def _cmd_tnorm(args):
    rows = []
    for d in args.d:
        if d < 2:
            raise ValueError("tnorm needs d >= 2 (sum-zero conditioning)")
        plain = gaussian_tnorm_statistics(d, args.trials, False, seed=[args.seed, 31, d])
        zero = gaussian_tnorm_statistics(d, args.trials, True, seed=[args.seed, 32, d])
        rows.append(
            {
                "d": d,
                "trials": args.trials,
                "mean_ratio": plain.mean_ratio,
                "max_ratio": plain.max_ratio,
                "q50_ratio": plain.q50_ratio,
                "q90_ratio": plain.q90_ratio,
                "q99_ratio": plain.q99_ratio,
                "mean_ratio_sum_zero": zero.mean_ratio,
                "max_ratio_sum_zero": zero.max_ratio,
                "q50_ratio_sum_zero": zero.q50_ratio,
                "q90_ratio_sum_zero": zero.q90_ratio,
                "q99_ratio_sum_zero": zero.q99_ratio,
                "lipschitz_bound": lipschitz_bound(d),
            }
        )
    return rows, 0


def _cmd_scaling(args):
    ks = args.k if args.k else [1]
    rows = []
    for d in args.d:
        for k in ks:
            if 4 * k > d:
                raise ValueError(
                    f"scaling requires k <= d/4, got k={k}, d={d}"
                )
            mu = dyadic_alt_measure(
                k,
                d,
                j_min_override=desk_scale_j_min(k, args.delta),
                seed=[args.seed, 11, d, k],
            )
            wit = witness_vector(d, k).unit
            est_w = estimate_f_integral(
                mu,
                altmax_evaluator(wit, restarts=args.restarts),
                args.trials,
                seed=[args.seed, 12, d, k],
            )

            def random_eval(basis, rng, _d=d):
                v = rng.standard_normal(_d) + 1j * rng.standard_normal(_d)
                v /= np.linalg.norm(v)
                return width_altmax(
                    basis, v, restarts=args.restarts, seed=rng
                ).value

            est_r = estimate_f_integral(
                mu, random_eval, args.trials, seed=[args.seed, 13, d, k]
            )
            scale = math.log(d / k)
            rows.append(
                {
                    "d": d,
                    "k": k,
                    "j_count": len(mu.j_values),
                    "trials": args.trials,
                    "mean_sup2_random": est_r.mean,
                    "stderr_random": est_r.stderr,
                    "normalized_random": est_r.mean * scale,
                    "mean_sup2_witness": est_w.mean,
                    "stderr_witness": est_w.stderr,
                    "normalized_witness": est_w.mean * scale,
                }
            )
    return rows, 0


def _cmd_lowerbound(args):
    ds = args.d if args.d else [16]
    ks = args.k if args.k else [1, 2, 4]
    rows = []
    code = 0
    for d in ds:
        for k in ks:
            if not 1 <= k <= d:
                raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
            wit = witness_vector(d, k)
            res = adversarial_min_width(
                d,
                k,
                wit.unit,
                restarts=args.restarts,
                steps=args.steps,
                seed=[args.seed, 21, d, k],
                inner_restarts=args.inner_restarts,
            )
            normalized = res.min_value * math.sqrt(math.log(2 * d / k))
            ok = bool(normalized >= LOWERBOUND_FLOOR)
            if not ok:
                code = 3
            rows.append(
                {
                    "d": d,
                    "k": k,
                    "restarts": args.restarts,
                    "steps": args.steps,
                    "min_width": res.min_value,
                    "normalized": normalized,
                    "ok": ok,
                }
            )
    return rows, code


def _cmd_realize(args):
    group = load_group_json(args.group)
    try:
        base = np.array([float(t) for t in args.base_point.split(",")])
    except ValueError as exc:
        raise ValueError(f"cannot parse base point: {exc}") from exc
    if base.shape[0] != group.d:
        raise ValueError(
            f"base point has {base.shape[0]} coordinates, group acts on "
            f"dimension {group.d}"
        )
    norm = float(np.linalg.norm(base))
    if norm == 0.0:
        raise ValueError("base point must be nonzero")
    base = base / norm
    orbit = enumerate_orbit(group, base, max_size=args.max_orbit)
    d = group.d
    k = args.k
    if k < 1 or 2 * k > d:
        raise ValueError(f"need 1 <= k <= d/2 for the reduction, got k={k}, d={d}")

    candidates = [
        sample_uniform(2 * k, d, "complex", [args.seed, 41, i])
        for i in range(args.draws)
    ]
    try:
        mu = dyadic_alt_measure(
            2 * k,
            d,
            j_min_override=desk_scale_j_min(2 * k, args.delta),
            seed=[args.seed, 42],
        )
        candidates.extend(
            mu.sample([args.seed, 43, i]) for i in range(args.draws)
        )
    except (EmptyDyadicIndexError, ValueError, CertificationFailedError):
        pass  # dyadic construction infeasible at this (2k, d); uniform only

    widths = [width_orbit(b, orbit).value for b in candidates]
    best = int(np.argmin(widths))
    complex_width = widths[best]
    rep = realize_real_subspace(candidates[best])
    real_width = width_orbit(rep.basis, orbit).value
    ratio = real_width / complex_width if complex_width > 0 else math.inf
    ok = bool(ratio <= REALIZE_RATIO_CAP)
    rows = [
        {
            "d": d,
            "k": k,
            "orbit_size": orbit.n,
            "draws": len(candidates),
            "complex_width": complex_width,
            "real_width": real_width,
            "ratio": ratio,
            "selected_columns": "|".join(str(i) for i in rep.selection.indices),
            "s_2k": rep.s_2k,
            "achieved": rep.selection.achieved,
            "target": rep.selection.target,
            "ok": ok,
        }
    ]
    return rows, 0 if ok else 3


def _cmd_selberg_fuzz(args):
    rows = []
    code = 0
    families = ("complex_gaussian", "near_parallel", "rank_one")
    for trial in range(args.trials):
        rng = np.random.default_rng([args.seed, 51, trial])
        family = families[trial % 3]
        m = int(rng.integers(2, 21))
        d = int(rng.integers(2, 31))
        if family == "complex_gaussian":
            x = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
        elif family == "near_parallel":
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            v /= np.linalg.norm(v)
            eps = 10.0 ** rng.uniform(-8, -1)
            x = v[None, :] * rng.standard_normal((m, 1)) + eps * (
                rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
            )
        else:
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            x = v[None, :] * rng.standard_normal((m, 1))
        rep = selberg_check(x)
        if not rep.holds:
            code = 3
        rows.append(
            {
                "trial": trial,
                "family": family,
                "m": m,
                "d": d,
                "lhs": rep.lhs,
                "rhs": rep.rhs,
                "margin": rep.margin,
                "holds": rep.holds,
            }
        )
    return rows, code


def _cmd_rip_fuzz(args):
    ks = args.k if args.k else [1, 2, 3]
    rows = []
    code = 0
    for k in ks:
        if k < 1:
            raise ValueError("k must be positive")
        for trial in range(args.trials):
            rng = np.random.default_rng([args.seed, 61, k, trial])
            m = rng.standard_normal((2 * k, 4 * k))
            sel = select_columns(m, k, c_rip=0.0)
            ok = bool(sel.achieved >= 0.1 * sel.target)
            if not ok:
                code = 3
            rows.append(
                {
                    "k": k,
                    "trial": trial,
                    "achieved": sel.achieved,
                    "target": sel.target,
                    "ratio": sel.ratio,
                    "greedy_achieved": sel.greedy_achieved,
                    "exhaustive_achieved": (
                        sel.exhaustive_achieved
                        if sel.exhaustive_achieved is not None
                        else ""
                    ),
                    "ok": ok,
                }
            )
    return rows, code


HANDLERS = {
    "tnorm": _cmd_tnorm,
    "scaling": _cmd_scaling,
    "lowerbound": _cmd_lowerbound,
    "realize": _cmd_realize,
    "selberg-fuzz": _cmd_selberg_fuzz,
    "rip-fuzz": _cmd_rip_fuzz,
}


def _render(command: str, args, rows, fmt: str) -> str:
    if fmt == "json":
        config = {
            key: value
            for key, value in vars(args).items()
            if key not in ("command", "format", "out")
        }
        doc = {
            "schema": SCHEMA_VERSION,
            "command": command,
            "config": config,
            "rows": rows,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS[command], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, code = HANDLERS[args.command](args)
    except (
        ValueError,
        OSError,
        EmptyDyadicIndexError,
        OrbitTooLargeError,
        GroupTooLargeError,
        RankDeficientError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GuaranteeMissedError, CertificationFailedError) as exc:
        print(f"guarantee missed: {exc}", file=sys.stderr)
        return 3
    except CylwidthError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _render(args.command, args, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
