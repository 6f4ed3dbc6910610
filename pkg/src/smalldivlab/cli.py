"""Command-line front end.

Subcommands: classify, brj, gamma, table1, constants, partition,
legendre, solve, thm1, counterexample, sweep.  Reports are emitted as
JSON objects {command, params, results, verdicts, version} (or CSV for
tabular artifacts); identical configurations produce byte-identical
files (fixed ordering, no timestamps).  Exit codes: 0 success, 1 a
check-command verdict failed, 2 input error.

Frequency mini-language: ``golden``, ``surd:[pre;per]`` (e.g.
``surd:[;2]``), ``quotients:[a1,a2,...]``, ``rational:P/Q``,
``rule:omega-star(alpha=1/n,a1=2)``, ``rule:exp-liouville(c=0.5,a1=1)``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import __version__
from .bounds import (
    BoundReport,
    DiophGrowth,
    brj1,
    brj2,
    brj_combined,
    format_table1_csv,
    gamma_delta,
    table1_rows,
)
from .classify import (
    brjuno_partial_sum,
    diophantine_constant,
    khintchine_constants,
    kl_membership,
    kl_params,
    levy_example_bound,
)
from .cohom import (
    ModeMap,
    blowup_witness,
    check_thm1,
    counterexample_modes,
    load_modes,
    save_modes,
    solve_modes,
    strip_norm,
)
from .contfrac import ContinuedFraction, ExpansionError, FrequencySpec, expand, verify_nint_lemma
from .smalldiv import away_bound_check, box_sum, partition_dump, partition_sums, verify_legendre

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2

_GRAMMAR_HINT = (
    "expected one of: golden | surd:[pre;per] | quotients:[a1,a2,...] | "
    "rational:P/Q | rule:name(k=v,...)"
)


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of a single invocation.

    ``numbers`` holds the per-command numeric/string options (delta, Q,
    tau, mu, seed, paths, ...) exactly as the argument parser validated
    them.  Identical configs produce byte-identical artifacts.
    """

    command: str
    freq: Optional[str] = None
    out: Optional[str] = None
    fmt: str = "json"
    numbers: tuple = ()  # sorted (name, value) pairs

    def get(self, name, default=None):
        for key, value in self.numbers:
            if key == name:
                return value
        return default


def _parse_int_list(body: str):
    body = body.strip()
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError as exc:
        raise ExpansionError(f"bad integer list {body!r}: {exc}; {_GRAMMAR_HINT}")


def parse_frequency(spec: str, depth_cap=None, bit_cap=None) -> FrequencySpec:
    """Parse the frequency mini-language into a FrequencySpec."""
    caps = {}
    if depth_cap is not None:
        caps["depth_cap"] = depth_cap
    if bit_cap is not None:
        caps["bit_cap"] = bit_cap
    spec = spec.strip()
    if spec == "golden":
        return FrequencySpec.golden(**caps)
    if spec.startswith("surd:[") and spec.endswith("]"):
        body = spec[len("surd:[") : -1]
        if ";" not in body:
            raise ExpansionError(f"surd needs 'pre;per': {spec!r}; {_GRAMMAR_HINT}")
        pre, per = body.split(";", 1)
        return FrequencySpec.periodic(_parse_int_list(pre), _parse_int_list(per), **caps)
    if spec.startswith("quotients:[") and spec.endswith("]"):
        return FrequencySpec.literal(
            _parse_int_list(spec[len("quotients:[") : -1]), **caps
        )
    if spec.startswith("rational:"):
        body = spec[len("rational:") :]
        m = re.fullmatch(r"(\d+)/(\d+)", body)
        if not m:
            raise ExpansionError(f"bad rational {body!r}; {_GRAMMAR_HINT}")
        return FrequencySpec.rational(int(m.group(1)), int(m.group(2)), **caps)
    if spec.startswith("rule:"):
        m = re.fullmatch(r"rule:([a-z-]+)\(([^)]*)\)", spec)
        if not m:
            raise ExpansionError(f"bad rule syntax {spec!r}; {_GRAMMAR_HINT}")
        name, body = m.group(1), m.group(2)
        params = {}
        if body.strip():
            for item in body.split(","):
                if "=" not in item:
                    raise ExpansionError(
                        f"rule parameter {item!r} needs key=value; {_GRAMMAR_HINT}"
                    )
                key, value = item.split("=", 1)
                params[key.strip()] = value.strip()
        return FrequencySpec.make_rule(name, **params, **caps)
    raise ExpansionError(f"cannot parse frequency {spec!r}; {_GRAMMAR_HINT}")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SMALLDIV_THREADS", "1")))
    except ValueError:
        return 1


def _scalar_text(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, complex):
        return f"{v.real:.6g}{v.imag:+.6g}i"
    return str(v)


def _render_text(value, indent=0) -> str:
    """Human-readable rendering: floats rounded to 6 significant digits."""
    pad = "  " * indent
    if hasattr(value, "__dataclass_fields__"):
        value = asdict(value)
    if isinstance(value, dict):
        if not value:
            return f"{pad}(none)"
        lines = []
        for key in sorted(value, key=str):
            v = value[key]
            if isinstance(v, (dict, list, tuple)) or hasattr(v, "__dataclass_fields__"):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{key} = {_scalar_text(v)}")
        return "\n".join(lines)
    if isinstance(value, (list, tuple)):
        if not value:
            return f"{pad}(empty)"
        lines = []
        for v in value:
            if isinstance(v, (dict, list, tuple)) or hasattr(v, "__dataclass_fields__"):
                lines.append(f"{pad}-")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
        return "\n".join(lines)
    return pad + _scalar_text(value)


def _emit(report: dict, out: Optional[str], fmt: str = "json") -> None:
    if fmt == "text":
        text = _render_text(report) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True, default=_jsonable) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "__dataclass_fields__"):
        return asdict(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _report(command: str, params: dict, results: dict, verdicts: dict) -> dict:
    return {
        "command": command,
        "params": params,
        "results": results,
        "verdicts": verdicts,
        "version": __version__,
    }


def _expand_freq(args, default_depth=64) -> ContinuedFraction:
    spec = parse_frequency(
        args.freq, getattr(args, "depth_cap", None), getattr(args, "bit_cap", None)
    )
    depth = getattr(args, "depth", None)
    return expand(spec, default_depth if depth is None else depth)


def _bound_report_dict(rep: BoundReport) -> dict:
    return {
        "quantity": rep.quantity,
        "computed": rep.computed,
        "bound": rep.bound,
        "margin": rep.margin,
        "verdict": rep.verdict,
        "params": rep.params,
    }


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_classify(args) -> int:
    cf = _expand_freq(args)
    depth = min(args.depth, cf.depth - 1)
    cert = diophantine_constant(cf, args.tau, depth)
    params = kl_params(args.T_minus, args.T_plus, args.N)
    kl = kl_membership(cf, params, min(cf.depth, max(params.N, depth)))
    bps = brjuno_partial_sum(cf, depth)
    nint = verify_nint_lemma(cf, min(10, cf.depth - 1))
    report = _report(
        "classify",
        {
            "freq": args.freq,
            "tau": args.tau,
            "depth": depth,
            "T_minus": args.T_minus,
            "T_plus": args.T_plus,
            "N": args.N,
        },
        {
            "diophantine": asdict(cert),
            "kl": asdict(kl),
            "brjuno_partial_sum": asdict(bps),
            "quotients_head": list(cf.quotients[:12]),
            "truncated": cf.truncated,
        },
        {"nint_lemma_all_true": all(ok for _, _, ok in nint)},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK if all(ok for _, _, ok in nint) else EXIT_VERDICT


def _cmd_brj(args) -> int:
    cf = _expand_freq(args)
    depth = min(args.depth, cf.depth - 1)
    growth = None
    if args.C is not None:
        growth = DiophGrowth(C=args.C, tau=args.tau)
    b1 = brj1(cf, args.Delta, depth, growth)
    b2 = brj2(cf, args.Delta, depth, growth)
    comb = brj_combined(cf, args.Delta, depth, growth)
    report = _report(
        "brj",
        {"freq": args.freq, "Delta": args.Delta, "depth": depth},
        {"brj1": asdict(b1), "brj2": asdict(b2), "brj_combined": asdict(comb)},
        {},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK


def _cmd_gamma(args) -> int:
    cf = _expand_freq(args)
    gd = gamma_delta(cf, args.rho, args.delta, mu=args.mu)
    report = _report(
        "gamma",
        {"freq": args.freq, "rho": args.rho, "delta": args.delta, "mu": args.mu},
        {
            "Gamma0": gd.Gamma0,
            "brj_term": gd.brj_term,
            "const_type_term": gd.const_type_term,
            "away_term": gd.away_term,
            "Delta": gd.Delta,
            "omega": gd.omega,
            "omega_halfwidth": gd.omega_halfwidth,
            "G_away_leading": gd.G_away_leading,
            "G_const_type_leading": gd.G_const_type_leading,
        },
        {},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK


def _cmd_table1(args) -> int:
    rows = table1_rows(tolerance=args.tolerance)
    text = format_table1_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_constants(args) -> int:
    consts = khintchine_constants(args.tolerance, cache_path=args.cache)
    ell, G = levy_example_bound()
    report = _report(
        "constants",
        {"tolerance": args.tolerance},
        {
            "kappa": consts.kappa,
            "kappa_prime": consts.kappa_prime,
            "kappa_ratio": consts.ratio,
            "T_minus_max": consts.t_minus_max,
            "tail_bound": consts.tail_bound,
            "ell": ell,
            "G_example": G,
        },
        {},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK


def _cmd_partition(args) -> int:
    cf = _expand_freq(args)
    sums = partition_sums(cf, args.delta, args.Q)
    oracle = box_sum(cf, args.delta, args.Q)
    count_total = sum(sums.counts.values())
    box_cells = (2 * args.Q + 1) ** 2 - 1
    rel = abs(sums.total - oracle) / oracle if oracle else 0.0
    ok = rel <= 1e-12 and count_total == box_cells
    if args.dump:
        partition_dump(cf, args.delta, args.Q, args.dump)
    report = _report(
        "partition",
        {"freq": args.freq, "delta": args.delta, "Q": args.Q},
        {
            "away": sums.away,
            "const_type": sums.const_type,
            "brjuno": sums.brjuno,
            "brjuno_k0": sums.brjuno_k0,
            "total": sums.total,
            "counts": sums.counts,
            "away_tail_bound": sums.away_tail_bound,
            "oracle_total": oracle,
            "oracle_rel_diff": rel,
        },
        {"oracle_match": ok, "counts_tile_box": count_total == box_cells},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK if ok else EXIT_VERDICT


def _cmd_legendre(args) -> int:
    cf = _expand_freq(args)
    rep = verify_legendre(cf, args.Q)
    report = _report(
        "legendre",
        {"freq": args.freq, "Q": args.Q},
        _bound_report_dict(rep),
        {"all_pass": rep.verdict and not rep.params["violations"]},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK if rep.verdict else EXIT_VERDICT


def _cmd_solve(args) -> int:
    cf = _expand_freq(args)
    a = load_modes(args.modes)
    solved = solve_modes(a, cf)
    g_norm = strip_norm(solved.modes, args.R, args.grid_n)
    a_norm = strip_norm(a, args.R, args.grid_n)
    if args.out_modes:
        save_modes(solved.modes, args.out_modes)
    report = _report(
        "solve",
        {"freq": args.freq, "modes": args.modes, "R": args.R},
        {
            "mode_count": len(a),
            "max_rel_err": solved.max_rel_err,
            "data_norm": asdict(a_norm),
            "solution_norm": asdict(g_norm),
        },
        {},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK


def _random_decay_modes(rng, rho: float, count: int, span: int) -> ModeMap:
    """Seeded random zero-mean hermitian data with enforced strip decay."""
    entries = {}
    while len(entries) < 2 * count:
        p = int(rng.integers(-span, span + 1))
        q = int(rng.integers(-span, span + 1))
        if (p, q) == (0, 0) or (p, q) in entries or (-p, -q) in entries:
            continue
        magnitude = float(rng.uniform(0.1, 1.0)) * math.exp(-(abs(p) + abs(q)) * rho)
        phase = float(rng.uniform(0.0, 2.0 * math.pi))
        c = magnitude * complex(math.cos(phase), math.sin(phase))
        entries[(p, q)] = c
        entries[(-p, -q)] = c.conjugate()
    return ModeMap.build(entries, hermitian=True)


def _cmd_thm1(args) -> int:
    cf = _expand_freq(args)
    rng = np.random.default_rng(args.seed)
    failures = 0
    margins = []
    for _ in range(args.count):
        a = _random_decay_modes(rng, args.rho, args.modes_per_map, args.span)
        rep = check_thm1(a, cf, args.rho, args.delta, mu=args.mu)
        margins.append(rep.margin)
        if not rep.verdict:
            failures += 1
    report = _report(
        "thm1",
        {
            "freq": args.freq,
            "rho": args.rho,
            "delta": args.delta,
            "mu": args.mu,
            "seed": args.seed,
            "count": args.count,
        },
        {"min_margin": min(margins), "failures": failures},
        {"all_pass": failures == 0},
    )
    _emit(report, args.out, args.fmt)
    return EXIT_OK if failures == 0 else EXIT_VERDICT


def _cmd_counterexample(args) -> int:
    cf = _expand_freq(args)
    n_max = min(args.n_max, cf.depth - 1)
    ce = counterexample_modes(cf, args.rho, args.epsilon, n_max)
    points = blowup_witness(cf, args.rho, args.delta_prime, args.epsilon, n_max)
    if args.witness_csv:
        with open(args.witness_csv, "w") as fh:
            fh.write("n,p_n,q_n,log_w_lo,log_w_hi\n")
            for pt in points:
                fh.write(
                    f"{pt.n},{pt.p},{pt.q},{pt.log_w_lo!r},{pt.log_w_hi!r}\n"
                )
    if args.out_modes:
        save_modes(ce.modes, args.out_modes)
    report = _report(
        "counterexample",
        {
            "freq": args.freq,
            "rho": args.rho,
            "delta_prime": args.delta_prime,
            "epsilon": args.epsilon,
            "n_max": n_max,
        },
        {
            "alpha": asdict(ce.alpha),
            "norm_upper": ce.norm_upper,
            "witness": [asdict(pt) for pt in points],
        },
        {
            "normalization_in_band": 1.0 - ce.alpha.deficit
            <= ce.alpha.two_sum_alpha
            <= 1.0,
            "norm_below_epsilon": ce.norm_upper <= ce.epsilon,
        },
    )
    _emit(report, args.out, args.fmt)
    ok = report["verdicts"]["normalization_in_band"] and report["verdicts"][
        "norm_below_epsilon"
    ]
    return EXIT_OK if ok else EXIT_VERDICT


def _cmd_sweep(args) -> int:
    cf = _expand_freq(args)
    deltas = [float(tok) for tok in args.deltas.split(",") if tok]
    if not deltas:
        raise ExpansionError("sweep needs a nonempty delta list")
    rows = []
    all_ok = True

    def one(delta: float):
        if args.check == "away":
            rep = away_bound_check(cf, delta, args.Q, mu=args.mu)
        elif args.check == "const_type":
            sums = partition_sums(cf, delta, args.Q)
            omega = cf.omega_float()
            bound = args.mu * 8.0 / (1.0 + omega) ** 2 / delta**2
            rep = BoundReport(
                quantity="const_type box sum",
                computed=sums.const_type,
                bound=bound,
                params={"delta": delta, "Q": args.Q, "mu": args.mu},
            )
        elif args.check == "brjuno":
            sums = partition_sums(cf, delta, args.Q)
            omega = cf.omega_float()
            Delta = (1.0 + omega) * delta
            eps = args.mu - 1.0
            depth = cf.depth - 1
            bound = 2.0 * (
                (2.0 + eps) * brj1(cf, Delta, depth).value
                + (1.0 + eps) * brj2(cf, 2.0 * Delta, depth).value
            )
            rep = BoundReport(
                quantity="brjuno box sum",
                computed=sums.brjuno,
                bound=bound,
                params={"delta": delta, "Q": args.Q, "mu": args.mu},
            )
        else:
            raise ExpansionError(f"unknown sweep check {args.check!r}")
        return rep

    n_threads = _threads()
    if n_threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            reports = list(pool.map(one, deltas))
    else:
        reports = [one(d) for d in deltas]
    for delta, rep in zip(deltas, reports):
        rows.append((delta, rep))
        all_ok = all_ok and rep.verdict

    lines = ["delta,computed,bound,margin,verdict"]
    for delta, rep in rows:
        lines.append(
            f"{delta!r},{rep.computed!r},{rep.bound!r},{rep.margin!r},{rep.verdict}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_ok else EXIT_VERDICT


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_io_opts(sp):
    # also accepted before the subcommand; SUPPRESS keeps the subparser
    # from clobbering a value parsed at the top level
    sp.add_argument("--out", default=argparse.SUPPRESS, help="output file")
    sp.add_argument(
        "--format", dest="fmt", choices=("json", "text"), default=argparse.SUPPRESS
    )


def _add_freq_opts(sp, depth_default=64):
    sp.add_argument("--freq", required=True, help="frequency mini-language string")
    sp.add_argument("--depth", type=int, default=depth_default)
    sp.add_argument("--depth-cap", dest="depth_cap", type=int, default=None)
    sp.add_argument("--bit-cap", dest="bit_cap", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="smalldiv",
        description="small-divisor laboratory: continued fractions, weighted "
        "convergent series, partitioned divisor sums, and certified strip-norm "
        "bounds for the torus cohomological equation",
    )
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "text"),
        default="json",
        help="report style: lossless json (17 significant digits) or "
        "human-readable text (6 significant digits)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="diophantine / band-membership diagnostics")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("--T-minus", dest="T_minus", type=float, default=0.1)
    sp.add_argument("--T-plus", dest="T_plus", type=float, default=0.1)
    sp.add_argument("--N", type=int, default=1)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("brj", help="weighted convergent series values and tails")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--Delta", type=float, required=True)
    sp.add_argument("--C", type=float, default=None, help="attach a growth certificate")
    sp.add_argument("--tau", type=float, default=1.0)
    sp.set_defaults(func=_cmd_brj)

    sp = sub.add_parser("gamma", help="loss-of-domain factor components")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--mu", type=float, default=1.25)
    sp.set_defaults(func=_cmd_gamma)

    sp = sub.add_parser("table1", help="band-constant grid as CSV")
    _add_io_opts(sp)
    sp.add_argument("--tolerance", type=float, default=1e-8)
    sp.set_defaults(func=_cmd_table1)

    sp = sub.add_parser("constants", help="universal constants")
    _add_io_opts(sp)
    sp.add_argument("--tolerance", type=float, default=1e-8)
    sp.add_argument("--cache", default=None, help="constants cache file")
    sp.set_defaults(func=_cmd_constants)

    sp = sub.add_parser("partition", help="partitioned box sums + oracle check")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--Q", type=int, required=True)
    sp.add_argument("--dump", default=None, help="write the per-pair audit CSV here")
    sp.set_defaults(func=_cmd_partition)

    sp = sub.add_parser("legendre", help="exact critical-strip divisor check")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--Q", type=int, required=True)
    sp.set_defaults(func=_cmd_legendre)

    sp = sub.add_parser("solve", help="solve modes and report strip norms")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--modes", required=True, help="input ModeMap JSON")
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--grid-n", dest="grid_n", type=int, default=64)
    sp.add_argument("--out-modes", dest="out_modes", default=None)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("thm1", help="end-to-end shrunk-strip bound check")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--mu", type=float, default=1.25)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--modes-per-map", dest="modes_per_map", type=int, default=25)
    sp.add_argument("--span", type=int, default=12)
    sp.set_defaults(func=_cmd_thm1)

    sp = sub.add_parser("counterexample", help="blow-up data and witness")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument("--rho", type=float, default=1.0)
    sp.add_argument("--delta-prime", dest="delta_prime", type=float, required=True)
    sp.add_argument("--epsilon", type=float, default=1.0)
    sp.add_argument("--n-max", dest="n_max", type=int, default=8)
    sp.add_argument("--witness-csv", dest="witness_csv", default=None)
    sp.add_argument("--out-modes", dest="out_modes", default=None)
    sp.set_defaults(func=_cmd_counterexample)

    sp = sub.add_parser("sweep", help="bound check over a delta grid, CSV out")
    _add_io_opts(sp)
    _add_freq_opts(sp)
    sp.add_argument(
        "--check", required=True, choices=("away", "const_type", "brjuno")
    )
    sp.add_argument("--deltas", required=True, help="comma-separated deltas")
    sp.add_argument("--Q", type=int, default=200)
    sp.add_argument("--mu", type=float, default=1.25)
    sp.set_defaults(func=_cmd_sweep)

    return ap


_RESERVED = ("command", "freq", "out", "fmt", "func")


def config_from_args(args) -> RunConfig:
    numbers = tuple(
        sorted((k, v) for k, v in vars(args).items() if k not in _RESERVED)
    )
    return RunConfig(
        command=args.command,
        freq=getattr(args, "freq", None),
        out=args.out,
        fmt=args.fmt,
        numbers=numbers,
    )


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code.

    Check commands return 1 when any verdict fails; malformed inputs
    return 2 before any computation starts.
    """
    handlers = {
        "classify": _cmd_classify,
        "brj": _cmd_brj,
        "gamma": _cmd_gamma,
        "table1": _cmd_table1,
        "constants": _cmd_constants,
        "partition": _cmd_partition,
        "legendre": _cmd_legendre,
        "solve": _cmd_solve,
        "thm1": _cmd_thm1,
        "counterexample": _cmd_counterexample,
        "sweep": _cmd_sweep,
    }
    if config.command not in handlers:
        sys.stderr.write(f"error: unknown command {config.command!r}\n")
        return EXIT_INPUT
    ns = argparse.Namespace(
        command=config.command, out=config.out, fmt=config.fmt, **dict(config.numbers)
    )
    if config.freq is not None:
        ns.freq = config.freq
    try:
        return handlers[config.command](ns)
    except (ExpansionError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    return run(config_from_args(args))


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
