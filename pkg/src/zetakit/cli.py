"""Command-line entry point: ``zetakit <command> ...``.

Exit codes: 0 everything passed, 1 a verification case failed, 2 usage
error, 3 the requested precision is too low for the computation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import mpmath

from . import bernoulli, hpnum, li, mcl, pseudochar, ramanujan, zetafam
from .exactcore import parse_rational
from .hpnum import PrecisionError
from .report import Report, render_value, reports_to_csv, reports_to_json, reports_to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

DEFAULT_SEED = 20240601
FORMATS = ("json", "csv", "text")
ENV = {
    "format": "ZETAKIT_FORMAT",
    "out": "ZETAKIT_OUT",
    "precision": "ZETAKIT_PRECISION",
    "seed": "ZETAKIT_SEED",
    "workers": "ZETAKIT_WORKERS",
}
# smallest precision each numeric command accepts
MIN_PRECISION = {"hp": 64, "li": 128, "ramanujan": 128, "pseudo": 64}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    action: Optional[str] = None
    format: str = "json"
    out: Optional[str] = None
    precision: Optional[int] = None
    seed: int = DEFAULT_SEED
    workers: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.precision is not None and self.precision < 1:
            raise UsageError("precision must be positive")

    def bits(self, default: int, minimum: int = 64) -> int:
        P = default if self.precision is None else self.precision
        if P < minimum:
            raise PrecisionError(f"{self.command} needs precision >= {minimum} bits (got {P})")
        return P

    @property
    def digits(self) -> int:
        """Decimal digits used when serializing floats."""
        return max(20, int((self.precision or 256) * 0.30103))


# --- verify suites --------------------------------------------------------------------
# Each runner is top level so a process pool can pickle it.

def _suite_bernoulli(cfg: RunConfig) -> Report:
    rep = Report("bernoulli")
    rep.extend(bernoulli.verify_trio(200))
    rep.extend(bernoulli.verify_recurrences(200))
    return rep


def _suite_mcl(cfg: RunConfig) -> Report:
    rep = Report("mcl")
    rep.extend(mcl.verify_random(100, cfg.seed))
    rep.extend(mcl.verify_bernoulli(30))
    rep.extend(mcl.even_bernoulli_sign_report(12))
    rng = random.Random(cfg.seed)
    h = mcl.MCLInput.random(rng, 6).h
    rep.extend(mcl.cofactor_symmetry(h, 6))
    return rep


def _suite_ramanujan(cfg: RunConfig, max_s: int = 50, atlas=(3, 4, 5, 10, 11)) -> Report:
    rep = Report("ramanujan")
    for s in range(1, max_s + 1):
        rep.extend(ramanujan.verify_reciprocal(s), f"s={s:03d}/")
        rep.extend(ramanujan.special_values(s), f"s={s:03d}/")
    P = cfg.bits(256, MIN_PRECISION["ramanujan"])
    for r in atlas:
        entry = ramanujan.root_atlas(r, P)
        rep.extend(ramanujan.check_atlas(entry, modulus_tol_bits=min(200, P - 56)), f"atlas/r={r:03d}/")
    return rep


def _suite_zetafam(cfg: RunConfig) -> Report:
    return zetafam.verify(16)


def _suite_hpnum(cfg: RunConfig) -> Report:
    return hpnum.verify(6, cfg.bits(192, MIN_PRECISION["hp"]))


def _suite_li(cfg: RunConfig) -> Report:
    P = cfg.bits(256, MIN_PRECISION["li"])
    rep = Report("li")
    rep.extend(li.li_report(20, P))
    rep.extend(li.verify_algebraic(200, cfg.seed, 10))
    rep.extend(li.baez_duarte_report(32, P))
    return rep


def _suite_pseudochar(cfg: RunConfig) -> Report:
    return pseudochar.verify()


SUITES: Dict[str, Callable[[RunConfig], Report]] = {
    "bernoulli": _suite_bernoulli,
    "hpnum": _suite_hpnum,
    "li": _suite_li,
    "mcl": _suite_mcl,
    "pseudochar": _suite_pseudochar,
    "ramanujan": _suite_ramanujan,
    "zetafam": _suite_zetafam,
}


def _timed(name: str, cfg: RunConfig) -> Report:
    start = time.perf_counter()
    rep = SUITES[name](cfg)
    rep.suite = name
    rep.wall_time = time.perf_counter() - start
    return rep


def merge(reports: Sequence[Report]) -> List[Report]:
    """Deterministic order: suite name, then case id."""
    return [r.sorted() for r in sorted(reports, key=lambda r: r.suite)]


def run_all(cfg: RunConfig, names: Optional[Sequence[str]] = None) -> List[Report]:
    names = sorted(names or SUITES)
    if cfg.workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(names))) as pool:
            reports = list(pool.map(_timed, names, [cfg] * len(names)))
    else:
        reports = [_timed(n, cfg) for n in names]
    return merge(reports)


# --- output -----------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _plain(x, digits: int):
    """Like render_value but keeps integers as JSON numbers."""
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v, digits) for v in x]
    return render_value(x, digits)


def render_rows(rows: List[dict], fmt: str, digits: int) -> str:
    rows = [_plain(r, digits) for r in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    header = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r.get(k)) for k in header])
        return buf.getvalue()
    lines = ["\t".join(header)]
    lines += ["\t".join(_cell(r.get(k)) for k in header) for r in rows]
    return "\n".join(lines) + "\n"


def render_reports(reports: List[Report], cfg: RunConfig) -> str:
    if cfg.format == "json":
        return reports_to_json(reports, cfg.digits, cfg.timings)
    if cfg.format == "csv":
        return reports_to_csv(reports, cfg.digits)
    return reports_to_text(reports)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- command handlers -----------------------------------------------------------------
# Each returns either a list of row dicts (data output) or a list of Reports.

def _rationals(text: Optional[str], name: str, s: int) -> Optional[list]:
    if text is None:
        return None
    try:
        vals = [parse_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name}: {exc}") from None
    if len(vals) < s:
        raise UsageError(f"--{name} needs at least {s} entries, got {len(vals)}")
    return vals


def _complex_arg(text: str):
    parts = text.split(",")
    if len(parts) > 2:
        raise UsageError(f"expected RE[,IM], got {text!r}")
    try:
        re_ = mpmath.mpf(parts[0])
        im = mpmath.mpf(parts[1]) if len(parts) == 2 else mpmath.mpf(0)
    except (ValueError, TypeError):
        raise UsageError(f"not a number: {text!r}") from None
    return mpmath.mpc(re_, im)


def cmd_bernoulli(args, cfg: RunConfig):
    if cfg.action == "verify":
        rep = Report("bernoulli")
        rep.extend(bernoulli.verify_trio(args.max_s))
        rep.extend(bernoulli.verify_recurrences(args.max_s))
        return [rep]
    tab = bernoulli.table(args.kind, args.max_s)
    return [{"s": s, args.kind: v} for s, v in enumerate(tab.values)]


def cmd_ramanujan(args, cfg: RunConfig):
    if cfg.action == "poly":
        rp = ramanujan.q_poly(args.r)
        return [{"power": k, "coeff": c} for k, c in enumerate(rp.poly.coeffs) if c]
    if cfg.action == "verify":
        return [_suite_ramanujan(cfg, args.max_s, atlas=())]
    P = cfg.bits(256, MIN_PRECISION["ramanujan"])
    with mpmath.workprec(P):
        entry = ramanujan.root_atlas(args.r, P)
        return [{"re": +x, "im": +y, "modulus": +m, "residual": +res}
                for x, y, m, res in entry.rows()]


def cmd_mcl(args, cfg: RunConfig):
    if cfg.action == "verify":
        rep = Report("mcl")
        rep.extend(mcl.verify_random(args.trials, cfg.seed, min(args.max_s, 10), args.max_s))
        rep.extend(mcl.verify_bernoulli(args.max_s))
        return [rep]
    s = args.s
    h = _rationals(args.h, "h", s)
    if h is None:
        raise UsageError("--h is required")
    H = _rationals(args.H, "H", s)
    G = _rationals(args.G, "G", s)
    if cfg.action == "delta":
        value = mcl.delta(h, s)
    elif cfg.action == "psi":
        if H is None:
            raise UsageError("psi needs --H")
        value = mcl.psi(h, H, s)
    else:
        if H is None or G is None:
            raise UsageError("lambda needs --H and --G")
        value = mcl.lambda3(h, H, G, s)
    return [{"kind": cfg.action, "s": s, "value": value}]


def cmd_zeta(args, cfg: RunConfig):
    if cfg.action == "value":
        if args.arg < 2 or args.arg % 2:
            raise UsageError("--arg must be an even integer >= 2")
        v = zetafam.family_value(args.family, args.arg // 2)
        return [{"family": args.family, "arg": args.arg, "value": v.to_json()}]
    paths = ("recurrence", "determinant", "composition") if args.paths == "all" else (args.paths,)
    return [zetafam.verify(args.max_s, paths)]


def cmd_hp(args, cfg: RunConfig):
    P = cfg.bits(128 if cfg.action == "zeta" else 192, MIN_PRECISION["hp"])
    digits = int(P * 0.30103)
    if cfg.action == "zeta":
        with mpmath.workprec(P + hpnum.GUARD_BITS):
            s = _complex_arg(args.s)
        v = hpnum.zeta_hp(s, P)
        return [{"s": args.s, "re": mpmath.nstr(v.re, digits), "im": mpmath.nstr(v.im, digits),
                 "digits": digits}]
    if cfg.action == "grosswald":
        with mpmath.workprec(P + hpnum.GUARD_BITS):
            z = _complex_arg(args.z)
        g = hpnum.grosswald_F(args.s, z, P)
        return [{"s": args.s, "z": args.z, "re": mpmath.nstr(g.value.re, digits),
                 "im": mpmath.nstr(g.value.im, digits), "digits": digits,
                 "terms": g.terms_used, "tail_bound": mpmath.nstr(g.tail_bound, 5)}]
    return [hpnum.verify(args.max_s, P)]


def cmd_li(args, cfg: RunConfig):
    P = cfg.bits(256, MIN_PRECISION["li"])
    if cfg.action == "baez-duarte":
        return [{"t": t, "c": c} for t, c in enumerate(li.baez_duarte_c(args.t_max, P))]
    if args.n_max > 30:
        raise UsageError("--n-max above 30 is beyond desk scale")
    coeffs = li.li_coefficients(args.n_max, P, cfg.workers)
    with mpmath.workprec(P):
        return [{"n": n, "lambda": coeffs.lambdas[n - 1], "spread": coeffs.spread(n),
                 "routes": {k: v[n - 1] for k, v in coeffs.routes.items()}}
                for n in range(1, args.n_max + 1)]


def cmd_pseudo(args, cfg: RunConfig):
    lo, hi = args.s_min, args.s_max
    if lo is not None and hi is not None and lo > hi:
        raise UsageError("--s-min must not exceed --s-max")
    P = cfg.precision
    rep = Report("pseudochar")
    if args.which == "thm15":
        svals = None
        if lo is not None or hi is not None:
            a = lo if lo is not None else 1
            b = hi if hi is not None else max(pseudochar.THRESHOLDS.values()) + 20
            svals = {name: range(a, b + 1) for name in pseudochar.THRESHOLDS}
            top = b
        else:
            top = max(pseudochar.THRESHOLDS.values()) + 20
        if P is not None and P < pseudochar.required_precision(2 * top):
            raise PrecisionError(f"thm15 up to s={top} needs precision >= "
                                 f"{pseudochar.required_precision(2 * top)} bits (got {P})")
        rep.extend(pseudochar.verify_approximations(svals, P))
    elif args.which == "lemma41":
        rep.extend(pseudochar.verify_factorial_decay(cfg.bits(256, MIN_PRECISION["pseudo"])))
    elif args.which == "lemma42":
        a, b = max(lo or 1, 1), min(hi or 40, 40)
        for s in range(a, b + 1):
            rep.extend(pseudochar.verify_sine_identity(s, P=cfg.bits(192, MIN_PRECISION["pseudo"])))
    else:
        b = hi or 64
        need = 2 * b + 64
        if P is not None and P < need:
            raise PrecisionError(f"bounds up to s={b} need precision >= {need} bits (got {P})")
        rep.extend(pseudochar.elementary_bounds(b, P, max(lo or 2, 2)))
    return [rep]


def cmd_verify(args, cfg: RunConfig):
    names = None if args.suite == "all" else [args.suite]
    return run_all(cfg, names)


HANDLERS = {
    "bernoulli": cmd_bernoulli,
    "ramanujan": cmd_ramanujan,
    "mcl": cmd_mcl,
    "zeta": cmd_zeta,
    "hp": cmd_hp,
    "li": cmd_li,
    "pseudo": cmd_pseudo,
    "verify": cmd_verify,
}


# --- argument parsing -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    g.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    g.add_argument("--precision", type=int, metavar="P", default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, metavar="S", default=argparse.SUPPRESS)
    g.add_argument("--workers", type=int, metavar="W", default=argparse.SUPPRESS)
    g.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                   help="include wall_time per suite (breaks byte-identical output)")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="zetakit", parents=[common],
                     description="Exact and high-precision checks for zeta values and related identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, **kw):
        return parent.add_parser(name, parents=[common], **kw)

    b = sub.add_parser("bernoulli", help="Bernoulli-type tables and checks")
    bs = b.add_subparsers(dest="action", required=True, parser_class=_Parser)
    t = leaf(bs, "table")
    t.add_argument("--kind", choices=("B", "Bstar", "Bprime"), default="B")
    t.add_argument("--max-s", type=int, default=12)
    leaf(bs, "verify").add_argument("--max-s", type=int, default=200)

    r = sub.add_parser("ramanujan", help="Ramanujan polynomials")
    rs = r.add_subparsers(dest="action", required=True, parser_class=_Parser)
    leaf(rs, "poly").add_argument("--r", type=int, required=True)
    leaf(rs, "verify").add_argument("--max-s", type=int, default=50)
    leaf(rs, "roots").add_argument("--r", type=int, required=True)

    m = sub.add_parser("mcl", help="layered determinants")
    ms = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for kind in ("delta", "psi", "lambda"):
        k = leaf(ms, kind, help="vectors are comma-separated rationals, e.g. --h=1,-1/2,3")
        k.add_argument("--s", type=int, required=True)
        k.add_argument("--h", required=True)
        k.add_argument("--H")
        k.add_argument("--G")
    v = leaf(ms, "verify")
    v.add_argument("--max-s", type=int, default=16)
    v.add_argument("--trials", type=int, default=500)

    z = sub.add_parser("zeta", help="exact zeta-family values")
    zs = z.add_subparsers(dest="action", required=True, parser_class=_Parser)
    zv = leaf(zs, "value")
    zv.add_argument("--family", choices=zetafam.FAMILIES, default="zeta")
    zv.add_argument("--arg", type=int, required=True, help="even argument 2s")
    zz = leaf(zs, "verify")
    zz.add_argument("--max-s", type=int, default=16)
    zz.add_argument("--paths", choices=("all", "recurrence", "determinant", "composition"), default="all")

    h = sub.add_parser("hp", help="high-precision numerics")
    hs = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    leaf(hs, "zeta").add_argument("--s", required=True, metavar="RE[,IM]")
    g = leaf(hs, "grosswald")
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--z", required=True, metavar="RE,IM")
    leaf(hs, "verify-grosswald").add_argument("--max-s", type=int, default=6)

    lp = sub.add_parser("li", help="Li and Baez-Duarte coefficients")
    ls = lp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    leaf(ls, "compute").add_argument("--n-max", type=int, default=20)
    leaf(ls, "baez-duarte").add_argument("--t-max", type=int, default=32)

    p = sub.add_parser("pseudo", help="pseudo-characteristic polynomial inequalities")
    ps = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pv = leaf(ps, "verify")
    pv.add_argument("--which", choices=("thm15", "lemma41", "lemma42", "bounds"), required=True)
    pv.add_argument("--s-min", type=int)
    pv.add_argument("--s-max", type=int)

    vp = leaf(sub, "verify", help="run verification suites")
    vp.add_argument("suite", nargs="?", default="all", choices=("all",) + tuple(SUITES))
    return parser


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(ENV[name])
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV[name]} must be an integer, got {raw!r}") from None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Flags beat environment variables, which beat built-in defaults."""
    def pick(name, env_value, default):
        if hasattr(args, name):
            return getattr(args, name)
        return default if env_value is None else env_value

    env_seed = _env_int("seed")
    env_prec = _env_int("precision")
    env_workers = _env_int("workers")
    return RunConfig(
        command=args.command,
        action=getattr(args, "action", None),
        format=pick("format", os.environ.get(ENV["format"]) or None, "json"),
        out=pick("out", os.environ.get(ENV["out"]) or None, None),
        precision=pick("precision", env_prec, None),
        seed=pick("seed", env_seed, DEFAULT_SEED),
        workers=pick("workers", env_workers, 1),
        timings=getattr(args, "timings", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        result = HANDLERS[cfg.command](args, cfg)
    except UsageError as exc:
        print(f"zetakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"zetakit: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        # domain errors from the library (bad s, pole, out-of-range argument)
        print(f"zetakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if result and isinstance(result[0], Report):
        _emit(render_reports(result, cfg), cfg)
        return EXIT_OK if all(r.passed for r in result) else EXIT_FAIL
    _emit(render_rows(result, cfg.format, cfg.digits), cfg)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
