"""Command line interface: every analysis as a subcommand.

Reports start with a `#` header line listing the effective parameters, then
human-readable output, then machine-readable `key=value` lines.  Exit codes:
0 success, 2 usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import figures
from .blocking import (
    detect_spreading,
    search_blocking,
    strip_width,
    verify_blocking,
)
from .classify import McParams, classify
from .core import PeriodicConfig
from .curves import parse_curve
from .errors import CapExceeded, DircaError
from .langs import generic_limit_sample, limit_language_approx, nilpotency_probe
from .langs import is_surjective
from .measure import BernoulliMeasure, mu_limit_probe
from .render import render_spacetime
from .rules import LocalRule, directional_orbit, dump_rule, parse_rule
from .zoo import builtin, zoo_names


def _load_rule(spec: str) -> tuple[LocalRule, str]:
    if spec.startswith("zoo:"):
        return builtin(spec[4:]).rule, spec
    with open(spec) as f:
        return parse_rule(f.read()), spec


def _load_measure(rule: LocalRule, spec: str) -> BernoulliMeasure:
    if spec == "uniform":
        return BernoulliMeasure.uniform(rule.alphabet)
    weights = [Fraction(p) for p in spec.split(",")]
    return BernoulliMeasure.from_weights(rule.alphabet, weights)


def _initial(rule: LocalRule, text: str) -> PeriodicConfig:
    w = rule.alphabet.word_from_text(text)
    return PeriodicConfig(rule.alphabet, w, 0)


def _header(args, keys):
    parts = " ".join(f"{k}={getattr(args, k.replace('-', '_'))}" for k in keys)
    print(f"# {parts}")


def cmd_simulate(args):
    rule, _ = _load_rule(args.rule)
    h = parse_curve(args.direction)
    x = _initial(rule, args.initial)
    trace = directional_orbit(rule, h, x, args.steps, args.half_window)
    _header(args, ["rule", "direction", "initial", "steps", "half-window"])
    for t in range(trace.steps, -1, -1):
        print(f"t={t:4d} |{trace.rows[t].text()}|")
    if args.figure:
        figures.save_spacetime_figure(trace, args.figure)
        print(f"figure={args.figure}")
    print(f"steps={trace.steps}")
    print(f"width={trace.width}")
    return 0


def cmd_render(args):
    rule, _ = _load_rule(args.rule)
    h = parse_curve(args.direction)
    x = _initial(rule, args.initial)
    trace = directional_orbit(rule, h, x, args.steps, args.half_window)
    data = render_spacetime(trace, format=args.format)
    with open(args.out, "wb") as f:
        f.write(data)
    _header(args, ["rule", "direction", "initial", "steps", "half-window", "format"])
    print(f"out={args.out}")
    print(f"bytes={len(data)}")
    return 0


def cmd_blocking(args):
    rule, _ = _load_rule(args.rule)
    h = parse_curve(args.direction)
    _header(args, ["rule", "direction", "horizon"])
    print(f"strip_width={strip_width(rule, h)}")
    if args.search:
        hits = search_blocking(rule, h, args.max_len, args.horizon)
        for w, s in hits:
            print(f"hit word={w.text()} offset={s}")
        print(f"hits={len(hits)}")
        print("certified=horizon-bounded")
        return 0
    if args.word is None:
        raise SystemExit2("either --word or --search is required")
    u = rule.alphabet.word_from_text(args.word)
    v = verify_blocking(rule, h, u, args.offset, args.horizon, mode=args.mode)
    print(f"kind={v.kind}")
    if v.colors is not None:
        uniq = sorted({c.text() for c in v.colors})
        print("colors=" + ",".join(uniq))
    if v.witness is not None:
        w = v.witness
        print(f"witness_time={w.time}")
        print(f"witness_cell={w.cell}")
        print(f"witness_x={w.x.text()}")
        print(f"witness_y={w.y.text()}")
        print(f"witness_lo={w.lo}")
    if v.note:
        print(f"note={v.note}")
    return 0


def cmd_spreading(args):
    rule, _ = _load_rule(args.rule)
    _header(args, ["rule"])
    print("spreading=" + ",".join(sorted(detect_spreading(rule))))
    return 0


def cmd_surjective(args):
    rule, _ = _load_rule(args.rule)
    _header(args, ["rule"])
    print(f"surjective={'true' if is_surjective(rule) else 'false'}")
    return 0


def cmd_nilpotent(args):
    rule, _ = _load_rule(args.rule)
    _header(args, ["rule", "horizon"])
    rep = nilpotency_probe(rule, args.horizon)
    if rep.nilpotent:
        print(f"nilpotent=true")
        print(f"time={rep.time}")
        print(f"symbol={rep.symbol}")
    else:
        print("nilpotent=false")
        print(f"certified={'true' if rep.certified_not else 'false'}")
        if rep.reason:
            print(f"reason={rep.reason}")
    return 0


def cmd_limit_language(args):
    rule, _ = _load_rule(args.rule)
    _header(args, ["rule", "time", "length"])
    approx = limit_language_approx(rule, args.time, args.length)
    for w in approx.language.sorted_words():
        print(w.text())
    print(f"count={len(approx.language)}")
    print(f"stabilized={'true' if approx.stabilized else 'false'}")
    print("note=over-approximation of the limit language at this horizon")
    return 0


def cmd_generic_sample(args):
    rule, _ = _load_rule(args.rule)
    h = parse_curve(args.direction)
    mu = _load_measure(rule, args.measure)
    _header(args, ["rule", "direction", "measure", "samples", "t-min", "t-max",
                   "window", "seed"])
    sampled = generic_limit_sample(
        rule, h, mu, args.samples, args.t_min, args.t_max, args.window, args.seed
    )
    sys.stdout.write(sampled.dump())
    if args.figure:
        figures.save_histogram_figure(sampled, args.figure)
        print(f"figure={args.figure}")
    return 0


def cmd_mu_limit(args):
    rule, _ = _load_rule(args.rule)
    mu = _load_measure(rule, args.measure)
    _header(args, ["rule", "measure", "length", "horizon"])
    table = mu_limit_probe(rule, mu, args.length, args.horizon)
    sys.stdout.write(table.dump())
    if args.figure:
        figures.save_decay_figure(table, args.figure)
        print(f"figure={args.figure}")
    return 0


def cmd_classify(args):
    rule, rule_id = _load_rule(args.rule)
    grid = None
    if args.grid:
        grid = [Fraction(p) for p in args.grid.split(",")]
    mc = McParams(args.mc_samples, args.mc_time, args.mc_window, args.seed)
    _header(args, ["rule", "word-len", "horizon", "seed"])
    rep = classify(
        rule, grid, args.word_len, args.horizon, mc, rule_id=rule_id
    )
    for f in rep.findings:
        tag = "skipped" if f.skipped else ("ae" if f.ae else "sensitive-evidence")
        extra = " equicontinuous" if f.equicontinuous else ""
        print(f"slope {f.slope}: {tag}{extra} ({len(f.hits)} certified words)")
    for note in rep.notes:
        print(f"note: {note}")
    sys.stdout.write(rep.machine_block())
    return 0


def cmd_zoo(args):
    if args.dump:
        entry = builtin(args.dump)
        sys.stdout.write(dump_rule(entry.rule))
        return 0
    for name in zoo_names():
        entry = builtin(name)
        print(f"{name}: {entry.notes}")
    return 0


class SystemExit2(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dirca",
        description="directional dynamics of one-dimensional cellular automata",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    def rule_arg(sp):
        sp.add_argument("--rule", required=True,
                        help="rule file path or zoo:NAME")

    sp = add("simulate", cmd_simulate, help="print a directional orbit trace")
    rule_arg(sp)
    sp.add_argument("--direction", default="0", help="curve text (default 0)")
    sp.add_argument("--initial", required=True, help="period word of the initial configuration")
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("--half-window", type=int, default=10)
    sp.add_argument("--figure", default=None, help="optional figure output path")

    sp = add("render", cmd_render, help="write a space-time diagram image")
    rule_arg(sp)
    sp.add_argument("--direction", default="0")
    sp.add_argument("--initial", required=True)
    sp.add_argument("--steps", type=int, default=40)
    sp.add_argument("--half-window", type=int, default=40)
    sp.add_argument("--format", default="pgm", choices=["pgm", "ppm", "PGM", "PPM"])
    sp.add_argument("--out", required=True)

    sp = add("blocking", cmd_blocking, help="verify or search blocking words")
    rule_arg(sp)
    sp.add_argument("--direction", default="0")
    sp.add_argument("--horizon", type=int, default=50)
    sp.add_argument("--word", default=None, help="word to verify")
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--mode", default="strong", choices=["strong", "left", "right"])
    sp.add_argument("--search", action="store_true", help="exhaustive search instead")
    sp.add_argument("--max-len", type=int, default=2)

    sp = add("spreading", cmd_spreading, help="exact spreading-state detection")
    rule_arg(sp)

    sp = add("surjective", cmd_surjective, help="exact surjectivity test")
    rule_arg(sp)

    sp = add("nilpotent", cmd_nilpotent, help="nilpotency probe")
    rule_arg(sp)
    sp.add_argument("--horizon", type=int, default=8)

    sp = add("limit-language", cmd_limit_language, help="image language at a time")
    rule_arg(sp)
    sp.add_argument("--time", type=int, default=6)
    sp.add_argument("--length", type=int, default=5)

    sp = add("generic-sample", cmd_generic_sample,
             help="Monte Carlo generic-limit-set estimate along a direction")
    rule_arg(sp)
    sp.add_argument("--direction", default="0")
    sp.add_argument("--measure", default="uniform",
                    help="'uniform' or comma-separated rational weights")
    sp.add_argument("--samples", type=int, default=500)
    sp.add_argument("--t-min", type=int, default=40)
    sp.add_argument("--t-max", type=int, default=40)
    sp.add_argument("--window", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--figure", default=None)

    sp = add("mu-limit", cmd_mu_limit, help="exact Bernoulli word probabilities")
    rule_arg(sp)
    sp.add_argument("--measure", default="uniform")
    sp.add_argument("--length", type=int, default=1)
    sp.add_argument("--horizon", type=int, default=10)
    sp.add_argument("--figure", default=None)

    sp = add("classify", cmd_classify, help="six-class evidence report")
    rule_arg(sp)
    sp.add_argument("--grid", default=None,
                    help="comma-separated rational slopes (default: 1/4 grid)")
    sp.add_argument("--word-len", type=int, default=2)
    sp.add_argument("--horizon", type=int, default=50)
    sp.add_argument("--mc-samples", type=int, default=200)
    sp.add_argument("--mc-time", type=int, default=40)
    sp.add_argument("--mc-window", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("zoo", cmd_zoo, help="list or dump built-in rules")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--dump", default=None, metavar="NAME")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (DircaError, ValueError, OSError, SystemExit2) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
