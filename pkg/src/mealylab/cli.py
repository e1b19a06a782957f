"""Command-line front end.

Every subcommand reads automata (and marked groups) from the strict text
formats, prints byte-deterministic output, and distinguishes failure modes
through the exit code: 0 when the tool ran (even if the property it
checked is false), 2 when an input is malformed or a precondition fails
(the message names the witness), 3 when --strict is set and a
budget-limited search came back unknown, and 64 for usage errors.

Budgeted subcommands can write a machine-readable JSON report next to the
text output, and the search/profile subcommands can render a matplotlib
figure to a file alongside the delimited data.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import distortion as dist
from . import engine
from . import quotient as quo
from .automaton import (
    disjoint_union,
    dual_automaton,
    format_automaton,
    inverse_automaton,
    read_automaton,
    subgroup_closure_automaton,
    symmetrize,
    validate,
)
from .errors import MealyError
from .words import format_word, parse_word

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_UNKNOWN = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _write_report(path, payload: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")


def _flag(value: bool) -> str:
    return "true" if value else "false"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check(args):
    automaton = read_automaton(args.automaton)
    report = validate(automaton)
    print("automaton: %s" % automaton.name)
    for flag, label in (
        ("invertible", "invertible"),
        ("reversible", "reversible"),
        ("delta_bijective", "delta-bijective"),
    ):
        value = getattr(report, flag)
        if value:
            print("%s: true" % label)
        else:
            print("%s: false (witness: %s)" % (label, report.witnesses[flag]))
    print("bireversible: %s" % _flag(report.bireversible))
    return EXIT_OK


def cmd_invert(args):
    _emit(format_automaton(inverse_automaton(read_automaton(args.automaton))), args.output)
    return EXIT_OK


def cmd_dual(args):
    _emit(format_automaton(dual_automaton(read_automaton(args.automaton))), args.output)
    return EXIT_OK


def cmd_union(args):
    automata = [read_automaton(p) for p in args.automata]
    _emit(format_automaton(disjoint_union(*automata)), args.output)
    return EXIT_OK


def cmd_symmetrize(args):
    _emit(format_automaton(symmetrize(read_automaton(args.automaton))), args.output)
    return EXIT_OK


def cmd_subgroup(args):
    automaton = read_automaton(args.automaton)
    generators = [parse_word(w) for w in args.words]
    _emit(format_automaton(subgroup_closure_automaton(automaton, generators)), args.output)
    return EXIT_OK


def cmd_nf(args):
    from .rewriting import LETTERS_FIRST, normal_form

    automaton = read_automaton(args.automaton)
    pair = normal_form(automaton, parse_word(args.word), args.orient)
    state = format_word(pair.state_part, sep="")
    letters = format_word(pair.letter_part, sep="")
    if args.orient == LETTERS_FIRST:
        print("[%s | %s]" % (letters, state))
    else:
        print("[%s | %s]" % (state, letters))
    return EXIT_OK


def cmd_act(args):
    from .rewriting import act_state_on_word

    automaton = read_automaton(args.automaton)
    image = act_state_on_word(
        automaton, parse_word(args.state_word), parse_word(args.word)
    )
    print(format_word(image))
    return EXIT_OK


def cmd_equal(args):
    automaton = read_automaton(args.automaton)
    print(_flag(engine.equal(automaton, parse_word(args.left), parse_word(args.right))))
    return EXIT_OK


def cmd_ball(args):
    automaton = read_automaton(args.automaton)
    growth = engine.ball(automaton, args.radius, budget=args.budget)
    print("automaton: %s" % automaton.name)
    print("generators: %d" % (2 * automaton.n_states))
    print("radius size")
    for r, size in enumerate(growth.sizes):
        print("%d %d" % (r, size))
    status = "complete" if growth.complete else (
        "budget-exhausted after radius %d" % growth.completed_radius
    )
    print("status: %s" % status)
    _write_report(
        args.report,
        {
            "automaton": automaton.name,
            "generators": 2 * automaton.n_states,
            "radii": list(range(len(growth.sizes))),
            "sizes": list(growth.sizes),
            "status": status,
            "budget": args.budget,
        },
    )
    if args.plot:
        _plot_growth(growth, args.plot)
    if args.strict and not growth.complete:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_enumerate(args):
    automaton = read_automaton(args.automaton)
    result = engine.try_enumerate(automaton, budget=args.budget)
    print("automaton: %s" % automaton.name)
    print("status: %s" % result.status)
    if result.finite:
        print("order: %d" % result.order)
    else:
        print("explored: %d elements (budget %d)" % (result.explored, result.budget))
    _write_report(
        args.report,
        {
            "automaton": automaton.name,
            "status": result.status,
            "order": result.order,
            "explored": result.explored,
            "budget": result.budget,
        },
    )
    if args.strict and not result.finite:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_finiteness(args):
    automaton = read_automaton(args.automaton)
    report = engine.cross_check_finiteness(automaton, budget=args.budget)
    print("automaton: %s" % automaton.name)
    for label, side in (("primal", report.primal), ("dual", report.dual)):
        if side.finite:
            print("%s: finite, order %d" % (label, side.order))
        else:
            print("%s: unknown (budget %d)" % (label, side.budget))
    print("verdict: %s" % report.verdict)
    if args.strict and not (report.primal.finite and report.dual.finite):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_compat(args):
    automaton = read_automaton(args.automaton)
    group = quo.read_marked_group(args.group)
    report = quo.is_compatible(automaton, group)
    if report:
        print("compatible: true")
    else:
        print(
            "compatible: false (witness: state %s, word %s)"
            % (report.state.token(), format_word(report.kernel_word))
        )
    return EXIT_OK


def cmd_quotient_dot(args):
    group = quo.read_marked_group(args.group)
    _emit(quo.build_quotient_graph(group).to_dot(), args.output)
    return EXIT_OK


def cmd_mns_verify(args):
    automaton = read_automaton(args.automaton)
    group = quo.read_marked_group(args.group)
    report = quo.verify_mns_instance(automaton, group, cap=args.cap)
    print("automaton: %s" % report.automaton_name)
    print("group: %s" % report.group_name)
    print("aut1: %d" % report.aut1_count)
    print("descended: %d" % report.descended_count)
    print("descended-subgroup-order: %d" % report.subgroup_order)
    print("contained: %s" % _flag(report.contained))
    return EXIT_OK


def cmd_order(args):
    automaton = read_automaton(args.automaton)
    result = engine.element_order(
        automaton, parse_word(args.word), args.bound, certify_depth=args.certify_depth
    )
    if result.is_finite:
        print("order: %d" % result.order)
    elif result.status == "exceeds-bound":
        print("order: exceeds bound %d (%s)" % (result.bound, result.certificate))
    else:
        print("order: unknown (bound %d)" % result.bound)
    if args.strict and result.status == "unknown":
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_geodesic(args):
    automaton = read_automaton(args.automaton)
    length = dist.geodesic_length(
        automaton, parse_word(args.word), args.max_radius, budget=args.budget
    )
    if length is None:
        print("length: unknown (max radius %d)" % args.max_radius)
        return EXIT_UNKNOWN if args.strict else EXIT_OK
    print("length: %d" % length)
    return EXIT_OK


def cmd_distortion(args):
    automaton = read_automaton(args.automaton)
    profile = dist.power_profile(
        automaton,
        parse_word(args.word),
        args.k,
        args.n_max,
        args.max_radius,
        budget=args.budget,
    )
    print("n kn length ratio")
    for n, kn, length in profile.entries:
        if length is None:
            print("%d %d ? ?" % (n, kn))
        else:
            print("%d %d %d %.4f" % (n, kn, length, kn / length))
    print("c-est: %s" % ("?" if profile.c_est is None else "%.4f" % profile.c_est))
    print("sublinear: %s" % _flag(profile.sublinear))
    if args.data:
        lines = [
            "# kn length",
        ]
        for _, kn, length in profile.entries:
            if length is not None:
                lines.append("%d %d" % (kn, length))
        _emit("\n".join(lines) + "\n", args.data)
    if args.plot:
        _plot_profile(profile, args.plot)
    if args.strict and any(length is None for _, _, length in profile.entries):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_orbit(args):
    automaton = read_automaton(args.automaton)
    sample = dist.orbit_language(
        automaton, parse_word(args.word), args.n_max, args.gamma
    )
    print("seed: %s" % format_word(sample.seed))
    print("words: %d" % len(sample.words))
    for w in sample.words:
        print(format_word(w))
    return EXIT_OK


def cmd_free_monoid(args):
    automaton = read_automaton(args.automaton)
    candidate = dist.free_submonoid_search(
        automaton,
        parse_word(args.word),
        n_max=args.n_max,
        gamma_len_max=args.gamma,
        order_bound=args.order_bound,
        certify_depth=args.certify_depth,
    )
    if candidate is None:
        print("result: not-found (within the search bounds)")
        return EXIT_UNKNOWN if args.strict else EXIT_OK
    print("x1: %s" % format_word(candidate.x1))
    print("x2: %s" % format_word(candidate.x2))
    print("certified-depth: %d" % candidate.certified_up_to)
    print("products-checked: %d" % candidate.products_checked)
    return EXIT_OK


# ---------------------------------------------------------------------------
# plots
# ---------------------------------------------------------------------------


def _plot_growth(growth: engine.GrowthSequence, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(range(len(growth.sizes)), growth.sizes, marker="o")
    ax.set_xlabel("radius")
    ax.set_ylabel("ball size")
    ax.set_title("growth of %s" % growth.automaton_name)
    if max(growth.sizes) > 10 * max(1, growth.sizes[0]):
        ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _plot_profile(profile: dist.PowerProfile, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [kn for _, kn, length in profile.entries if length is not None]
    ys = [length for _, _, length in profile.entries if length is not None]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(xs, ys, marker="o", label="geodesic length")
    if xs:
        ax.plot(xs, xs, linestyle="--", label="kn (undistorted reference)")
    ax.set_xlabel("kn")
    ax.set_ylabel("length")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mealylab",
        description="Workbench for Mealy automata and the groups they generate.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "report the property hierarchy of an automaton")
    p.add_argument("automaton")

    for name, func, help_text in (
        ("invert", cmd_invert, "inverse automaton (states relabeled q^-1)"),
        ("dual", cmd_dual, "dual automaton (state/letter roles exchanged)"),
        ("symmetrize", cmd_symmetrize, "adjoin formal inverses as states/letters"),
    ):
        p = add(name, func, help_text)
        p.add_argument("automaton")
        p.add_argument("-o", "--output", help="write the automaton here instead of stdout")

    p = add("union", cmd_union, "disjoint union over a common alphabet")
    p.add_argument("automata", nargs="+")
    p.add_argument("-o", "--output")

    p = add("subgroup", cmd_subgroup, "closure automaton of state words")
    p.add_argument("automaton")
    p.add_argument("words", nargs="+", help="generating state words, e.g. 'a b^-1'")
    p.add_argument("-o", "--output")

    p = add("nf", cmd_nf, "normal form of a mixed word")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument(
        "--orient",
        choices=("states-first", "letters-first"),
        default="letters-first",
    )

    p = add("act", cmd_act, "act with a state word on a letter word")
    p.add_argument("automaton")
    p.add_argument("--state-word", required=True)
    p.add_argument("--word", required=True)

    p = add("equal", cmd_equal, "exact equality of two state words in the group")
    p.add_argument("automaton")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("ball", cmd_ball, "ball sizes of the word metric")
    p.add_argument("automaton")
    p.add_argument("-r", "--radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--report", help="write a JSON report here")
    p.add_argument("--plot", help="render the growth curve to this image file")
    p.add_argument("--strict", action="store_true")

    p = add("enumerate", cmd_enumerate, "finiteness semi-decision")
    p.add_argument("automaton")
    p.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    p.add_argument("--report")
    p.add_argument("--strict", action="store_true")

    p = add("finiteness", cmd_finiteness, "primal/dual finiteness cross-check")
    p.add_argument("automaton")
    p.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    p.add_argument("--strict", action="store_true")

    p = add("compat", cmd_compat, "compatibility with a marked group")
    p.add_argument("automaton")
    p.add_argument("group")

    p = add("quotient-dot", cmd_quotient_dot, "DOT export of the quotient graph")
    p.add_argument("group")
    p.add_argument("-o", "--output")

    p = add("mns-verify", cmd_mns_verify, "descended automorphisms vs Aut1")
    p.add_argument("automaton")
    p.add_argument("group")
    p.add_argument("--cap", type=int, default=64)

    p = add("order", cmd_order, "bounded element-order detection")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument("--bound", type=int, default=16)
    p.add_argument("--certify-depth", type=int, default=0)
    p.add_argument("--strict", action="store_true")

    p = add("geodesic", cmd_geodesic, "exact word-metric length")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument("--max-radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--strict", action="store_true")

    p = add("distortion", cmd_distortion, "power profile of a cyclic subgroup")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-n", "--n-max", type=int, default=5)
    p.add_argument("--max-radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--data", help="write a gnuplot-ready two-column file here")
    p.add_argument("--plot", help="render the profile to this image file")
    p.add_argument("--strict", action="store_true")

    p = add("orbit", cmd_orbit, "orbit language sample of a seed word")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument("-n", "--n-max", type=int, default=2)
    p.add_argument("--gamma", type=int, default=2, help="state-word length bound")

    p = add("free-monoid", cmd_free_monoid, "bounded free-submonoid search")
    p.add_argument("automaton")
    p.add_argument("--word", required=True)
    p.add_argument("-n", "--n-max", type=int, default=3)
    p.add_argument("--gamma", type=int, default=2)
    p.add_argument("--order-bound", type=int, default=8)
    p.add_argument("--certify-depth", type=int, default=3)
    p.add_argument("--strict", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MealyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
