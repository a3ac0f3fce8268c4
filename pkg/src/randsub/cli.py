"""Command-line interface.

Every subcommand reads a substitution from --spec FILE or a bundled
--example NAME and emits deterministic CSV-style text (comma separator,
'.' decimal point, LF line endings, header rows) to stdout or --out.

Exit codes: 0 success; 1 domain error (empty subshift, not primitive,
no convergence, ...); 2 usage or spec-format error; 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .core import (
    RandomSubstitution,
    format_float,
    parse_probability,
    parse_spec,
    serialize,
    with_probabilities,
)
from .dynamics import entropy_bracket, mixing_gaps, periodic_census, zeta_series
from .errors import (
    BudgetExceededError,
    RandsubError,
    SpecError,
)
from .examples import EXAMPLES, example_names, get_example
from .induced import (
    induced_matrix,
    induced_substitution,
    unique_ergodicity_scan,
    word_frequencies,
)
from .language import is_empty_subshift, legal_words
from .matrices import (
    is_irreducible,
    is_primitive,
    perron_data,
    substitution_matrix,
)
from .sampler import frequency_report

DOMAIN_EXIT = 1
USAGE_EXIT = 2
BUDGET_EXIT = 3


def _load_substitution(args: argparse.Namespace) -> RandomSubstitution:
    if args.example is not None:
        sub = get_example(args.example)
    else:
        with open(args.spec, "r", encoding="utf-8") as handle:
            sub = parse_spec(handle.read())
    if getattr(args, "probs", None):
        sub = with_probabilities(sub, _parse_assignment(args.probs))
    return sub


def _parse_assignment(text: str) -> dict[str, tuple[float, ...]]:
    """Parse ``a:0.5,0.5 b:1`` into {letter: probability vector}."""
    out: dict[str, tuple[float, ...]] = {}
    for group in text.split():
        if ":" not in group:
            raise SpecError(f"bad probability group {group!r}, expected letter:p1,p2,...")
        letter, values = group.split(":", 1)
        out[letter] = tuple(parse_probability(v) for v in values.split(","))
    return out


def _format_assignment(point: dict[str, tuple[float, ...]]) -> str:
    return ";".join(
        f"{letter}={'|'.join(format_float(p) for p in probs)}"
        for letter, probs in sorted(point.items())
    )


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.lines: list[str] = []

    def row(self, *cells) -> None:
        self.lines.append(",".join(str(c) for c in cells))

    def blank(self) -> None:
        self.lines.append("")

    def raw(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))

    def flush(self) -> None:
        payload = "\n".join(self.lines) + "\n"
        if self.path is None:
            sys.stdout.write(payload)
        else:
            with open(self.path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(payload)


def _matrix_rows(out: _Output, labels: list[str], matrix) -> None:
    out.row("", *labels)
    for label, row in zip(labels, matrix):
        out.row(label, *(format_float(float(x)) for x in row))


def _cmd_info(args) -> int:
    sub = _load_substitution(args)
    out = _Output(args.out)
    out.row("field", "value")
    out.row("letters", " ".join(sub.alphabet.letters))
    out.row("letter_count", sub.n_letters)
    out.row("max_image_len", sub.max_image_len)
    out.row("min_image_len", sub.min_image_len)
    out.row("deterministic", str(sub.is_deterministic).lower())
    out.row("degenerate", str(sub.is_degenerate).lower())
    primitive = is_primitive(sub)
    out.row("primitive", str(primitive).lower())
    out.row("irreducible", str(is_irreducible(sub)).lower())
    if primitive:
        out.row("empty_subshift", str(is_empty_subshift(sub)).lower())
    for rule in sub.rules:
        rhs = " | ".join(
            f"{sub.alphabet.format_word(w)}:{format_float(p)}"
            for w, p in zip(rule.images, rule.probabilities)
        )
        out.row(f"rule_{sub.alphabet.letters[rule.source]}", rhs)
    out.flush()
    return 0


def _cmd_language(args) -> int:
    sub = _load_substitution(args)
    table = legal_words(sub, args.lmax, budget=args.budget)
    out = _Output(args.out)
    out.row("length", "count")
    for ell in range(1, args.lmax + 1):
        out.row(ell, table.count(ell))
    if args.dump_words:
        out.blank()
        out.row("length", "word")
        for ell in range(1, args.lmax + 1):
            for word in table.words(ell):
                out.row(ell, sub.alphabet.format_word(word))
    out.flush()
    return 0


def _cmd_matrix(args) -> int:
    sub = _load_substitution(args)
    out = _Output(args.out)
    letters = list(sub.alphabet.letters)
    _matrix_rows(out, letters, substitution_matrix(sub))
    pf = perron_data(substitution_matrix(sub), tol=args.tol)
    out.blank()
    out.row("lambda", format_float(pf.lam))
    for letter, value in zip(letters, pf.right):
        out.row("right", letter, format_float(float(value)))
    for letter, value in zip(letters, pf.left):
        out.row("left", letter, format_float(float(value)))
    out.row("residual", format_float(pf.residual))
    out.flush()
    return 0


def _cmd_induced(args) -> int:
    sub = _load_substitution(args)
    ind = induced_substitution(sub, args.ell, budget=args.budget, window_budget=args.budget)
    out = _Output(args.out)
    out.raw(serialize(ind.sub))
    out.blank()
    _matrix_rows(out, list(ind.sub.alphabet.letters), induced_matrix(ind))
    out.flush()
    return 0


def _cmd_freq(args) -> int:
    sub = _load_substitution(args)
    freq = word_frequencies(
        sub, args.ell, tol=args.tol, budget=args.budget, window_budget=args.budget
    )
    out = _Output(args.out)
    out.row("word", "frequency")
    for word, value in zip(freq.words, freq.values):
        out.row(sub.alphabet.format_word(word), format_float(value))
    out.flush()
    return 0


def _cmd_ergodicity(args) -> int:
    sub = _load_substitution(args)
    grid: list[dict[str, tuple[float, ...]]] = []
    skipped = 0
    with open(args.grid, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            point = _parse_assignment(line)
            probed = with_probabilities(sub, point)
            if probed.is_degenerate:
                skipped += 1  # scan theory covers non-degenerate points only
                continue
            grid.append(point)
    if skipped:
        print(
            f"warning: skipped {skipped} degenerate grid point(s); the scan "
            "only covers non-degenerate probabilities",
            file=sys.stderr,
        )
    verdict = unique_ergodicity_scan(sub, args.lmax, grid, tol=args.tol, threads=args.threads)
    out = _Output(args.out)
    out.row("field", "value")
    out.row("verdict", verdict.status)
    out.row("ell_max", verdict.ell_max)
    out.row("grid_points", len(verdict.grid))
    out.row("tol", format_float(verdict.tol))
    if verdict.witness is not None:
        w = verdict.witness
        out.row("witness_ell", w.ell)
        out.row("witness_word", sub.alphabet.format_word(w.word))
        out.row("witness_low_point", _format_assignment(dict(verdict.grid[w.low_point])))
        out.row("witness_low_value", format_float(w.low_value))
        out.row("witness_high_point", _format_assignment(dict(verdict.grid[w.high_point])))
        out.row("witness_high_value", format_float(w.high_value))
    out.flush()
    return 0


def _cmd_entropy(args) -> int:
    sub = _load_substitution(args)
    exact = exact_note = None
    if args.example is not None:
        spec = EXAMPLES[args.example]
        exact, exact_note = spec.exact_entropy, spec.entropy_note
    bracket = entropy_bracket(
        sub,
        args.lmax,
        args.kmax,
        budget=args.budget,
        window_budget=args.budget,
        exact_known=exact,
        exact_note=exact_note,
    )
    out = _Output(args.out)
    out.row("ell", "upper")
    for ell, value in bracket.upper_profile:
        out.row(ell, format_float(value))
    out.blank()
    out.row("field", "value")
    out.row("upper", format_float(bracket.upper))
    out.row("lower", format_float(bracket.lower))
    out.row("lower_status", bracket.lower_status)
    if bracket.lower_witness is not None:
        w = bracket.lower_witness
        out.row("lower_letter", sub.alphabet.letters[w.letter])
        out.row("lower_power", w.power)
        out.row("lower_pair_u", sub.alphabet.format_word(w.u))
        out.row("lower_pair_v", sub.alphabet.format_word(w.v))
    if bracket.exact_known is not None:
        out.row("exact", format_float(bracket.exact_known))
        out.row("exact_note", bracket.exact_note or "")
    out.flush()
    return 0


def _cmd_periodic(args) -> int:
    sub = _load_substitution(args)
    census = periodic_census(sub, args.nmax, args.horizon, window_budget=args.budget)
    out = _Output(args.out)
    out.row("n", "count")
    for n in range(1, args.nmax + 1):
        out.row(n, census.counts[n])
    out.flush()
    return 0


def _cmd_zeta(args) -> int:
    sub = _load_substitution(args)
    census = periodic_census(sub, args.nmax, args.horizon, window_budget=args.budget)
    series = zeta_series(census, args.nmax)
    out = _Output(args.out)
    out.row("degree", "coefficient")
    for degree, coeff in enumerate(series.coefficients):
        out.row(degree, format_float(coeff))
    out.flush()
    return 0


def _cmd_mixing(args) -> int:
    sub = _load_substitution(args)
    u = sub.alphabet.word(args.u)
    v = sub.alphabet.word(args.v)
    gaps = mixing_gaps(sub, u, v, args.nmax, window_budget=args.budget)
    out = _Output(args.out)
    out.row("gap")
    for gap in gaps:
        out.row(gap)
    out.flush()
    return 0


def _cmd_sample(args) -> int:
    sub = _load_substitution(args)
    report = frequency_report(
        sub, args.ell, args.depth, args.seed, start_letter=args.letter
    )
    out = _Output(args.out)
    out.row("word", "empirical", "predicted", "abs_dev")
    for word, emp, pred, dev in report.rows():
        out.row(
            sub.alphabet.format_word(word),
            format_float(emp),
            format_float(pred),
            format_float(dev),
        )
    out.blank()
    out.row("field", "value")
    out.row("start_letter", sub.alphabet.letters[report.start_letter])
    out.row("depth", report.depth)
    out.row("ell", report.ell)
    out.row("seed", report.seed)
    out.row("sample_length", report.sample_length)
    out.row("max_abs_deviation", format_float(report.max_abs_deviation))
    out.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randsub",
        description="Random substitution subshifts: languages, matrices, "
        "frequencies, entropy, periodic points, zeta series, mixing, sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", help="path to a substitution spec file")
    source.add_argument(
        "--example", choices=example_names(), help="bundled example name"
    )
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument(
        "--budget", type=int, default=10**7, help="work budget for enumerations"
    )
    common.add_argument(
        "--tol", type=float, default=None, help="tolerance override (context specific)"
    )
    common.add_argument(
        "--threads", type=int, default=1, help="worker threads for independent sweeps"
    )
    common.add_argument(
        "--probs",
        help="probability override, e.g. 'a:0.5,0.5 b:1' (fractions allowed)",
    )

    p = sub.add_parser("info", parents=[common], help="substitution summary and flags")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("language", parents=[common], help="legal-word counts per length")
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--dump-words", action="store_true")
    p.set_defaults(func=_cmd_language)

    p = sub.add_parser("matrix", parents=[common], help="substitution matrix and eigendata")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("induced", parents=[common], help="induced substitution and matrix")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=_cmd_induced)

    p = sub.add_parser("freq", parents=[common], help="word frequencies at one window length")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=_cmd_freq)

    p = sub.add_parser("ergodicity", parents=[common], help="unique-ergodicity scan over a grid")
    p.add_argument("--grid", required=True, help="file with one probability assignment per line")
    p.add_argument("--lmax", type=int, default=2)
    p.set_defaults(func=_cmd_ergodicity)

    p = sub.add_parser("entropy", parents=[common], help="entropy bracket")
    p.add_argument("--lmax", type=int, default=8)
    p.add_argument("--kmax", type=int, default=2)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("periodic", parents=[common], help="periodic-point census")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=_cmd_periodic)

    p = sub.add_parser("zeta", parents=[common], help="truncated zeta series from the census")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("mixing", parents=[common], help="achievable gaps between two words")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=_cmd_mixing)

    p = sub.add_parser("sample", parents=[common], help="seeded sample vs predicted frequencies")
    p.add_argument("--letter", default=None)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ell", type=int, default=1)
    p.set_defaults(func=_cmd_sample)

    return parser


_TOL_DEFAULTS = {
    _cmd_matrix: 1e-12,
    _cmd_freq: 1e-12,
    _cmd_ergodicity: 1e-6,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if args.tol is None:
        args.tol = _TOL_DEFAULTS.get(args.func, 1e-12)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_EXIT
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except RandsubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT


if __name__ == "__main__":
    sys.exit(main())
