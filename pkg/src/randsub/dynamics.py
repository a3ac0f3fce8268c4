"""Splitting pairs, entropy brackets, periodic censuses, zeta series, and
mixing probes.

Topological entropy is bracketed from two sides: every value
log C(ell) / ell of the complexity profile is a rigorous upper bound
(the limit is the infimum of the subadditive sequence), and a splitting
pair for some power k gives the rigorous lower bound
freq(a) * log(2) / (2 * N_k), where N_k bounds the realisation lengths of
the k-th power.  Periodic-point counts are certified only up to a
legality horizon; they upper-bound the true counts and feed the
truncated zeta series exp(sum_n count(n) z^n / n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_REALISATION_BUDGET,
    RandomSubstitution,
    Word,
    power_realisations,
)
from .errors import LengthOrderError, NotPrimitiveError
from .language import (
    DEFAULT_WINDOW_BUDGET,
    LanguageTable,
    complexity,
    legal_words,
)
from .matrices import is_primitive, perron_data, substitution_matrix


def is_strong_affix(u: Word, v: Word) -> bool:
    """True iff u is both a prefix and a suffix of v."""
    if len(u) > len(v):
        raise LengthOrderError("strong-affix test needs |u| <= |v|")
    return v.startswith(u) and v.endswith(u)


@dataclass(frozen=True)
class SplittingPair:
    letter: int
    power: int
    u: Word
    v: Word


@dataclass(frozen=True)
class SplittingReport:
    """First splitting pair (or None) per power k <= k_max and letter."""

    k_max: int
    pairs: dict[tuple[int, int], SplittingPair | None]

    def found(self) -> tuple[SplittingPair, ...]:
        return tuple(p for p in self.pairs.values() if p is not None)

    def first_for_power(self, k: int) -> SplittingPair | None:
        for (kk, _letter), pair in sorted(self.pairs.items()):
            if kk == k and pair is not None:
                return pair
        return None


def splitting_pairs(
    sub: RandomSubstitution, k_max: int, budget: int = DEFAULT_REALISATION_BUDGET
) -> SplittingReport:
    """Scan realisation pairs of every k-th letter image, in canonical
    enumeration order, for a pair (u, v) with |u| <= |v| and u not a
    strong affix of v."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    pairs: dict[tuple[int, int], SplittingPair | None] = {}
    for k in range(1, k_max + 1):
        for letter in range(sub.n_letters):
            words = [w for w, _p in power_realisations(sub, letter, k, budget=budget)]
            hit: SplittingPair | None = None
            for i in range(len(words)):
                if hit:
                    break
                for j in range(i + 1, len(words)):
                    u, v = words[i], words[j]
                    if len(u) > len(v):
                        u, v = v, u
                    if not is_strong_affix(u, v):
                        hit = SplittingPair(letter, k, u, v)
                        break
            pairs[(k, letter)] = hit
    return SplittingReport(k_max=k_max, pairs=pairs)


def max_realisation_lengths(sub: RandomSubstitution, k_max: int) -> list[int]:
    """N_k = the longest possible realisation of the k-th image of any
    letter, for k = 1..k_max (no enumeration; dynamic programming)."""
    n = sub.n_letters
    longest = [1] * n
    out = []
    for _ in range(k_max):
        longest = [
            max(sum(longest[ord(c)] for c in image) for image in rule.images)
            for rule in sub.rules
        ]
        out.append(max(longest))
    return out


@dataclass(frozen=True)
class EntropyBracket:
    """Two-sided entropy estimate.

    ``upper_profile`` lists (ell, log C(ell)/ell); each entry is a valid
    upper bound and ``upper`` is their minimum.  ``lower`` is the best
    splitting-pair bound (0 when no pair was found up to k_max, see
    ``lower_status``).  ``exact_known`` is an optional externally known
    value for bundled examples.
    """

    upper_profile: tuple[tuple[int, float], ...]
    upper: float
    lower: float
    lower_status: str
    lower_witness: SplittingPair | None
    exact_known: float | None = None
    exact_note: str | None = None


def entropy_bracket(
    sub: RandomSubstitution,
    ell_max: int,
    k_max: int,
    table: LanguageTable | None = None,
    budget: int = DEFAULT_REALISATION_BUDGET,
    window_budget: int = DEFAULT_WINDOW_BUDGET,
    exact_known: float | None = None,
    exact_note: str | None = None,
) -> EntropyBracket:
    if not is_primitive(sub):
        raise NotPrimitiveError("entropy bracket requires a primitive substitution")
    table = legal_words(sub, ell_max, table=table, budget=window_budget)
    counts = complexity(table, ell_max)
    profile = tuple(
        (ell, math.log(c) / ell) for ell, c in enumerate(counts, start=1)
    )
    # Primitivity was checked on the support; the expected matrix itself
    # may be degenerate, in which case some frequencies are 0 and the
    # corresponding letters simply contribute no lower bound.
    freq = perron_data(substitution_matrix(sub), require_primitive=False).right
    n_k = max_realisation_lengths(sub, k_max)
    report = splitting_pairs(sub, k_max, budget=budget)
    best = 0.0
    witness: SplittingPair | None = None
    for (k, letter), pair in sorted(report.pairs.items()):
        if pair is None:
            continue
        value = float(freq[letter]) * math.log(2.0) / (2.0 * n_k[k - 1])
        if value > best:
            best = value
            witness = pair
    status = "splitting-pair" if witness else f"no splitting pair found up to k_max={k_max}"
    return EntropyBracket(
        upper_profile=profile,
        upper=min(v for _ell, v in profile),
        lower=best,
        lower_status=status,
        lower_witness=witness,
        exact_known=exact_known,
        exact_note=exact_note,
    )


@dataclass(frozen=True)
class PeriodicCensus:
    """Counts of n-periodic sequences whose repetitions look legal out to
    the given horizon.  Counts are certified upper bounds for the true
    number of sequences fixed by the n-th shift power; every cyclic
    rotation of a root is counted as its own sequence."""

    n_max: int
    horizon: int
    counts: dict[int, int]
    roots: dict[int, tuple[Word, ...]]

    def count(self, n: int) -> int:
        return self.counts[n]


def periodic_census(
    sub: RandomSubstitution,
    n_max: int,
    horizon: int | None = None,
    table: LanguageTable | None = None,
    window_budget: int = DEFAULT_WINDOW_BUDGET,
) -> PeriodicCensus:
    """Count length-n roots u (n <= n_max) whose periodic repetition has
    every length-``horizon`` window legal; horizon defaults to 2*n_max
    and must be at least that."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if horizon is None:
        horizon = 2 * n_max
    if horizon < 2 * n_max:
        raise ValueError("horizon must be at least 2 * n_max")
    table = legal_words(sub, horizon, table=table, budget=window_budget)
    counts: dict[int, int] = {}
    roots: dict[int, tuple[Word, ...]] = {}
    for n in range(1, n_max + 1):
        reps = horizon // n + 2
        survivors = []
        for u in table.words(n):
            tiled = u * reps
            if all(tiled[i : i + horizon] in table for i in range(n)):
                survivors.append(u)
        counts[n] = len(survivors)
        roots[n] = tuple(survivors)
    return PeriodicCensus(n_max=n_max, horizon=horizon, counts=counts, roots=roots)


@dataclass(frozen=True)
class ZetaSeries:
    """Truncated power series of exp(sum_n count(n) z^n / n)."""

    n_max: int
    coefficients: tuple[float, ...]  # degree 0..n_max
    log_terms: tuple[float, ...]  # count(n)/n for n = 1..n_max


def series_exp(log_terms: list[float]) -> list[float]:
    """Coefficients of exp(g) for g = sum_n log_terms[n-1] z^n (g(0)=0),
    to the same truncation degree."""
    n_max = len(log_terms)
    coeff = [1.0] + [0.0] * n_max
    for n in range(1, n_max + 1):
        acc = 0.0
        for k in range(1, n + 1):
            acc += k * log_terms[k - 1] * coeff[n - k]
        coeff[n] = acc / n
    return coeff


def series_log(coefficients: list[float]) -> list[float]:
    """Inverse of series_exp: log of a series with constant term 1."""
    if not coefficients or abs(coefficients[0] - 1.0) > 1e-12:
        raise ValueError("series_log needs constant term 1")
    n_max = len(coefficients) - 1
    log_terms = [0.0] * n_max
    for n in range(1, n_max + 1):
        acc = n * coefficients[n]
        for k in range(1, n):
            acc -= k * log_terms[k - 1] * coefficients[n - k]
        log_terms[n - 1] = acc / n
    return log_terms


def zeta_series(census: PeriodicCensus, n_max: int) -> ZetaSeries:
    """Formal zeta series from a periodic census (census must cover n_max)."""
    if n_max > census.n_max:
        raise ValueError("census does not cover the requested degree")
    log_terms = [census.counts[n] / n for n in range(1, n_max + 1)]
    return ZetaSeries(
        n_max=n_max,
        coefficients=tuple(series_exp(log_terms)),
        log_terms=tuple(log_terms),
    )


def mixing_gaps(
    sub: RandomSubstitution,
    u: Word,
    v: Word,
    n_max: int,
    table: LanguageTable | None = None,
    window_budget: int = DEFAULT_WINDOW_BUDGET,
) -> tuple[int, ...]:
    """Gaps n <= n_max for which some word w of length n makes u w v
    legal.  Absence of a gap is rigorous relative to the substitution's
    language."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if not u or not v:
        raise ValueError("u and v must be non-empty")
    longest = len(u) + n_max + len(v)
    table = legal_words(sub, longest, table=table, budget=window_budget)
    if u not in table or v not in table:
        raise ValueError("u and v must be legal words")
    achievable = []
    for n in range(n_max + 1):
        total = len(u) + n + len(v)
        if any(w.startswith(u) and w.endswith(v) for w in table.words(total)):
            achievable.append(n)
    return tuple(achievable)
