"""Exhaustive generation and classification of all dice words at fixed n.

The scan is the package's ground truth: every closed-form count elsewhere
can be rediscovered here.  Two engines share one contract:

* a streaming engine that visits every complete word in lexicographic
  order, classifying each and feeding filter matches to a consumer;
* a statistics engine that walks the same prefix tree but collapses the
  tail as soon as one letter is exhausted.  With two letters left, two of
  the three win counts are already fixed and the third varies only by the
  number of letter inversions in the tail, whose exact distribution is a
  precomputed table (the Gaussian-binomial coefficients).  This prunes the
  walk to prefixes where all three letters remain, which is why n = 6
  (17,153,136 words) finishes in seconds on one worker.

Both engines produce identical statistics; the parallel path partitions
the prefix tree and merges per-partition results in lexicographic order,
so stats are independent of the worker count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .core import (
    DiceError,
    DomainError,
    PairCounts,
    Verdict,
    classify,
    verdict_from_counts,
)
from .rewriting import similarity_class

MAX_SIDES = 7
LONG_RUN_SIDES = 7  # n = 7 scans 399,072,960 words; opt-in only
WITNESS_CAP = 10
DEFAULT_BFS_BUDGET = 2_000_000

STATS_FORMAT_VERSION = 1


class CacheFormatError(DiceError):
    """A stats file is malformed or carries an unknown format version."""


class CacheIntegrityError(DiceError):
    """A stats file's witnesses fail re-verification."""


@dataclass(frozen=True)
class EnumFilter:
    """Conjunctive word filter: set flags that matching words must have."""

    balanced: bool = False
    nontransitive: bool = False
    fair: bool = False
    counts: tuple[int, int, int] | None = None

    def matches(self, verdict: Verdict) -> bool:
        if self.balanced and not verdict.balanced:
            return False
        if self.nontransitive and not verdict.nontransitive:
            return False
        if self.fair and not verdict.fair:
            return False
        if self.counts is not None and verdict.counts.as_tuple() != self.counts:
            return False
        return True


@dataclass(frozen=True)
class EnumStats:
    """Aggregate results of one exhaustive scan."""

    n: int
    total_words: int
    count_balanced: int
    count_balanced_nontransitive: int
    count_fair: int
    max_prob: Fraction | None
    max_witnesses: tuple[str, ...]
    histogram: dict[Fraction, int]


def total_word_count(n: int) -> int:
    """(3n)! / (n!)^3, the number of complete words on n sides."""
    return math.factorial(3 * n) // math.factorial(n) ** 3


def _check_sides(n: int, long_run: bool) -> None:
    if not 1 <= n <= MAX_SIDES:
        raise DomainError(f"enumeration supports 1 <= n <= {MAX_SIDES}, got {n}")
    if n >= LONG_RUN_SIDES and not long_run:
        raise DomainError(
            f"n={n} scans {total_word_count(n):,} words; pass long_run=True "
            "to confirm"
        )


@lru_cache(maxsize=None)
def _inversion_table(limit: int) -> dict[tuple[int, int], tuple[int, ...]]:
    """table[(a, b)][t] counts interleavings of a L-items and b R-items
    with exactly t (L before R) pairs.  Row sums are C(a+b, a)."""
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for a in range(limit + 1):
        for b in range(limit + 1):
            size = a * b + 1
            if a == 0 or b == 0:
                table[(a, b)] = tuple([1] + [0] * (size - 1))
                continue
            row = [0] * size
            first_l = table[(a - 1, b)]
            first_r = table[(a, b - 1)]
            for t in range(size):
                total = 0
                if t >= b and t - b < len(first_l):
                    total += first_l[t - b]
                if t < len(first_r):
                    total += first_r[t]
                row[t] = total
            table[(a, b)] = tuple(row)
    return table


def _tail_witnesses(
    case: str,
    ra: int,
    rb: int,
    rc: int,
    t: int,
    table: dict[tuple[int, int], tuple[int, ...]],
    limit: int,
) -> list[str]:
    """Lexicographically-first tails with the required inversion count.

    case names the exhausted letter; the other two letters interleave with
    t inversions as counted by the matching statistics branch.
    """
    out: list[str] = []
    buf: list[str] = []

    def feasible(a: int, b: int, tt: int) -> int:
        if tt < 0 or tt > a * b:
            return 0
        return table[(a, b)][tt]

    if case == "A":
        # letters B (R-type) and C (L-type); t counts C-before-B pairs
        def rec(b: int, c: int, tt: int) -> None:
            if len(out) >= limit:
                return
            if b == 0 and c == 0:
                out.append("".join(buf))
                return
            if b and feasible(c, b - 1, tt):
                buf.append("B")
                rec(b - 1, c, tt)
                buf.pop()
            if c and feasible(c - 1, b, tt - b):
                buf.append("C")
                rec(b, c - 1, tt - b)
                buf.pop()

        rec(rb, rc, t)
    elif case == "B":
        # letters A (L-type) and C (R-type); t counts A-before-C pairs
        def rec(a: int, c: int, tt: int) -> None:
            if len(out) >= limit:
                return
            if a == 0 and c == 0:
                out.append("".join(buf))
                return
            if a and feasible(a - 1, c, tt - c):
                buf.append("A")
                rec(a - 1, c, tt - c)
                buf.pop()
            if c and feasible(a, c - 1, tt):
                buf.append("C")
                rec(a, c - 1, tt)
                buf.pop()

        rec(ra, rc, t)
    else:
        # letters A (R-type) and B (L-type); t counts B-before-A pairs
        def rec(a: int, b: int, tt: int) -> None:
            if len(out) >= limit:
                return
            if a == 0 and b == 0:
                out.append("".join(buf))
                return
            if a and feasible(b, a - 1, tt):
                buf.append("A")
                rec(a - 1, b, tt)
                buf.pop()
            if b and feasible(b - 1, a, tt - a):
                buf.append("B")
                rec(a, b - 1, tt - a)
                buf.pop()

        rec(ra, rb, t)
    return out


def _stats_scan(n: int, prefix: str) -> tuple[int, dict[int, int], int, tuple[str, ...]]:
    """Collapsed statistics scan below one prefix.

    Returns (total_words, balanced histogram keyed by the common count,
    best non-transitive count or -1, lexicographically-first witnesses).
    """
    table = _inversion_table(n)
    sq = n * n
    comb = math.comb
    total = 0
    hist: dict[int, int] = {}
    best = -1
    witnesses: list[str] = []
    path = list(prefix) + [""] * (3 * n - len(prefix))

    ra = rb = rc = n
    ab = bc = ca = 0
    for ch in prefix:
        if ch == "A":
            ab += n - rb
            ra -= 1
        elif ch == "B":
            bc += n - rc
            rb -= 1
        else:
            ca += n - ra
            rc -= 1
        if min(ra, rb, rc) < 0:
            return 0, {}, -1, ()

    def boundary(depth: int, ra: int, rb: int, rc: int, ab: int, bc: int, ca: int) -> None:
        nonlocal total, best
        if ra == 0:
            words_here = comb(rb + rc, rb)
            fixed1 = ab
            fixed2 = ca + rc * n
            base = bc + rb * (n - rc)
            pairs_max = rb * rc
            key = (rc, rb)
            case = "A"
        elif rb == 0:
            words_here = comb(ra + rc, ra)
            fixed1 = ab + ra * n
            fixed2 = bc
            base = ca + rc * (n - ra)
            pairs_max = ra * rc
            key = (ra, rc)
            case = "B"
        else:
            words_here = comb(ra + rb, ra)
            fixed1 = bc + rb * n
            fixed2 = ca
            base = ab + ra * (n - rb)
            pairs_max = ra * rb
            key = (rb, ra)
            case = "C"
        total += words_here
        if fixed1 != fixed2:
            return
        t = fixed1 - base
        if t < 0 or t > pairs_max:
            return
        cnt = table[key][t]
        if not cnt:
            return
        hist[fixed1] = hist.get(fixed1, 0) + cnt
        if 2 * fixed1 > sq:
            if fixed1 > best:
                best = fixed1
                witnesses.clear()
            if fixed1 == best and len(witnesses) < WITNESS_CAP:
                head = "".join(path[:depth])
                need = WITNESS_CAP - len(witnesses)
                for tail in _tail_witnesses(case, ra, rb, rc, t, table, need):
                    witnesses.append(head + tail)

    def rec(depth: int, ra: int, rb: int, rc: int, ab: int, bc: int, ca: int) -> None:
        if ra == 0 or rb == 0 or rc == 0:
            boundary(depth, ra, rb, rc, ab, bc, ca)
            return
        path[depth] = "A"
        rec(depth + 1, ra - 1, rb, rc, ab + (n - rb), bc, ca)
        path[depth] = "B"
        rec(depth + 1, ra, rb - 1, rc, ab, bc + (n - rc), ca)
        path[depth] = "C"
        rec(depth + 1, ra, rb, rc - 1, ab, bc, ca + (n - ra))

    rec(len(prefix), ra, rb, rc, ab, bc, ca)
    return total, hist, best, tuple(witnesses)


def _stream_scan(
    n: int,
    prefix: str,
    filt: EnumFilter | None,
    consumer: Callable[[str, Verdict], None] | None,
    collect: bool,
) -> tuple[int, dict[int, int], int, tuple[str, ...], tuple[str, ...]]:
    """Full enumeration below one prefix, visiting every word."""
    sq = n * n
    total = 0
    hist: dict[int, int] = {}
    best = -1
    witnesses: list[str] = []
    matches: list[str] = []
    path = list(prefix) + [""] * (3 * n - len(prefix))

    ra = rb = rc = n
    ab0 = bc0 = ca0 = 0
    for ch in prefix:
        if ch == "A":
            ab0 += n - rb
            ra -= 1
        elif ch == "B":
            bc0 += n - rc
            rb -= 1
        else:
            ca0 += n - ra
            rc -= 1
        if min(ra, rb, rc) < 0:
            return 0, {}, -1, (), ()

    def leaf(ab: int, bc: int, ca: int) -> None:
        nonlocal total, best
        total += 1
        balanced = ab == bc == ca
        if balanced:
            hist[ab] = hist.get(ab, 0) + 1
            if 2 * ab > sq:
                if ab > best:
                    best = ab
                    witnesses.clear()
                if ab == best and len(witnesses) < WITNESS_CAP:
                    witnesses.append("".join(path))
        if filt is not None and (consumer is not None or collect):
            counts = PairCounts(n=n, ab=ab, bc=bc, ca=ca)
            verdict = verdict_from_counts(counts)
            if filt.matches(verdict):
                word = "".join(path)
                if collect:
                    matches.append(word)
                else:
                    consumer(word, verdict)

    def rec(depth: int, ra: int, rb: int, rc: int, ab: int, bc: int, ca: int) -> None:
        if ra == rb == rc == 0:
            leaf(ab, bc, ca)
            return
        if ra:
            path[depth] = "A"
            rec(depth + 1, ra - 1, rb, rc, ab + (n - rb), bc, ca)
        if rb:
            path[depth] = "B"
            rec(depth + 1, ra, rb - 1, rc, ab, bc + (n - rc), ca)
        if rc:
            path[depth] = "C"
            rec(depth + 1, ra, rb, rc - 1, ab, bc, ca + (n - ra))

    rec(len(prefix), ra, rb, rc, ab0, bc0, ca0)
    return total, hist, best, tuple(witnesses), tuple(matches)


def _stats_task(args: tuple[int, str]) -> tuple[int, dict[int, int], int, tuple[str, ...]]:
    return _stats_scan(*args)


def _stream_task(
    args: tuple[int, str, EnumFilter | None]
) -> tuple[int, dict[int, int], int, tuple[str, ...], tuple[str, ...]]:
    n, prefix, filt = args
    return _stream_scan(n, prefix, filt, None, collect=True)


def _partition_prefixes(n: int, workers: int) -> list[str]:
    """Lexicographic prefixes splitting the word tree into >= 64*workers
    partitions (letter counts within each prefix never exceed n)."""
    if workers <= 1:
        return [""]
    want = 64 * workers
    depth = 1
    while 3**depth < want and depth < 3 * n:
        depth += 1
    prefixes: list[str] = []

    def rec(prefix: str, a: int, b: int, c: int) -> None:
        if len(prefix) == depth:
            prefixes.append(prefix)
            return
        if a < n:
            rec(prefix + "A", a + 1, b, c)
        if b < n:
            rec(prefix + "B", a, b + 1, c)
        if c < n:
            rec(prefix + "C", a, b, c + 1)

    rec("", 0, 0, 0)
    return prefixes


def _merge(
    parts: list[tuple],
) -> tuple[int, dict[int, int], int, list[str], list[str]]:
    total = 0
    hist: dict[int, int] = {}
    best = -1
    witnesses: list[str] = []
    matches: list[str] = []
    for part in parts:
        p_total, p_hist, p_best, p_wit = part[:4]
        total += p_total
        for value, cnt in p_hist.items():
            hist[value] = hist.get(value, 0) + cnt
        if p_best > best:
            best = p_best
            witnesses = list(p_wit[:WITNESS_CAP])
        elif p_best == best and p_best >= 0 and len(witnesses) < WITNESS_CAP:
            witnesses.extend(p_wit[: WITNESS_CAP - len(witnesses)])
        if len(part) > 4:
            matches.extend(part[4])
    return total, hist, best, witnesses, matches


def _build_stats(
    n: int, total: int, hist: dict[int, int], best: int, witnesses: list[str]
) -> EnumStats:
    sq = n * n
    count_balanced = sum(hist.values())
    count_fair = hist.get(sq // 2, 0) if sq % 2 == 0 else 0
    count_bnt = sum(cnt for value, cnt in hist.items() if 2 * value > sq)
    return EnumStats(
        n=n,
        total_words=total,
        count_balanced=count_balanced,
        count_balanced_nontransitive=count_bnt,
        count_fair=count_fair,
        max_prob=Fraction(best, sq) if best >= 0 else None,
        max_witnesses=tuple(witnesses),
        histogram={Fraction(v, sq): c for v, c in sorted(hist.items())},
    )


def enumerate_words(
    n: int,
    filt: EnumFilter | None = None,
    consumer: Callable[[str, Verdict], None] | None = None,
    workers: int = 1,
    long_run: bool = False,
) -> EnumStats:
    """Scan every complete word on n sides exactly once and classify it.

    Words matching filt (conjunctive flags) stream to the consumer in
    lexicographic order; with workers > 1 matches are collected per
    partition and delivered serialized after the merge.  Statistics are
    identical for any worker count.  Without a consumer the collapsed
    statistics engine is used; it never materializes non-witness words.
    """
    _check_sides(n, long_run)
    streaming = consumer is not None
    if streaming and filt is None:
        filt = EnumFilter()  # match everything
    if workers <= 1:
        if streaming:
            total, hist, best, wit, _ = _stream_scan(
                n, "", filt, consumer, collect=False
            )
        else:
            total, hist, best, wit = _stats_scan(n, "")
        return _build_stats(n, total, hist, best, list(wit))

    prefixes = _partition_prefixes(n, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        if streaming:
            parts = list(
                pool.map(
                    _stream_task,
                    [(n, prefix, filt) for prefix in prefixes],
                    chunksize=max(1, len(prefixes) // (8 * workers)),
                )
            )
        else:
            parts = list(
                pool.map(
                    _stats_task,
                    [(n, prefix) for prefix in prefixes],
                    chunksize=max(1, len(prefixes) // (8 * workers)),
                )
            )
    total, hist, best, witnesses, matches = _merge(parts)
    if streaming:
        for word in matches:
            consumer(word, classify(word))
    return _build_stats(n, total, hist, best, witnesses)


def max_probability(
    n: int, workers: int = 1, long_run: bool = False
) -> tuple[Fraction, tuple[str, ...]] | None:
    """Maximum common probability over balanced non-transitive words.

    Returns (probability, up to 10 lexicographically-first witnesses), or
    None when no balanced non-transitive word exists at this n.
    """
    if n < 2:
        raise DomainError(f"maximum-probability scan needs n >= 2, got {n}")
    stats = enumerate_words(n, workers=workers, long_run=long_run)
    if stats.max_prob is None:
        return None
    return stats.max_prob, stats.max_witnesses


# ---------------------------------------------------------------------------
# Fair-structure verification
# ---------------------------------------------------------------------------

_PERMS = ("ABC", "ACB", "BAC", "BCA", "CAB", "CBA")


def _canonical_blocks() -> list[str]:
    return [x + y + z + z + y + x for x, y, z in _PERMS]


@dataclass(frozen=True)
class FairConjectureReport:
    """Fair-word census plus reachability toward canonical block products.

    Two readings of "product of six-letter blocks xyzzyx" are reported
    separately: every block built from one fixed letter permutation
    (same_perm), or each block free to choose its own (mixed_perm).
    Unresolved counts are nonzero only when the search budget ran out
    before the frontier was exhausted.
    """

    n: int
    fair_words_found: int
    parity_ok: bool
    reachable_same_perm: int
    reachable_mixed_perm: int
    not_reachable_same_perm: int
    not_reachable_mixed_perm: int
    unresolved_same_perm: int
    unresolved_mixed_perm: int


def verify_fair_conjecture(
    n: int, bfs_budget: int = DEFAULT_BFS_BUDGET
) -> FairConjectureReport:
    """Census of fair words at n and their similarity to block products.

    Odd n carry no fair words at all (the fair count n^2/2 would not be an
    integer), so odd n short-circuit with a parity-only report.  Even n
    must satisfy n <= 4, where the reachable set of the canonical products
    stays exhaustively searchable.
    """
    if not 1 <= n <= MAX_SIDES:
        raise DomainError(f"supported range is 1 <= n <= {MAX_SIDES}, got {n}")
    if n % 2:
        return FairConjectureReport(
            n=n,
            fair_words_found=0,
            parity_ok=True,
            reachable_same_perm=0,
            reachable_mixed_perm=0,
            not_reachable_same_perm=0,
            not_reachable_mixed_perm=0,
            unresolved_same_perm=0,
            unresolved_mixed_perm=0,
        )
    if n > 4:
        raise DomainError(
            f"similarity verification is exhaustive only up to n=4, got {n}"
        )

    fair_words: list[str] = []
    enumerate_words(
        n,
        filt=EnumFilter(fair=True),
        consumer=lambda word, verdict: fair_words.append(word),
    )
    fair_set = frozenset(fair_words)

    blocks = _canonical_blocks()
    same_seeds = {block * (n // 2) for block in blocks}

    def products(k: int) -> Iterator[str]:
        if k == 0:
            yield ""
            return
        for rest in products(k - 1):
            for block in blocks:
                yield block + rest

    mixed_seeds = set(products(n // 2))

    class_same, same_done = similarity_class(same_seeds, bfs_budget)
    class_mixed, mixed_done = similarity_class(mixed_seeds, bfs_budget)

    reach_same = len(fair_set & class_same)
    reach_mixed = len(fair_set & class_mixed)
    return FairConjectureReport(
        n=n,
        fair_words_found=len(fair_set),
        parity_ok=True,
        reachable_same_perm=reach_same,
        reachable_mixed_perm=reach_mixed,
        not_reachable_same_perm=(len(fair_set) - reach_same) if same_done else 0,
        not_reachable_mixed_perm=(len(fair_set) - reach_mixed) if mixed_done else 0,
        unresolved_same_perm=0 if same_done else len(fair_set) - reach_same,
        unresolved_mixed_perm=0 if mixed_done else len(fair_set) - reach_mixed,
    )


# ---------------------------------------------------------------------------
# Stats caching
# ---------------------------------------------------------------------------


def stats_to_json(stats: EnumStats) -> dict:
    return {
        "format_version": STATS_FORMAT_VERSION,
        "n": stats.n,
        "total_words": stats.total_words,
        "count_balanced": stats.count_balanced,
        "count_balanced_nontransitive": stats.count_balanced_nontransitive,
        "count_fair": stats.count_fair,
        "max_prob": str(stats.max_prob) if stats.max_prob is not None else None,
        "max_witnesses": list(stats.max_witnesses),
        "histogram": {str(k): v for k, v in stats.histogram.items()},
    }


def cache_stats(stats: EnumStats, path: str | os.PathLike) -> None:
    """Write stats to a self-describing JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(stats_to_json(stats), fh, indent=1, sort_keys=False)
        fh.write("\n")


def load_stats(path: str | os.PathLike) -> EnumStats:
    """Read a stats file, re-verifying every stored witness."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CacheFormatError(f"not a stats file: {exc}") from exc
    version = obj.get("format_version")
    if version != STATS_FORMAT_VERSION:
        raise CacheFormatError(
            f"unsupported stats format version {version!r}, "
            f"expected {STATS_FORMAT_VERSION}"
        )
    try:
        n = int(obj["n"])
        max_prob = (
            Fraction(obj["max_prob"]) if obj["max_prob"] is not None else None
        )
        stats = EnumStats(
            n=n,
            total_words=int(obj["total_words"]),
            count_balanced=int(obj["count_balanced"]),
            count_balanced_nontransitive=int(obj["count_balanced_nontransitive"]),
            count_fair=int(obj["count_fair"]),
            max_prob=max_prob,
            max_witnesses=tuple(obj["max_witnesses"]),
            histogram={
                Fraction(k): int(v) for k, v in obj["histogram"].items()
            },
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheFormatError(f"malformed stats file: {exc}") from exc
    if stats.max_prob is not None and not stats.max_witnesses:
        raise CacheIntegrityError("max_prob present but no witnesses stored")
    for word in stats.max_witnesses:
        try:
            verdict = classify(word)
        except DiceError as exc:
            raise CacheIntegrityError(f"witness {word!r} invalid: {exc}") from exc
        if verdict.counts.n != stats.n:
            raise CacheIntegrityError(
                f"witness {word!r} has {verdict.counts.n} sides, file says {stats.n}"
            )
        if not (verdict.balanced and verdict.nontransitive):
            raise CacheIntegrityError(
                f"witness {word!r} is not balanced non-transitive"
            )
        if verdict.p_ab != stats.max_prob:
            raise CacheIntegrityError(
                f"witness {word!r} has probability {verdict.p_ab}, "
                f"file says {stats.max_prob}"
            )
    return stats
