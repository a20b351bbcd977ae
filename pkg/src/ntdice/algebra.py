"""Concatenation laws and irreducibility analysis for dice words.

Concatenating an m-sided word with an n-sided word (labels of the second
shifted above the first) adds the operand counts plus the m*n cross pairs:

    N(A>B) of the product = N(A>B) left + N(A>B) right + m*n

and likewise for the other two pairs.  The same identity in probability
form reads P = 1/2 + ((left - m^2/2) + (right - n^2/2)) / (m+n)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    PairCounts,
    classify,
    pair_counts,
    require_complete,
)


@dataclass(frozen=True)
class ConcatPrediction:
    """Counts predicted for a concatenation from operand counts alone."""

    m: int
    n: int
    predicted: PairCounts


@dataclass(frozen=True)
class IrreducibilityReport:
    """Result of the binary-split irreducibility check.

    witness_split is the length of the shortest proper prefix such that
    the prefix and the remaining suffix are both balanced non-transitive
    words; absent when the word is irreducible.
    """

    irreducible: bool
    witness_split: int | None = None


def concat(w1: str, w2: str) -> str:
    """Concatenate two complete words (labels of w2 sit above w1's)."""
    require_complete(w1)
    require_complete(w2)
    return w1 + w2


def predict_counts(c1: PairCounts, c2: PairCounts) -> ConcatPrediction:
    """Predict concatenation counts without inspecting any letters."""
    m, n = c1.n, c2.n
    cross = m * n
    return ConcatPrediction(
        m=m,
        n=n,
        predicted=PairCounts(
            n=m + n,
            ab=c1.ab + c2.ab + cross,
            bc=c1.bc + c2.bc + cross,
            ca=c1.ca + c2.ca + cross,
        ),
    )


def combined_probability(m: int, m_ab: int, n: int, n_ab: int) -> Fraction:
    """Exact P(A>B) of a concatenation from the two operand counts.

    Computes 1/2 + ((m_ab - m^2/2) + (n_ab - n^2/2)) / (m+n)^2 over the
    rationals; equals (m_ab + n_ab + m*n) / (m+n)^2.
    """
    if not 0 <= m_ab <= m * m:
        raise DomainError(f"count {m_ab} outside 0..{m * m}")
    if not 0 <= n_ab <= n * n:
        raise DomainError(f"count {n_ab} outside 0..{n * n}")
    half = Fraction(1, 2)
    excess = (m_ab - half * m * m) + (n_ab - half * n * n)
    return half + Fraction(excess, (m + n) ** 2)


def is_irreducible(word: str) -> IrreducibilityReport:
    """Check whether a balanced non-transitive word splits into two.

    A word is reducible when some proper prefix and the matching suffix
    are both balanced and non-transitive.  Only prefixes with equal letter
    counts can qualify, so those are screened first; the first witness in
    increasing prefix length is returned.
    """
    verdict = classify(word)
    if not (verdict.balanced and verdict.nontransitive):
        raise DomainError(
            "irreducibility is defined only for balanced non-transitive words"
        )
    length = len(word)
    na = nb = nc = 0
    for pos, ch in enumerate(word[:-1], start=1):
        if ch == "A":
            na += 1
        elif ch == "B":
            nb += 1
        else:
            nc += 1
        if pos % 3 or not (na == nb == nc):
            continue
        left = classify(word[:pos])
        if not (left.balanced and left.nontransitive):
            continue
        right = classify(word[pos:])
        if right.balanced and right.nontransitive:
            return IrreducibilityReport(irreducible=False, witness_split=pos)
    return IrreducibilityReport(irreducible=True, witness_split=None)


def verify_concat_law(w1: str, w2: str) -> bool:
    """Compare scanned counts of a concatenation against the prediction."""
    actual = pair_counts(concat(w1, w2))
    predicted = predict_counts(pair_counts(w1), pair_counts(w2)).predicted
    return actual == predicted
