"""Exact-arithmetic toolkit for balanced non-transitive dice words."""

from .core import (
    DiceError,
    DiceSet,
    DiceSetError,
    DiceWord,
    DomainError,
    IncompleteWordError,
    PairCounts,
    Verdict,
    WordFormatError,
    classify,
    dice_from_word,
    pair_counts,
    parse_word,
    word_from_dice,
)
from .algebra import (
    ConcatPrediction,
    IrreducibilityReport,
    combined_probability,
    concat,
    is_irreducible,
    predict_counts,
)
from .rewriting import (
    MoveError,
    MovePath,
    NormalizationError,
    PairExchange,
    SimilarityResult,
    TripleRotate,
    TripleShift,
    apply_move,
    find_shift_sites,
    normalize_two_letter_fair,
    similar,
    similarity_class,
)
from .constructions import (
    BoundReport,
    OptimizerReport,
    SurdValue,
    base_words,
    bound_report,
    construct_irreducible,
    construct_near_half,
    max_shift_rounds,
    optimize_max_prob,
    stage_word,
)
from .enumeration import (
    EnumFilter,
    EnumStats,
    FairConjectureReport,
    cache_stats,
    enumerate_words,
    load_stats,
    max_probability,
    verify_fair_conjecture,
)

__version__ = "0.1.0"
