"""Corpus BLEU with modified n-gram precision and brevity penalty.

Scores are on the 0-100 scale: geometric mean of clipped n-gram precisions
over orders 1..max, times a brevity penalty for short hypotheses.  Counts
are clipped per segment against the single reference and summed over the
corpus before any ratio is taken, so aggregation is order-independent.

Orders for which the hypothesis corpus contains no n-grams at all carry no
evidence and are excluded from the geometric mean; this keeps an identical
corpus at exactly 100 even when every segment is shorter than the maximum
order.  Optional add-one smoothing (orders above 1) supports sentence-level
scores, which are degenerate unsmoothed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence

SMOOTHING_NONE = "none"
SMOOTHING_ADD_ONE = "add-one"


@dataclass(frozen=True)
class BleuConfig:
    max_ngram_order: int = 4
    case_sensitive: bool = True
    smoothing: str = SMOOTHING_NONE

    def __post_init__(self):
        if self.max_ngram_order < 1:
            raise ValueError("max_ngram_order must be >= 1")
        if self.smoothing not in (SMOOTHING_NONE, SMOOTHING_ADD_ONE):
            raise ValueError(f"unknown smoothing {self.smoothing!r}")


DEFAULT_CONFIG = BleuConfig()
#: Sentence-level scoring config: add-one smoothing for orders above 1.
SENTENCE_CONFIG = BleuConfig(smoothing=SMOOTHING_ADD_ONE)


@dataclass
class BleuReport:
    """Corpus score with its components.

    ``ngram_precisions`` holds the effective per-order precisions that enter
    the geometric mean (smoothed when smoothing is on; 0.0 for orders with
    no hypothesis n-grams, which are excluded from the mean).
    """

    score: float
    ngram_precisions: List[float] = field(default_factory=list)
    brevity_penalty: float = 1.0
    hyp_len: int = 0
    ref_len: int = 0


def _ngrams(tokens: Sequence[str], order: int) -> Counter:
    return Counter(tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1))


def corpus_bleu(
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    cfg: BleuConfig = DEFAULT_CONFIG,
) -> BleuReport:
    """Corpus-level BLEU of paired hypothesis/reference segments.

    Hypothesis segments may be empty (they only contribute length); at least
    one reference must be non-empty.
    """
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference count mismatch: {len(hypotheses)} vs {len(references)}"
        )
    if not any(references):
        raise ValueError("all reference segments are empty")
    if not cfg.case_sensitive:
        hypotheses = [[tok.lower() for tok in seg] for seg in hypotheses]
        references = [[tok.lower() for tok in seg] for seg in references]

    orders = cfg.max_ngram_order
    matched = [0] * orders
    total = [0] * orders
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, orders + 1):
            hyp_counts = _ngrams(hyp, n)
            if not hyp_counts:
                continue
            ref_counts = _ngrams(ref, n)
            total[n - 1] += sum(hyp_counts.values())
            matched[n - 1] += sum(
                min(count, ref_counts[gram]) for gram, count in hyp_counts.items()
            )

    precisions = []
    log_sum = 0.0
    used_orders = 0
    degenerate = False
    for n in range(1, orders + 1):
        num, den = matched[n - 1], total[n - 1]
        if den == 0:
            precisions.append(0.0)
            continue
        if cfg.smoothing == SMOOTHING_ADD_ONE and n > 1:
            p = (num + 1) / (den + 1)
        else:
            p = num / den
        precisions.append(p)
        used_orders += 1
        if p == 0.0:
            degenerate = True
        else:
            log_sum += math.log(p)

    if hyp_len == 0 or used_orders == 0:
        return BleuReport(0.0, precisions, 0.0, hyp_len, ref_len)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    if degenerate:
        return BleuReport(0.0, precisions, brevity, hyp_len, ref_len)
    score = 100.0 * brevity * math.exp(log_sum / used_orders)
    return BleuReport(score, precisions, brevity, hyp_len, ref_len)


def sentence_bleu(
    hypothesis: Sequence[str],
    reference: Sequence[str],
    cfg: BleuConfig = SENTENCE_CONFIG,
) -> BleuReport:
    """BLEU of a single segment pair (add-one smoothed by default)."""
    return corpus_bleu([hypothesis], [reference], cfg)
