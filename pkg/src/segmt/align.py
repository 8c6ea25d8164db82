"""Token-level Levenshtein alignment, WER, and boundary projection.

Alignment is computed over a full dynamic-programming cost table with unit
costs (match 0; substitute/delete/insert 1).  The backtrace resolves cost
ties with a fixed total order so identical inputs always produce identical
edit scripts.  Boundary projection transfers segment boundaries from one
transcript onto another transcript's tokens by following the alignment of
the token immediately before each boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .text import (
    NormalizationPolicy,
    STRIPPED,
    SegmentedDocument,
    flatten,
    normalize,
    normalize_token,
    rebuild,
)

MATCH = "match"
SUBSTITUTE = "substitute"
DELETE = "delete"
INSERT = "insert"

#: Backtrace preference when DP costs tie.  Any order over the four op kinds
#: yields an optimal script; fixing one makes projection reproducible.
DEFAULT_TIE_BREAK = (MATCH, SUBSTITUTE, DELETE, INSERT)

#: Default comparison policy: case- and punctuation-insensitive matching, so
#: transcripts that differ only in casing or punctuation conventions align.
ALIGNMENT_NORMALIZATION = NormalizationPolicy(strip_punctuation=True, lowercase=True)

# Sentinel cost for cells outside the diagonal band; large enough never to be
# chosen, small enough that +1 arithmetic cannot overflow int32.
_BANNED = np.int32(1) << 28


@dataclass(frozen=True)
class EditOp:
    """One step of an edit script.

    Match/substitute carry both indices; delete only ``a_index``; insert
    only ``b_index``.
    """

    kind: str
    a_index: Optional[int] = None
    b_index: Optional[int] = None


@dataclass
class Alignment:
    """A minimum-cost edit script between token sequences A and B."""

    ops: List[EditOp]
    a_len: int
    b_len: int

    def distance(self) -> int:
        """Edit distance: the number of non-match ops."""
        return sum(1 for op in self.ops if op.kind != MATCH)

    def target_index_of(self) -> List[Optional[int]]:
        """For each A index, the aligned B index (None for deleted tokens)."""
        mapping: List[Optional[int]] = [None] * self.a_len
        for op in self.ops:
            if op.kind in (MATCH, SUBSTITUTE):
                mapping[op.a_index] = op.b_index
        return mapping


@dataclass(frozen=True)
class AlignmentConfig:
    """Alignment behavior knobs.

    ``normalize_for_alignment`` affects only how tokens are compared; any
    projection built on the alignment still emits original target tokens.
    ``band_width`` optionally restricts the DP to a diagonal corridor: cells
    farther than ``band_width`` from the length-scaled diagonal are treated
    as unreachable.  This bounds how far an edit path may wander on very
    long documents; the default (None) searches the full table.
    """

    normalize_for_alignment: NormalizationPolicy = ALIGNMENT_NORMALIZATION
    tie_break: tuple = DEFAULT_TIE_BREAK
    band_width: Optional[int] = None

    def __post_init__(self):
        if sorted(self.tie_break) != sorted(DEFAULT_TIE_BREAK):
            raise ValueError(f"tie_break must order all four op kinds, got {self.tie_break}")
        if self.band_width is not None and self.band_width < 1:
            raise ValueError("band_width must be >= 1")


DEFAULT_CONFIG = AlignmentConfig()


def _token_ids(a: Sequence[str], b: Sequence[str], policy: NormalizationPolicy):
    """Map both sequences to integer ids of their comparison keys.

    Every token keeps its position: a token whose key normalizes to the
    empty string still occupies a slot (and matches other empty-key tokens),
    which is what keeps projection anchored to original positions.
    """
    interned: dict = {}

    def ids_of(tokens: Sequence[str]) -> np.ndarray:
        out = np.empty(len(tokens), dtype=np.int32)
        for i, tok in enumerate(tokens):
            key = normalize_token(tok, policy)
            out[i] = interned.setdefault(key, len(interned))
        return out

    return ids_of(a), ids_of(b)


def _band_bounds(n: int, m: int, width: Optional[int]):
    """Per-row inclusive [lo, hi] column bounds of the diagonal corridor."""
    if width is None or n == 0 or m == 0:
        return None
    # The corridor must at least cover the |n - m| offset between the two
    # sequence lengths, or the corner cell becomes unreachable.
    width = max(width, abs(n - m) + 1)
    slope = m / n
    los = np.maximum(0, (np.arange(n + 1) * slope - width).astype(np.int64))
    his = np.minimum(m, (np.arange(n + 1) * slope + width).astype(np.int64))
    return los, his


def _cost_table(a_ids: np.ndarray, b_ids: np.ndarray, band_width: Optional[int]) -> np.ndarray:
    """Full (n+1) x (m+1) Levenshtein cost table.

    Rows are computed vectorized: the substitute/delete candidates come
    straight from the previous row, and the left-to-right insert recurrence
    row[j] = min(cand[j], row[j-1] + 1) is evaluated in closed form as a
    running minimum of (cand[k] - k) plus j.
    """
    n, m = len(a_ids), len(b_ids)
    table = np.empty((n + 1, m + 1), dtype=np.int32)
    cols = np.arange(m + 1, dtype=np.int32)
    table[0] = cols
    bounds = _band_bounds(n, m, band_width)
    scratch = np.empty(m + 1, dtype=np.int32)
    for i in range(1, n + 1):
        prev = table[i - 1]
        np.add(prev[:-1], b_ids != a_ids[i - 1], out=scratch[1:])
        np.minimum(scratch[1:], prev[1:] + 1, out=scratch[1:])
        scratch[0] = i
        row = np.minimum.accumulate(scratch - cols) + cols
        if bounds is not None:
            lo, hi = bounds[0][i], bounds[1][i]
            row[:lo] = _BANNED
            row[hi + 1 :] = _BANNED
        table[i] = row
    return table


def levenshtein_align(
    a: Sequence[str], b: Sequence[str], cfg: AlignmentConfig = DEFAULT_CONFIG
) -> Alignment:
    """Minimum-unit-cost edit script from token sequence ``a`` to ``b``.

    Deterministic: DP cost ties are broken by ``cfg.tie_break``, so repeated
    calls yield identical scripts.
    """
    a_ids, b_ids = _token_ids(a, b, cfg.normalize_for_alignment)
    table = _cost_table(a_ids, b_ids, cfg.band_width)
    ops: List[EditOp] = []
    i, j = len(a_ids), len(b_ids)
    while i > 0 or j > 0:
        cost = table[i, j]
        for kind in cfg.tie_break:
            if kind == MATCH:
                if (
                    i > 0
                    and j > 0
                    and a_ids[i - 1] == b_ids[j - 1]
                    and cost == table[i - 1, j - 1]
                ):
                    ops.append(EditOp(MATCH, i - 1, j - 1))
                    i, j = i - 1, j - 1
                    break
            elif kind == SUBSTITUTE:
                if (
                    i > 0
                    and j > 0
                    and a_ids[i - 1] != b_ids[j - 1]
                    and cost == table[i - 1, j - 1] + 1
                ):
                    ops.append(EditOp(SUBSTITUTE, i - 1, j - 1))
                    i, j = i - 1, j - 1
                    break
            elif kind == DELETE:
                if i > 0 and cost == table[i - 1, j] + 1:
                    ops.append(EditOp(DELETE, a_index=i - 1))
                    i -= 1
                    break
            elif kind == INSERT:
                if j > 0 and cost == table[i, j - 1] + 1:
                    ops.append(EditOp(INSERT, b_index=j - 1))
                    j -= 1
                    break
        else:
            raise RuntimeError(f"backtrace stuck at cell ({i}, {j})")
    ops.reverse()
    return Alignment(ops, len(a_ids), len(b_ids))


def edit_distance(
    a: Sequence[str], b: Sequence[str], cfg: AlignmentConfig = DEFAULT_CONFIG
) -> int:
    """Levenshtein distance under the config's comparison normalization."""
    a_ids, b_ids = _token_ids(a, b, cfg.normalize_for_alignment)
    return int(_cost_table(a_ids, b_ids, cfg.band_width)[-1, -1])


def wer(reference: Sequence[str], hypothesis: Sequence[str]) -> float:
    """Word error rate, ignoring case, punctuation, and symbols.

    Both sides are fully stripped before comparison; the distance is divided
    by the normalized reference length.
    """
    ref = normalize(reference, STRIPPED)
    hyp = normalize(hypothesis, STRIPPED)
    if not ref:
        raise ValueError("WER is undefined: reference is empty after normalization")
    plain = AlignmentConfig(normalize_for_alignment=NormalizationPolicy())
    return edit_distance(ref, hyp, plain) / len(ref)


def project_positions(
    source_doc: SegmentedDocument,
    target_tokens: Sequence[str],
    cfg: AlignmentConfig = DEFAULT_CONFIG,
) -> List[int]:
    """Map each source boundary to a target position, without collapsing.

    Returns one entry per source boundary: the target position the boundary
    lands after, or -1 when it falls before the first target token.  A
    boundary after source token ``k`` follows ``k``'s alignment; if ``k``
    was deleted, it attaches to the nearest preceding source token that has
    a target counterpart.  Entries are non-decreasing.
    """
    src_tokens, boundaries = flatten(source_doc)
    alignment = levenshtein_align(src_tokens, target_tokens, cfg)
    aligned = alignment.target_index_of()
    # nearest_target[k]: aligned target index of the closest source j <= k, or -1
    nearest_target = [-1] * len(src_tokens)
    last = -1
    for k, tgt in enumerate(aligned):
        if tgt is not None:
            last = tgt
        nearest_target[k] = last
    return [nearest_target[k] for k in boundaries.positions]


def project_boundaries(
    source_doc: SegmentedDocument,
    target_tokens: Sequence[str],
    cfg: AlignmentConfig = DEFAULT_CONFIG,
) -> SegmentedDocument:
    """Re-segment ``target_tokens`` with boundaries carried over from ``source_doc``.

    The output document contains exactly the target tokens, in order; only
    the segmentation changes.  Boundaries that collapse onto the same target
    position merge, and a final boundary after the last token is always
    present, so no empty segments are produced.
    """
    positions = project_positions(source_doc, target_tokens, cfg)
    return rebuild(
        target_tokens,
        (k for k in positions if k >= 0),
        doc_id=source_doc.doc_id,
    )
